#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "sg/diagram.hpp"
#include "sg/laurent.hpp"
#include "sg/wirtinger.hpp"

namespace sg {

struct DetPolyOptions {
    bool early_exit = true;
    // Drop one row before enumerating minors. Valid for Alexander matrices of
    // balanced diagrams, where every row is a combination of the others.
    bool drop_redundant_row = false;
    unsigned threads = 1;  // 0 picks hardware concurrency
    unsigned long long minor_cap = 1000000;
};

// gcd of all k x k minors, in normalize_unit form.
// k <= 0 gives 1; k beyond the smaller dimension gives 0.
// Throws cap_exceeded when the minor count passes opts.minor_cap.
LaurentPoly det_poly(const AlexMatrix& m, long long k, const DetPolyOptions& opts = {});

// Delta_k of a valid balanced diagram: det_poly of its Alexander matrix
// at minor size c+v-k. k = 0 is allowed and always yields 0.
LaurentPoly alexander_poly(const Diagram& d, long long k, const DetPolyOptions& opts = {});

using IntMatrix = std::vector<std::vector<mpz_class>>;

struct SNFResult {
    std::vector<mpz_class> factors;  // positive, each dividing the next
    std::size_t rank = 0;
};

// Invariant factors of an integer matrix: the product of the first j factors
// equals the gcd of all j x j minors.
SNFResult smith_normal_form(IntMatrix m);

// Clears negative exponents row by row, then evaluates every entry at t = n.
IntMatrix substitute_int(const AlexMatrix& m, long long n);

struct DetValue {
    mpz_class value;        // |raw| with all powers of |n| stripped when |n| is 1 or prime
    mpz_class raw;          // gcd of the minors at t = n, before stripping
    bool invariant = true;  // false when |n| is composite: value then depends on the diagram
};

// det_k(G, omega)(n): gcd of the (c+v-k) x (c+v-k) minors of the Alexander
// matrix at t = n. Requires n nonzero and k >= 1.
DetValue determinant_at(const Diagram& d, long long n, long long k);
DetValue determinant_at(const AlexMatrix& m, long long n, long long k);

}  // namespace sg
