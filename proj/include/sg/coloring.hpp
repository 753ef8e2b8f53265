#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sg/diagram.hpp"
#include "sg/modp.hpp"
#include "sg/wirtinger.hpp"

namespace sg {

// A p-coloring at n: one residue per arc satisfying every crossing and
// vertex relation of the diagram with t = n.
struct Coloring {
    long long p = 0;
    long long n = 0;
    std::map<std::string, long long> values;
};

struct ColoringMatrix {
    long long p = 0;
    long long n = 0;
    ModMatrix mat;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_arcs;
};

struct ColoringOptions {
    bool allow_p2 = false;
    unsigned long long enumeration_cap = 1000000;
};

// The Alexander matrix at t = n over the field with p elements; negative
// exponents go through the inverse of n mod p, so p must not divide n.
ColoringMatrix coloring_matrix(const Diagram& d, long long n, long long p,
                               const ColoringOptions& opts = {});
ColoringMatrix coloring_matrix(const AlexMatrix& a, long long n, long long p,
                               const ColoringOptions& opts = {});

// N_p(G, omega, n): dimension of the coloring space.
std::size_t nullity(const Diagram& d, long long n, long long p,
                    const ColoringOptions& opts = {});
std::size_t nullity(const AlexMatrix& a, long long n, long long p,
                    const ColoringOptions& opts = {});

// Basis of the coloring space, one arc->residue map per basis vector.
std::vector<Coloring> coloring_basis(const Diagram& d, long long n, long long p,
                                     const ColoringOptions& opts = {});

// All p^N_p colorings when that count fits the cap, each re-verified against
// every relation. Deterministic order.
std::vector<Coloring> enumerate_colorings(const Diagram& d, long long n, long long p,
                                          const ColoringOptions& opts = {});

struct DeterminantCheckReport {
    std::size_t nullity = 0;
    long long threshold = 0;  // e - v + k
    mpz_class raw_det;
    bool extra_colorings = false;  // N_p > e - v + k
    bool divides = false;          // p | det_k(G, omega)(n) before unit normalization
    bool holds = false;            // the two sides agree
};

// The divisibility theorem as a checkable report: more than e-v+k independent
// colorings exist exactly when p divides the raw det_k value.
DeterminantCheckReport coloring_determinant_check(const Diagram& d, long long n, long long p,
                                                  long long k, const ColoringOptions& opts = {});

// A nonzero vector in the span of S vanishing at every index in zero_at, or
// absence. One always exists when |zero_at| < dim span S.
std::optional<std::vector<long long>> zero_coordinate_witness(
    const std::vector<std::vector<long long>>& span, long long p,
    const std::vector<std::size_t>& zero_at);

}  // namespace sg
