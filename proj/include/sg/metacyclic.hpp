#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sg/coloring.hpp"
#include "sg/diagram.hpp"

namespace sg {

// Gamma(p, m, k) = <alpha, beta | alpha^p = beta^m = 1,
// beta alpha beta^-1 = alpha^k>, of order p*m.
struct MetaGroup {
    long long p = 0;
    long long m = 0;
    long long k = 0;  // residue in [0, p)
};

// Validates p odd prime, m >= 1, k^m = 1 mod p; canonicalizes k.
MetaGroup meta_group(long long p, long long m, long long k);

// alpha^a beta^b with 0 <= a < p, 0 <= b < m.
struct MetaElem {
    long long a = 0;
    long long b = 0;
    bool operator==(const MetaElem&) const = default;
    bool operator<(const MetaElem& o) const { return a != o.a ? a < o.a : b < o.b; }
};

MetaElem meta_mul(const MetaGroup& g, const MetaElem& x, const MetaElem& y);
MetaElem meta_inv(const MetaGroup& g, const MetaElem& x);
MetaElem meta_pow(const MetaGroup& g, const MetaElem& x, long long e);

// Least positive m with k^m = 1 mod p. Requires p prime, p not dividing k.
long long ord_p(long long k, long long p);

struct Representation {
    MetaGroup group;
    std::map<std::string, MetaElem> assignment;  // arc -> alpha^gamma beta^weight
};

// arc |-> alpha^gamma(arc) beta^(weight mod m). Every Wirtinger relation is
// evaluated in the group; a non-identity image throws logic_error since the
// construction is guaranteed to be a homomorphism.
Representation build_representation(const Diagram& d, const MetaGroup& g, const Coloring& gamma);

// The coloring giving each arc on a weight-w edge the color
// r (1 - k^w) / (1 - k) mod p. Requires k not congruent to 1 mod p.
Coloring cyclic_coloring(const Diagram& d, long long p, long long k, long long r);

// Subgroup generated by the assigned elements, as a sorted element list.
std::vector<MetaElem> image_subgroup(const Representation& rep);
bool is_surjective(const Representation& rep);
bool has_cyclic_image(const Representation& rep);

struct MetaOptions {
    std::optional<long long> m_override;  // must be a multiple of ord_p(k)
    unsigned long long enumeration_cap = 1000000;
};

struct RepClassification {
    long long p = 0;
    long long m = 0;
    long long k = 0;
    std::size_t nullity = 0;
    mpz_class total;                     // p^N_p
    mpz_class cyclic;                    // p
    mpz_class surjective;                // p^N_p - p
    mpz_class inequivalent_surjective;   // (p^(N_p - 1) - 1) / (p - 1)
    bool enumerated = false;             // counts confirmed by full enumeration
};

// Counting theorem at m = ord_p(k); with an m override the counts are
// computed by enumeration instead of the formulas. Requires a reduced
// weighting, p odd prime, p not dividing k, and k not congruent to 1.
RepClassification classify_and_count(const Diagram& d, long long p, long long k,
                                     const MetaOptions& opts = {});

}  // namespace sg
