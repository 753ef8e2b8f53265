#pragma once

#include <cstddef>
#include <vector>

namespace sg {

bool is_prime(long long p);

// Representative of a mod p in [0, p). Requires p > 0.
long long mod_norm(long long a, long long p);

// Inverse of a mod p; throws precondition_error when gcd(a, p) != 1.
long long mod_inv(long long a, long long p);

// a^e mod p; negative e goes through mod_inv.
long long mod_pow(long long a, long long e, long long p);

// Dense matrix over the field with p elements, entries in [0, p).
struct ModMatrix {
    long long p = 0;
    std::vector<std::vector<long long>> rows;

    std::size_t row_count() const { return rows.size(); }
    std::size_t col_count() const { return rows.empty() ? 0 : rows.front().size(); }
};

std::size_t rank(const ModMatrix& m);

// Basis of the right nullspace {x : m x = 0}, each vector of length
// col_count() with entries in [0, p). Deterministic: one vector per free
// column, in column order, with a 1 in the free position.
std::vector<std::vector<long long>> nullspace(const ModMatrix& m);

}  // namespace sg
