#include "sg/modp.hpp"

#include <gmpxx.h>

#include <stdexcept>
#include <string>

#include "sg/errors.hpp"

namespace sg {

bool is_prime(long long p) {
    if (p < 2) return false;
    mpz_class z(static_cast<long>(p));
    return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

long long mod_norm(long long a, long long p) {
    long long r = a % p;
    return r < 0 ? r + p : r;
}

long long mod_inv(long long a, long long p) {
    long long r0 = p, r1 = mod_norm(a, p);
    long long s0 = 0, s1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        s0 -= q * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw precondition_error("mod_inv: " + std::to_string(a) + " is not invertible mod " + std::to_string(p));
    return mod_norm(s0, p);
}

long long mod_pow(long long a, long long e, long long p) {
    long long base = mod_norm(a, p);
    if (e < 0) {
        base = mod_inv(base, p);
        e = -e;
    }
    unsigned long long k = static_cast<unsigned long long>(e);
    long long acc = 1 % p;
    while (k) {
        if (k & 1) acc = static_cast<long long>((static_cast<__int128>(acc) * base) % p);
        base = static_cast<long long>((static_cast<__int128>(base) * base) % p);
        k >>= 1;
    }
    return acc;
}

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(ModMatrix& m) {
    const long long p = m.p;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.col_count() && r < m.row_count(); ++c) {
        std::size_t sel = r;
        while (sel < m.row_count() && m.rows[sel][c] == 0) ++sel;
        if (sel == m.row_count()) continue;
        std::swap(m.rows[r], m.rows[sel]);
        long long inv = mod_inv(m.rows[r][c], p);
        for (auto& x : m.rows[r]) x = static_cast<long long>((static_cast<__int128>(x) * inv) % p);
        for (std::size_t i = 0; i < m.row_count(); ++i) {
            if (i == r || m.rows[i][c] == 0) continue;
            long long f = m.rows[i][c];
            for (std::size_t j = 0; j < m.col_count(); ++j) {
                long long sub = static_cast<long long>((static_cast<__int128>(f) * m.rows[r][j]) % p);
                m.rows[i][j] = mod_norm(m.rows[i][j] - sub, p);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

void check_field(const ModMatrix& m) {
    if (!is_prime(m.p)) throw precondition_error("ModMatrix: p must be prime");
    for (const auto& row : m.rows) {
        if (row.size() != m.col_count()) throw precondition_error("ModMatrix: ragged rows");
        for (long long x : row)
            if (x < 0 || x >= m.p) throw precondition_error("ModMatrix: entry out of range");
    }
}

}  // namespace

std::size_t rank(const ModMatrix& m) {
    check_field(m);
    ModMatrix w = m;
    return rref(w).size();
}

std::vector<std::vector<long long>> nullspace(const ModMatrix& m) {
    check_field(m);
    ModMatrix w = m;
    std::vector<std::size_t> pivots = rref(w);
    std::size_t cols = m.col_count();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<long long>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<long long> v(cols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = mod_norm(-w.rows[i][free], m.p);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace sg
