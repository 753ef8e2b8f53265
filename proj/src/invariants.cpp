#include "sg/invariants.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>

#include "sg/errors.hpp"
#include "sg/modp.hpp"

namespace sg {

namespace {

using Grid = std::vector<std::vector<LaurentPoly>>;

// Scale each row by a power of t so all entries land in Z[t]; minors change
// only by units.
Grid row_cleared(const Grid& in) {
    Grid a = in;
    for (auto& row : a) {
        bool any = false;
        long long mn = 0;
        for (const auto& p : row)
            if (!p.is_zero()) {
                mn = any ? std::min(mn, p.min_exp()) : p.min_exp();
                any = true;
            }
        if (any && mn != 0)
            for (auto& p : row) p = p.shifted(-mn);
    }
    return a;
}

// Fraction-free elimination; exact division is guaranteed by the Sylvester
// identity, so this stays in Z[t].
LaurentPoly bareiss_det(Grid a) {
    std::size_t n = a.size();
    if (n == 0) return LaurentPoly(1);
    int sign = 1;
    LaurentPoly prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k].is_zero()) ++piv;
        if (piv == n) return LaurentPoly();
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = div_exact(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
            a[i][k] = LaurentPoly();
        }
        prev = a[k][k];
    }
    LaurentPoly det = a[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] + (k - i) < n) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

mpz_class binom(std::size_t n, std::size_t k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Grid submatrix(const Grid& a, const std::vector<std::size_t>& rows,
               const std::vector<std::size_t>& cols) {
    Grid s(rows.size(), std::vector<LaurentPoly>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s[i][j] = a[rows[i]][cols[j]];
    return s;
}

// gcd over all row subsets for one fixed column subset; bails out when the
// shared gcd has already collapsed to a unit.
LaurentPoly column_subset_gcd(const Grid& a, const std::vector<std::size_t>& cols, std::size_t k,
                              bool early, const std::atomic<bool>& stop) {
    LaurentPoly g;
    std::vector<std::size_t> rows(k);
    std::iota(rows.begin(), rows.end(), 0);
    do {
        g = gcd(g, bareiss_det(submatrix(a, rows, cols)));
        if ((early && g.is_one()) || stop.load(std::memory_order_relaxed)) break;
    } while (next_combination(rows, a.size()));
    return g;
}

DetValue determinant_at_grid(const Grid& grid, long long n, long long k) {
    if (n == 0) throw precondition_error("determinant_at: n must be nonzero");
    if (k < 1) throw precondition_error("determinant_at: k must be at least 1");
    std::size_t rows = grid.size();
    std::size_t cols = rows == 0 ? 0 : grid[0].size();
    long long size = static_cast<long long>(rows) - k;

    DetValue out;
    if (size <= 0) {
        out.raw = 1;
        out.value = 1;
        return out;
    }
    if (static_cast<std::size_t>(size) > std::min(rows, cols)) {
        out.raw = 0;
        out.value = 0;
        return out;
    }

    IntMatrix a;
    for (const auto& row : row_cleared(grid)) {
        std::vector<mpz_class> r;
        for (const auto& p : row) r.push_back(eval_int(p, n));
        a.push_back(std::move(r));
    }
    SNFResult snf = smith_normal_form(std::move(a));

    mpz_class raw = 0;
    if (static_cast<std::size_t>(size) <= snf.rank) {
        raw = 1;
        for (long long j = 0; j < size; ++j) raw *= snf.factors[static_cast<std::size_t>(j)];
    }
    out.raw = raw;

    long long an = n < 0 ? -n : n;
    if (an == 1) {
        out.value = raw;
    } else if (is_prime(an)) {
        mpz_class v = raw;
        mpz_class q(static_cast<long>(an));
        if (v != 0)
            while (v % q == 0) v /= q;
        out.value = v;
    } else {
        out.value = raw;
        out.invariant = false;
    }
    return out;
}

}  // namespace

LaurentPoly det_poly(const AlexMatrix& m, long long k, const DetPolyOptions& opts) {
    if (k <= 0) return LaurentPoly(1);
    std::size_t rows = m.rows();
    std::size_t cols = m.cols();
    std::size_t kk = static_cast<std::size_t>(k);
    if (kk > rows || kk > cols) return LaurentPoly();

    Grid a = row_cleared(m.entries);
    if (opts.drop_redundant_row && kk <= rows - 1) {
        a.pop_back();
        rows -= 1;
    }

    mpz_class total = binom(rows, kk) * binom(cols, kk);
    mpz_class cap(static_cast<unsigned long>(opts.minor_cap));
    if (total > cap)
        throw cap_exceeded("det_poly: " + total.get_str() + " minors exceed cap " +
                           std::to_string(opts.minor_cap));

    unsigned nthreads = opts.threads == 0 ? std::thread::hardware_concurrency() : opts.threads;
    if (nthreads <= 1 || binom(cols, kk) == 1) {
        LaurentPoly g;
        std::atomic<bool> stop{false};
        std::vector<std::size_t> csel(kk);
        std::iota(csel.begin(), csel.end(), 0);
        do {
            g = gcd(g, column_subset_gcd(a, csel, kk, opts.early_exit, stop));
            if (opts.early_exit && g.is_one()) return g;
        } while (next_combination(csel, cols));
        return g;
    }

    std::atomic<bool> stop{false};
    std::mutex mu;
    LaurentPoly shared;
    std::exception_ptr err;
    auto worker = [&](unsigned tid) {
        try {
            std::vector<std::size_t> csel(kk);
            std::iota(csel.begin(), csel.end(), 0);
            std::size_t ci = 0;
            do {
                if (ci % nthreads == tid) {
                    LaurentPoly local = column_subset_gcd(a, csel, kk, opts.early_exit, stop);
                    std::lock_guard<std::mutex> lk(mu);
                    shared = gcd(shared, local);
                    if (opts.early_exit && shared.is_one()) stop.store(true);
                }
                ++ci;
            } while (next_combination(csel, cols) && !stop.load(std::memory_order_relaxed));
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu);
            if (!err) err = std::current_exception();
            stop.store(true);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned tid = 0; tid < nthreads; ++tid) pool.emplace_back(worker, tid);
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return shared;
}

LaurentPoly alexander_poly(const Diagram& d, long long k, const DetPolyOptions& opts) {
    if (k < 0) throw precondition_error("alexander_poly: k must be nonnegative");
    AlexMatrix m = closed_form_matrix(d);
    return det_poly(m, static_cast<long long>(m.rows()) - k, opts);
}

SNFResult smith_normal_form(IntMatrix m) {
    std::size_t r = m.size();
    std::size_t c = r == 0 ? 0 : m[0].size();
    SNFResult out;
    std::size_t t = 0;
    auto abs_less = [](const mpz_class& x, const mpz_class& y) {
        return mpz_cmpabs(x.get_mpz_t(), y.get_mpz_t()) < 0;
    };
    while (t < r && t < c) {
        std::size_t pi = t, pj = t;
        bool found = false;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (m[i][j] != 0 && (!found || abs_less(m[i][j], m[pi][pj]))) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        std::swap(m[pi], m[t]);
        if (pj != t)
            for (std::size_t i = 0; i < r; ++i) std::swap(m[i][pj], m[i][t]);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (m[i][t] == 0) continue;
                mpz_class q = m[i][t] / m[t][t];
                if (q != 0)
                    for (std::size_t j = t; j < c; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {
                    std::swap(m[i], m[t]);
                    dirty = true;
                }
            }
            if (dirty) continue;
            for (std::size_t j = t + 1; j < c; ++j) {
                if (m[t][j] == 0) continue;
                mpz_class q = m[t][j] / m[t][t];
                if (q != 0)
                    for (std::size_t i = t; i < r; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (std::size_t i = 0; i < r; ++i) std::swap(m[i][j], m[i][t]);
                    dirty = true;
                }
            }
            if (dirty) continue;
            for (std::size_t i = t + 1; i < r && !dirty; ++i)
                for (std::size_t j = t + 1; j < c && !dirty; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (std::size_t jj = t; jj < c; ++jj) m[t][jj] += m[i][jj];
                        dirty = true;
                    }
        }
        out.factors.push_back(abs(m[t][t]));
        ++t;
    }
    out.rank = out.factors.size();
    return out;
}

IntMatrix substitute_int(const AlexMatrix& m, long long n) {
    if (n == 0) throw precondition_error("substitute_int: n must be nonzero");
    IntMatrix out;
    for (const auto& row : row_cleared(m.entries)) {
        std::vector<mpz_class> r;
        for (const auto& p : row) r.push_back(eval_int(p, n));
        out.push_back(std::move(r));
    }
    return out;
}

DetValue determinant_at(const Diagram& d, long long n, long long k) {
    return determinant_at_grid(closed_form_matrix(d).entries, n, k);
}

DetValue determinant_at(const AlexMatrix& m, long long n, long long k) {
    return determinant_at_grid(m.entries, n, k);
}

}  // namespace sg
