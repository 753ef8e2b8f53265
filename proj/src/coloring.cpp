#include "sg/coloring.hpp"

#include <stdexcept>
#include <string>
#include <utility>

#include "sg/errors.hpp"
#include "sg/invariants.hpp"
#include "sg/wirtinger.hpp"

namespace sg {

namespace {

void check_modulus(long long n, long long p, const ColoringOptions& opts) {
    if (!is_prime(p)) throw precondition_error("coloring: p must be prime, got " + std::to_string(p));
    if (p == 2 && !opts.allow_p2) throw precondition_error("coloring: p = 2 requires allow_p2");
    if (n % p == 0) throw precondition_error("coloring: modular inverse of n undefined (p divides n)");
}

void check_params(const Diagram& d, long long n, long long p, const ColoringOptions& opts) {
    require_valid(d);
    require_balanced(d);
    check_modulus(n, p, opts);
}

long long eval_modp(const LaurentPoly& q, long long n, long long p) {
    long long acc = 0;
    for (const auto& [e, c] : q.terms()) {
        long long coeff = static_cast<long long>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p)));
        long long pw = mod_pow(n, e, p);
        acc = mod_norm(acc + static_cast<long long>((static_cast<__int128>(coeff) * pw) % p), p);
    }
    return acc;
}

mpz_class pow_count(long long p, std::size_t n) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(n));
    return r;
}

}  // namespace

ColoringMatrix coloring_matrix(const AlexMatrix& a, long long n, long long p,
                               const ColoringOptions& opts) {
    check_modulus(n, p, opts);
    ColoringMatrix r;
    r.p = p;
    r.n = n;
    r.row_labels = a.row_labels;
    r.col_arcs = a.col_arcs;
    r.mat.p = p;
    for (const auto& row : a.entries) {
        std::vector<long long> out;
        out.reserve(row.size());
        for (const auto& q : row) out.push_back(eval_modp(q, n, p));
        r.mat.rows.push_back(std::move(out));
    }
    return r;
}

ColoringMatrix coloring_matrix(const Diagram& d, long long n, long long p,
                               const ColoringOptions& opts) {
    check_params(d, n, p, opts);
    return coloring_matrix(closed_form_matrix(d), n, p, opts);
}

std::size_t nullity(const AlexMatrix& a, long long n, long long p, const ColoringOptions& opts) {
    ColoringMatrix c = coloring_matrix(a, n, p, opts);
    return c.mat.col_count() - rank(c.mat);
}

std::size_t nullity(const Diagram& d, long long n, long long p, const ColoringOptions& opts) {
    ColoringMatrix c = coloring_matrix(d, n, p, opts);
    return c.mat.col_count() - rank(c.mat);
}

std::vector<Coloring> coloring_basis(const Diagram& d, long long n, long long p,
                                     const ColoringOptions& opts) {
    ColoringMatrix c = coloring_matrix(d, n, p, opts);
    std::vector<Coloring> out;
    for (const auto& v : nullspace(c.mat)) {
        Coloring col{p, n, {}};
        for (std::size_t i = 0; i < v.size(); ++i) col.values[c.col_arcs[i]] = v[i];
        out.push_back(std::move(col));
    }
    return out;
}

std::vector<Coloring> enumerate_colorings(const Diagram& d, long long n, long long p,
                                          const ColoringOptions& opts) {
    ColoringMatrix c = coloring_matrix(d, n, p, opts);
    std::vector<std::vector<long long>> basis = nullspace(c.mat);
    mpz_class total = pow_count(p, basis.size());
    mpz_class cap(static_cast<unsigned long>(opts.enumeration_cap));
    if (total > cap)
        throw cap_exceeded("enumerate_colorings: p^N_p = " + total.get_str() +
                           " colorings exceed cap " + cap.get_str());

    std::size_t cols = c.mat.col_count();
    std::vector<Coloring> out;
    std::vector<long long> coeff(basis.size(), 0);
    while (true) {
        std::vector<long long> vec(cols, 0);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (coeff[i] == 0) continue;
            for (std::size_t j = 0; j < cols; ++j)
                vec[j] = mod_norm(vec[j] + static_cast<long long>((static_cast<__int128>(coeff[i]) * basis[i][j]) % p), p);
        }
        for (std::size_t ri = 0; ri < c.mat.row_count(); ++ri) {
            long long s = 0;
            for (std::size_t j = 0; j < cols; ++j)
                s = mod_norm(s + static_cast<long long>((static_cast<__int128>(c.mat.rows[ri][j]) * vec[j]) % p), p);
            if (s != 0)
                throw std::logic_error("enumerate_colorings: relation " + c.row_labels[ri] + " violated");
        }
        Coloring col{p, n, {}};
        for (std::size_t j = 0; j < cols; ++j) col.values[c.col_arcs[j]] = vec[j];
        out.push_back(std::move(col));

        std::size_t i = basis.size();
        while (i > 0 && coeff[i - 1] == p - 1) coeff[--i] = 0;
        if (i == 0) break;
        ++coeff[i - 1];
    }
    return out;
}

DeterminantCheckReport coloring_determinant_check(const Diagram& d, long long n, long long p,
                                                  long long k, const ColoringOptions& opts) {
    DeterminantCheckReport rep;
    rep.nullity = nullity(d, n, p, opts);
    long long e = static_cast<long long>(d.edges.size());
    long long v = static_cast<long long>(d.vertices.size());
    rep.threshold = e - v + k;
    DetValue dv = determinant_at(d, n, k);
    rep.raw_det = dv.raw;
    rep.extra_colorings = static_cast<long long>(rep.nullity) > rep.threshold;
    rep.divides = mpz_divisible_ui_p(rep.raw_det.get_mpz_t(), static_cast<unsigned long>(p)) != 0;
    rep.holds = rep.extra_colorings == rep.divides;
    return rep;
}

std::optional<std::vector<long long>> zero_coordinate_witness(
    const std::vector<std::vector<long long>>& span, long long p,
    const std::vector<std::size_t>& zero_at) {
    if (!is_prime(p)) throw precondition_error("zero_coordinate_witness: p must be prime");
    if (span.empty()) return std::nullopt;
    std::size_t cols = span.front().size();
    ModMatrix sp{p, {}};
    for (const auto& v : span) {
        if (v.size() != cols) throw precondition_error("zero_coordinate_witness: ragged span");
        std::vector<long long> row;
        row.reserve(cols);
        for (long long x : v) row.push_back(mod_norm(x, p));
        sp.rows.push_back(std::move(row));
    }
    for (std::size_t j : zero_at)
        if (j >= cols) throw precondition_error("zero_coordinate_witness: index out of range");

    // Row-reduce the span to a basis, then solve for a combination whose
    // zero_at coordinates all vanish.
    ModMatrix work = sp;
    std::vector<std::vector<long long>> basis;
    {
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols && r < work.row_count(); ++c) {
            std::size_t sel = r;
            while (sel < work.row_count() && work.rows[sel][c] == 0) ++sel;
            if (sel == work.row_count()) continue;
            std::swap(work.rows[r], work.rows[sel]);
            long long inv = mod_inv(work.rows[r][c], p);
            for (auto& x : work.rows[r]) x = static_cast<long long>((static_cast<__int128>(x) * inv) % p);
            for (std::size_t i = 0; i < work.row_count(); ++i) {
                if (i == r || work.rows[i][c] == 0) continue;
                long long f = work.rows[i][c];
                for (std::size_t j = 0; j < cols; ++j) {
                    long long sub = static_cast<long long>((static_cast<__int128>(f) * work.rows[r][j]) % p);
                    work.rows[i][j] = mod_norm(work.rows[i][j] - sub, p);
                }
            }
            ++r;
        }
        for (std::size_t i = 0; i < r; ++i) basis.push_back(work.rows[i]);
    }
    if (basis.empty()) return std::nullopt;

    ModMatrix constraints{p, {}};
    for (std::size_t j : zero_at) {
        std::vector<long long> row;
        row.reserve(basis.size());
        for (const auto& b : basis) row.push_back(b[j]);
        constraints.rows.push_back(std::move(row));
    }
    if (constraints.rows.empty())
        constraints.rows.push_back(std::vector<long long>(basis.size(), 0));
    std::vector<std::vector<long long>> combos = nullspace(constraints);
    if (combos.empty()) return std::nullopt;

    std::vector<long long> x(cols, 0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (combos.front()[i] == 0) continue;
        for (std::size_t j = 0; j < cols; ++j)
            x[j] = mod_norm(x[j] + static_cast<long long>((static_cast<__int128>(combos.front()[i]) * basis[i][j]) % p), p);
    }
    return x;
}

}  // namespace sg
