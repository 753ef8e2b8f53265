#include "sg/laurent.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sg/errors.hpp"

namespace sg {

LaurentPoly::LaurentPoly(const mpz_class& c) {
    if (c != 0) terms_[0] = c;
}

LaurentPoly LaurentPoly::term(const mpz_class& coeff, exp_t exp) {
    LaurentPoly p;
    if (coeff != 0) p.terms_[exp] = coeff;
    return p;
}

bool LaurentPoly::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

bool LaurentPoly::is_unit() const {
    if (terms_.size() != 1) return false;
    const mpz_class& c = terms_.begin()->second;
    return c == 1 || c == -1;
}

LaurentPoly::exp_t LaurentPoly::min_exp() const {
    if (terms_.empty()) throw std::logic_error("min_exp of zero polynomial");
    return terms_.begin()->first;
}

LaurentPoly::exp_t LaurentPoly::max_exp() const {
    if (terms_.empty()) throw std::logic_error("max_exp of zero polynomial");
    return terms_.rbegin()->first;
}

mpz_class LaurentPoly::coeff(exp_t e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? mpz_class(0) : it->second;
}

void LaurentPoly::add_term(exp_t e, const mpz_class& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) r.add_term(ea + eb, ca * cb);
    return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
}

LaurentPoly LaurentPoly::shifted(exp_t d) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e + d] = c;
    return r;
}

mpz_class content(const LaurentPoly& p) {
    mpz_class g = 0;
    for (const auto& [e, c] : p.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

LaurentPoly normalize_unit(const LaurentPoly& p) {
    if (p.is_zero()) return p;
    LaurentPoly r = p.shifted(-p.min_exp());
    if (r.coeff(0) < 0) return -r;
    return r;
}

namespace {

// Dense representation of an ordinary polynomial in Z[t], lowest degree first.
using Dense = std::vector<mpz_class>;

Dense to_dense(const LaurentPoly& p) {
    Dense d(static_cast<size_t>(p.max_exp() - p.min_exp()) + 1, mpz_class(0));
    for (const auto& [e, c] : p.terms()) d[static_cast<size_t>(e - p.min_exp())] = c;
    return d;
}

LaurentPoly from_dense(const Dense& d) {
    LaurentPoly p;
    for (size_t i = 0; i < d.size(); ++i) p.add_term(static_cast<long long>(i), d[i]);
    return p;
}

long long deg(const Dense& d) {
    for (size_t i = d.size(); i-- > 0;)
        if (d[i] != 0) return static_cast<long long>(i);
    return -1;
}

void trim(Dense& d) {
    while (!d.empty() && d.back() == 0) d.pop_back();
}

Dense scalar_mul(const Dense& d, const mpz_class& s) {
    Dense r = d;
    for (auto& c : r) c *= s;
    return r;
}

Dense scalar_div_exact(const Dense& d, const mpz_class& s) {
    Dense r = d;
    for (auto& c : r) {
        mpz_class q, rem;
        mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
        if (rem != 0) throw std::logic_error("inexact scalar division in PRS");
        c = q;
    }
    return r;
}

Dense primitive_part(const Dense& d, mpz_class* cont_out = nullptr) {
    mpz_class g = 0;
    for (const auto& c : d) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (cont_out) *cont_out = g;
    if (g == 0 || g == 1) return d;
    return scalar_div_exact(d, g);
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, deg a >= deg b >= 0.
Dense prem(Dense a, const Dense& b) {
    long long db = deg(b);
    const mpz_class& lb = b[static_cast<size_t>(db)];
    long long e = deg(a) - db + 1;
    while (true) {
        long long da = deg(a);
        if (da < db) break;
        mpz_class la = a[static_cast<size_t>(da)];
        for (auto& c : a) c *= lb;
        for (long long j = 0; j <= db; ++j)
            a[static_cast<size_t>(da - db + j)] -= la * b[static_cast<size_t>(j)];
        --e;
    }
    if (e > 0) {
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
        for (auto& c : a) c *= f;
    }
    trim(a);
    return a;
}

// gcd of primitive polynomials via the subresultant PRS; result primitive.
Dense prs_gcd(Dense a, Dense b) {
    if (deg(a) < deg(b)) std::swap(a, b);
    mpz_class g = 1, h = 1;
    while (true) {
        long long delta = deg(a) - deg(b);
        Dense r = prem(a, b);
        if (r.empty()) return primitive_part(b);
        if (deg(r) == 0) return Dense{mpz_class(1)};
        a = b;
        mpz_class hd;
        mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
        b = scalar_div_exact(r, g * hd);
        g = a[static_cast<size_t>(deg(a))];
        if (delta > 0) {
            mpz_class gd;
            mpz_pow_ui(gd.get_mpz_t(), g.get_mpz_t(), static_cast<unsigned long>(delta));
            mpz_class hd1;
            mpz_pow_ui(hd1.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
            mpz_class q, rem;
            mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), gd.get_mpz_t(), hd1.get_mpz_t());
            if (rem != 0) throw std::logic_error("inexact h update in PRS");
            h = q;
        }
    }
}

}  // namespace

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return normalize_unit(b);
    if (b.is_zero()) return normalize_unit(a);
    mpz_class ca, cb;
    Dense da = primitive_part(to_dense(a), &ca);
    Dense db = primitive_part(to_dense(b), &cb);
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    Dense g;
    if (deg(da) == 0 || deg(db) == 0)
        g = Dense{mpz_class(1)};
    else
        g = prs_gcd(da, db);
    LaurentPoly r = from_dense(g) * LaurentPoly(c);
    return normalize_unit(r);
}

LaurentPoly substitute(const LaurentPoly& p, long long g) {
    if (g == 0) throw precondition_error("substitute: exponent multiplier must be nonzero");
    LaurentPoly r;
    for (const auto& [e, c] : p.terms()) r.add_term(e * g, c);
    return r;
}

mpq_class eval_at(const LaurentPoly& p, long long n) {
    if (n == 0) throw precondition_error("eval_at: n must be nonzero");
    mpq_class r = 0;
    mpz_class nn(static_cast<long>(n));
    for (const auto& [e, c] : p.terms()) {
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), nn.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
        if (e >= 0)
            r += mpq_class(c * pw);
        else
            r += mpq_class(c) / mpq_class(pw);
    }
    r.canonicalize();
    return r;
}

mpz_class eval_int(const LaurentPoly& p, long long n) {
    mpz_class r = 0;
    mpz_class nn(static_cast<long>(n));
    for (const auto& [e, c] : p.terms()) {
        if (e < 0) throw precondition_error("eval_int: negative exponent present");
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), nn.get_mpz_t(), static_cast<unsigned long>(e));
        r += c * pw;
    }
    return r;
}

namespace {

// Z[t] long division; returns true and the quotient when exact over Z.
bool try_div(const Dense& p, const Dense& d, Dense* q_out) {
    long long dp = deg(p), dd = deg(d);
    if (dd < 0) return false;
    if (dp < 0) {
        if (q_out) q_out->clear();
        return true;
    }
    if (dp < dd) return false;
    Dense rem = p;
    Dense q(static_cast<size_t>(dp - dd) + 1, mpz_class(0));
    const mpz_class& ld = d[static_cast<size_t>(dd)];
    for (long long i = dp; i >= dd; --i) {
        const mpz_class& lr = rem[static_cast<size_t>(i)];
        if (lr == 0) continue;
        mpz_class qc, r2;
        mpz_tdiv_qr(qc.get_mpz_t(), r2.get_mpz_t(), lr.get_mpz_t(), ld.get_mpz_t());
        if (r2 != 0) return false;
        q[static_cast<size_t>(i - dd)] = qc;
        for (long long j = 0; j <= dd; ++j) rem[static_cast<size_t>(i - dd + j)] -= qc * d[static_cast<size_t>(j)];
    }
    trim(rem);
    if (!rem.empty()) return false;
    if (q_out) *q_out = q;
    return true;
}

}  // namespace

bool divides(const LaurentPoly& d, const LaurentPoly& p) {
    if (d.is_zero()) return p.is_zero();
    if (p.is_zero()) return true;
    return try_div(to_dense(p), to_dense(d), nullptr);
}

LaurentPoly div_exact(const LaurentPoly& p, const LaurentPoly& d) {
    if (d.is_zero()) throw std::logic_error("div_exact by zero");
    if (p.is_zero()) return LaurentPoly();
    Dense q;
    if (!try_div(to_dense(p), to_dense(d), &q)) throw std::logic_error("div_exact: not divisible");
    return from_dense(q).shifted(p.min_exp() - d.min_exp());
}

std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        mpz_class ac = abs(c);
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        if (e == 0) {
            out << ac.get_str();
        } else {
            if (ac != 1) out << ac.get_str() << "*";
            out << "t";
            if (e != 1) out << "^" << e;
        }
    }
    return out.str();
}

namespace {

struct Parser {
    const std::string& s;
    size_t i = 0;

    explicit Parser(const std::string& str) : s(str) {}

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return s[i];
    }

    mpz_class read_integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        size_t digits = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == digits) throw invalid_input("polynomial: expected integer at position " + std::to_string(start));
        return mpz_class(s.substr(start, i - start));
    }

    long long read_exponent() {
        mpz_class e = read_integer();
        if (!e.fits_slong_p()) throw invalid_input("polynomial: exponent out of range");
        return e.get_si();
    }

    // term := integer ['*' t-part] | t-part, with t-part := 't' ['^' integer]
    void read_term(int sign, LaurentPoly& acc) {
        skip_ws();
        mpz_class coeff = 1;
        bool have_coeff = false;
        if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])))) {
            coeff = read_integer();
            have_coeff = true;
            skip_ws();
            if (i < s.size() && s[i] == '*') {
                ++i;
                skip_ws();
                if (i >= s.size() || s[i] != 't')
                    throw invalid_input("polynomial: expected t after '*'");
            } else if (i >= s.size() || s[i] != 't') {
                acc.add_term(0, sign * coeff);
                return;
            }
        }
        skip_ws();
        if (i >= s.size() || s[i] != 't') {
            if (have_coeff) {
                acc.add_term(0, sign * coeff);
                return;
            }
            throw invalid_input("polynomial: expected term at position " + std::to_string(i));
        }
        ++i;
        long long e = 1;
        skip_ws();
        if (i < s.size() && s[i] == '^') {
            ++i;
            e = read_exponent();
        }
        acc.add_term(e, sign * coeff);
    }

    LaurentPoly parse() {
        LaurentPoly acc;
        int sign = 1;
        skip_ws();
        if (eof()) throw invalid_input("polynomial: empty input");
        if (peek() == '+' || peek() == '-') {
            sign = (s[i] == '-') ? -1 : 1;
            ++i;
        }
        read_term(sign, acc);
        while (!eof()) {
            char c = peek();
            if (c == '+')
                sign = 1;
            else if (c == '-')
                sign = -1;
            else
                throw invalid_input(std::string("polynomial: unexpected character '") + c + "'");
            ++i;
            read_term(sign, acc);
        }
        return acc;
    }
};

}  // namespace

LaurentPoly parse_laurent(const std::string& s) {
    Parser p(s);
    return p.parse();
}

}  // namespace sg
