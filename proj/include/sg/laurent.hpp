#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

namespace sg {

// Laurent polynomial over Z in one variable t. Exponents may be negative.
// Invariant: terms_ holds no zero coefficients; zero is the empty map.
class LaurentPoly {
public:
    using exp_t = long long;

    LaurentPoly() = default;
    explicit LaurentPoly(long long c) : LaurentPoly(mpz_class(static_cast<long>(c))) {}
    explicit LaurentPoly(const mpz_class& c);

    static LaurentPoly term(const mpz_class& coeff, exp_t exp);
    static LaurentPoly t_power(exp_t exp) { return term(1, exp); }

    const std::map<exp_t, mpz_class>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_unit() const;  // +-t^e

    exp_t min_exp() const;  // requires nonzero
    exp_t max_exp() const;  // requires nonzero
    mpz_class coeff(exp_t e) const;
    void add_term(exp_t e, const mpz_class& c);

    LaurentPoly operator-() const;
    LaurentPoly& operator+=(const LaurentPoly& o);
    LaurentPoly& operator-=(const LaurentPoly& o);
    LaurentPoly& operator*=(const LaurentPoly& o);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return terms_ != o.terms_; }
    bool operator<(const LaurentPoly& o) const { return terms_ < o.terms_; }

    LaurentPoly shifted(exp_t d) const;  // multiply by t^d

private:
    std::map<exp_t, mpz_class> terms_;
};

// gcd of |coefficients|, nonnegative; 0 for the zero polynomial.
mpz_class content(const LaurentPoly& p);

// Canonical associate: multiply by +-t^r so min exponent is 0 and the
// constant coefficient is positive. normalize_unit(0) = 0.
LaurentPoly normalize_unit(const LaurentPoly& p);

// gcd up to units, returned in normalize_unit form. gcd(0,0) = 0.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

// t -> t^g. Requires g != 0.
LaurentPoly substitute(const LaurentPoly& p, long long g);

// Evaluate at integer n != 0 (rational because of negative exponents).
mpq_class eval_at(const LaurentPoly& p, long long n);

// Evaluate at n with all exponents >= 0 required.
mpz_class eval_int(const LaurentPoly& p, long long n);

// Does d divide p in Z[t, t^-1]?
bool divides(const LaurentPoly& d, const LaurentPoly& p);

// Exact quotient p / d; throws std::logic_error when not exact.
LaurentPoly div_exact(const LaurentPoly& p, const LaurentPoly& d);

// Text form, descending exponents: "t^2 - 2*t + 2", "3 - t^-1", "0".
std::string to_string(const LaurentPoly& p);

// Inverse of to_string; accepts optional whitespace. Throws invalid_input.
LaurentPoly parse_laurent(const std::string& s);

}  // namespace sg
