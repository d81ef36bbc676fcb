#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace qca {

using Rational = mpq_class;

// Laurent polynomial in q with rational coefficients, stored densely from
// the lowest exponent. Zero is the empty coefficient vector.
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(const Rational& c, int exponent = 0);

    static LaurentPoly monomial(const Rational& c, int exponent) { return LaurentPoly(c, exponent); }
    static LaurentPoly from_coeffs(int lo, std::vector<Rational> coeffs);

    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    bool is_constant() const { return c_.size() == 1 && lo_ == 0; }
    int low() const { return lo_; }
    int high() const { return lo_ + static_cast<int>(c_.size()) - 1; }
    // degree span; -1 for zero
    int span() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int exponent) const;
    const Rational& lead() const { return c_.back(); }
    const Rational& trail() const { return c_.front(); }

    LaurentPoly shifted(int k) const;
    LaurentPoly scaled(const Rational& r) const;
    LaurentPoly operator-() const;

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.lo_ == b.lo_ && a.c_ == b.c_; }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    LaurentPoly& operator+=(const LaurentPoly& b);
    LaurentPoly& operator-=(const LaurentPoly& b) { return *this = *this - b; }
    LaurentPoly& operator*=(const LaurentPoly& b) { return *this = *this * b; }

    // Division with remainder for ordinary polynomials (lo >= 0 on both sides).
    static std::pair<LaurentPoly, LaurentPoly> divmod(const LaurentPoly& a, const LaurentPoly& b);
    // Exact quotient; throws if b does not divide a in Q[q, q^-1].
    static LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b);
    // Monic gcd of two ordinary polynomials, zero gcd(0, 0) = 0.
    static LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

    Rational eval(const Rational& q) const;
    std::string str() const;

    size_t hash() const;

private:
    void trim();
    int lo_ = 0;
    std::vector<Rational> c_;
};

std::string rational_str(const Rational& r);

}  // namespace qca
