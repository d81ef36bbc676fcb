#pragma once

#include "qca/laurent.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace qca {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Element of Q(q). Canonical form: the denominator is a monic polynomial with
// nonzero constant term, coprime to the numerator; q-powers live in the
// numerator. Equal values therefore have equal representations.
class QRational {
public:
    QRational() : den_(1) {}
    QRational(long v) : num_(Rational(v)), den_(1) {}
    QRational(const Rational& v) : num_(v), den_(1) {}
    QRational(const LaurentPoly& p) : num_(p), den_(1) {}
    QRational(const LaurentPoly& num, const LaurentPoly& den);

    static QRational q() { return QRational(LaurentPoly(1, 1)); }
    static QRational q_pow(int k) { return QRational(LaurentPoly(1, k)); }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_laurent() const { return den_.is_one(); }
    // true when the value lies in Q (no q-dependence)
    bool is_rational_constant() const { return den_.is_one() && (num_.is_zero() || num_.is_constant()); }

    QRational inverse() const;
    QRational pow(int k) const;
    QRational operator-() const;

    friend QRational operator+(const QRational& a, const QRational& b);
    friend QRational operator-(const QRational& a, const QRational& b);
    friend QRational operator*(const QRational& a, const QRational& b);
    friend QRational operator/(const QRational& a, const QRational& b);
    friend bool operator==(const QRational& a, const QRational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const QRational& a, const QRational& b) { return !(a == b); }

    QRational& operator+=(const QRational& b);
    QRational& operator-=(const QRational& b) { return *this = *this - b; }
    QRational& operator*=(const QRational& b) { return *this = *this * b; }
    QRational& operator/=(const QRational& b) { return *this = *this / b; }

    // Specialize q to a nonzero rational. Throws on a pole.
    Rational eval(const Rational& q) const;
    // Textual form "(num)/(den)", each side "c*q^e + ...".
    std::string str() const;
    size_t hash() const { return num_.hash() * 31 + den_.hash(); }

    // Parses the textual form and, more generally, expressions in q with
    // + - * / ^ and parentheses. Identifiers other than q are looked up in
    // `symbols`.
    static QRational parse(const std::string& text, const std::map<std::string, QRational>& symbols = {});

private:
    void normalize();
    LaurentPoly num_;
    LaurentPoly den_;
};

// q-integer [k] and q-factorial [k]!
QRational qint(int k);
QRational qfact(int k);
// q - q^{-1}
QRational qdiff();

}  // namespace qca
