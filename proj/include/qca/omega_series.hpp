#pragma once

#include "qca/qrational.hpp"

#include <vector>

namespace qca {

// Polynomial in omega (possibly with negative exponents), used as the
// numerator or denominator of a rational function fed to series_expand.
struct OmegaPoly {
    int lo = 0;
    std::vector<QRational> c;

    static OmegaPoly constant(const QRational& v) { return {0, {v}}; }
    // 1 - a*omega
    static OmegaPoly one_minus(const QRational& a) { return {0, {QRational(1), -a}}; }
    QRational coeff(int e) const;
    OmegaPoly operator*(const OmegaPoly& o) const;
};

// Truncated Laurent series sum_{e=lo}^{T} c_e omega^e with lo >= -1.
class OmegaSeries {
public:
    OmegaSeries(int lo, int T);
    OmegaSeries(int lo, int T, std::vector<QRational> coeffs);
    static OmegaSeries constant(const QRational& v, int T);

    int low() const { return lo_; }
    int order() const { return T_; }
    QRational coeff(int e) const;
    void set(int e, const QRational& v);
    const std::vector<QRational>& coeffs() const { return c_; }

    OmegaSeries operator+(const OmegaSeries& o) const;
    OmegaSeries operator-(const OmegaSeries& o) const;
    OmegaSeries operator*(const OmegaSeries& o) const;
    OmegaSeries scaled(const QRational& s) const;
    OmegaSeries truncated(int T) const;

    bool operator==(const OmegaSeries& o) const;
    bool operator!=(const OmegaSeries& o) const { return !(*this == o); }

private:
    int lo_;
    int T_;
    std::vector<QRational> c_;
};

// Expansion of num/den about omega = 0 through omega^T. The quotient may
// have at most a simple pole.
OmegaSeries series_expand(const OmegaPoly& num, const OmegaPoly& den, int T);

}  // namespace qca
