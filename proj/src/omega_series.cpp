#include "qca/omega_series.hpp"

#include <algorithm>
#include <stdexcept>

namespace qca {

QRational OmegaPoly::coeff(int e) const {
    int i = e - lo;
    if (i < 0 || i >= static_cast<int>(c.size())) return {};
    return c[static_cast<size_t>(i)];
}

OmegaPoly OmegaPoly::operator*(const OmegaPoly& o) const {
    if (c.empty() || o.c.empty()) return {0, {}};
    OmegaPoly r{lo + o.lo, std::vector<QRational>(c.size() + o.c.size() - 1)};
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].is_zero()) continue;
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    }
    return r;
}

OmegaSeries::OmegaSeries(int lo, int T) : lo_(lo), T_(T) {
    if (lo < -1) throw std::domain_error("omega series with pole of order above one");
    c_.resize(static_cast<size_t>(std::max(0, T - lo + 1)));
}

OmegaSeries::OmegaSeries(int lo, int T, std::vector<QRational> coeffs) : OmegaSeries(lo, T) {
    for (size_t i = 0; i < coeffs.size() && i < c_.size(); ++i) c_[i] = std::move(coeffs[i]);
}

OmegaSeries OmegaSeries::constant(const QRational& v, int T) {
    OmegaSeries s(0, T);
    if (T >= 0) s.c_[0] = v;
    return s;
}

QRational OmegaSeries::coeff(int e) const {
    int i = e - lo_;
    if (i < 0 || i >= static_cast<int>(c_.size())) return {};
    return c_[static_cast<size_t>(i)];
}

void OmegaSeries::set(int e, const QRational& v) {
    if (e > T_) return;
    if (e < lo_) throw std::out_of_range("exponent below series start");
    c_[static_cast<size_t>(e - lo_)] = v;
}

OmegaSeries OmegaSeries::operator+(const OmegaSeries& o) const {
    int T = std::min(T_, o.T_);
    OmegaSeries r(std::min(lo_, o.lo_), T);
    for (int e = r.lo_; e <= T; ++e) r.set(e, coeff(e) + o.coeff(e));
    return r;
}

OmegaSeries OmegaSeries::operator-(const OmegaSeries& o) const { return *this + o.scaled(QRational(-1)); }

OmegaSeries OmegaSeries::operator*(const OmegaSeries& o) const {
    int lo = lo_ + o.lo_;
    // a term below the start of either factor can only sharpen the truncation
    int T = std::min(T_ + o.lo_, o.T_ + lo_);
    OmegaSeries r(lo, T);
    for (int a = lo_; a <= T_; ++a) {
        QRational ca = coeff(a);
        if (ca.is_zero()) continue;
        for (int b = o.lo_; a + b <= T && b <= o.T_; ++b) {
            QRational cb = o.coeff(b);
            if (!cb.is_zero()) r.c_[static_cast<size_t>(a + b - lo)] += ca * cb;
        }
    }
    return r;
}

OmegaSeries OmegaSeries::scaled(const QRational& s) const {
    OmegaSeries r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

OmegaSeries OmegaSeries::truncated(int T) const {
    OmegaSeries r(lo_, std::min(T, T_));
    for (int e = lo_; e <= r.T_; ++e) r.set(e, coeff(e));
    return r;
}

bool OmegaSeries::operator==(const OmegaSeries& o) const {
    if (T_ != o.T_) return false;
    for (int e = std::min(lo_, o.lo_); e <= T_; ++e)
        if (coeff(e) != o.coeff(e)) return false;
    return true;
}

OmegaSeries series_expand(const OmegaPoly& num, const OmegaPoly& den, int T) {
    // strip leading zeros of the denominator into its exponent
    int dlo = den.lo;
    size_t skip = 0;
    while (skip < den.c.size() && den.c[skip].is_zero()) ++skip;
    if (skip == den.c.size()) throw std::domain_error("series of a rational function with zero denominator");
    dlo += static_cast<int>(skip);
    std::vector<QRational> d(den.c.begin() + static_cast<long>(skip), den.c.end());

    int nlo = num.lo;
    size_t nskip = 0;
    while (nskip < num.c.size() && num.c[nskip].is_zero()) ++nskip;
    if (nskip == num.c.size()) return OmegaSeries(0, T);
    nlo += static_cast<int>(nskip);
    std::vector<QRational> n(num.c.begin() + static_cast<long>(nskip), num.c.end());

    int lo = nlo - dlo;
    if (lo < -1) throw std::domain_error("pole of order above one in series expansion");
    // power series of n/d with n, d starting at exponent 0, through order T - lo
    int need = T - lo;
    OmegaSeries r(lo, T);
    if (need < 0) return r;
    QRational inv0 = d[0].inverse();
    std::vector<QRational> s(static_cast<size_t>(need + 1));
    for (int k = 0; k <= need; ++k) {
        QRational acc = k < static_cast<int>(n.size()) ? n[static_cast<size_t>(k)] : QRational();
        for (int j = 1; j <= k && j < static_cast<int>(d.size()); ++j) {
            if (!d[static_cast<size_t>(j)].is_zero()) acc -= d[static_cast<size_t>(j)] * s[static_cast<size_t>(k - j)];
        }
        s[static_cast<size_t>(k)] = acc * inv0;
        r.set(lo + k, s[static_cast<size_t>(k)]);
    }
    return r;
}

}  // namespace qca
