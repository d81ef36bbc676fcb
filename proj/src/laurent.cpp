#include "qca/laurent.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace qca {

LaurentPoly::LaurentPoly(const Rational& c, int exponent) {
    if (c != 0) {
        lo_ = exponent;
        c_.push_back(c);
    }
}

LaurentPoly LaurentPoly::from_coeffs(int lo, std::vector<Rational> coeffs) {
    LaurentPoly p;
    p.lo_ = lo;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
}

void LaurentPoly::trim() {
    size_t b = 0;
    while (b < c_.size() && c_[b] == 0) ++b;
    if (b == c_.size()) {
        c_.clear();
        lo_ = 0;
        return;
    }
    size_t e = c_.size();
    while (c_[e - 1] == 0) --e;
    if (b > 0 || e < c_.size()) {
        c_ = std::vector<Rational>(c_.begin() + static_cast<long>(b), c_.begin() + static_cast<long>(e));
        lo_ += static_cast<int>(b);
    }
}

bool LaurentPoly::is_one() const { return lo_ == 0 && c_.size() == 1 && c_[0] == 1; }

Rational LaurentPoly::coeff(int exponent) const {
    int i = exponent - lo_;
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
    return c_[static_cast<size_t>(i)];
}

LaurentPoly LaurentPoly::shifted(int k) const {
    LaurentPoly p = *this;
    if (!p.is_zero()) p.lo_ += k;
    return p;
}

LaurentPoly LaurentPoly::scaled(const Rational& r) const {
    if (r == 0) return {};
    LaurentPoly p = *this;
    for (auto& x : p.c_) x *= r;
    return p;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly p = *this;
    for (auto& x : p.c_) x = -x;
    return p;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // copy the wider operand and add the other in place
    const LaurentPoly& w = a.span() >= b.span() ? a : b;
    const LaurentPoly& o = &w == &a ? b : a;
    int lo = std::min(a.lo_, b.lo_);
    int hi = std::max(a.high(), b.high());
    std::vector<Rational> c;
    c.reserve(static_cast<size_t>(hi - lo + 1));
    c.resize(static_cast<size_t>(w.lo_ - lo));
    c.insert(c.end(), w.c_.begin(), w.c_.end());
    c.resize(static_cast<size_t>(hi - lo + 1));
    for (size_t i = 0; i < o.c_.size(); ++i) c[static_cast<size_t>(o.lo_ - lo) + i] += o.c_[i];
    return LaurentPoly::from_coeffs(lo, std::move(c));
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& b) {
    if (b.is_zero()) return *this;
    if (is_zero() || b.lo_ < lo_ || b.high() > high()) return *this = *this + b;
    for (size_t i = 0; i < b.c_.size(); ++i) c_[static_cast<size_t>(b.lo_ - lo_) + i] += b.c_[i];
    if (c_.front() == 0 || c_.back() == 0) trim();
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.c_.size() == 1 || b.c_.size() == 1) {
        const LaurentPoly& m = a.c_.size() == 1 ? a : b;
        const LaurentPoly& o = &m == &a ? b : a;
        LaurentPoly p;
        p.lo_ = a.lo_ + b.lo_;
        p.c_.reserve(o.c_.size());
        for (const auto& x : o.c_) p.c_.emplace_back(m.c_[0] * x);
        return p;
    }
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return LaurentPoly::from_coeffs(a.lo_ + b.lo_, std::move(c));
}

std::pair<LaurentPoly, LaurentPoly> LaurentPoly::divmod(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero()) return {LaurentPoly(), LaurentPoly()};
    // work with exponents from 0
    int shiftA = a.lo_, shiftB = b.lo_;
    if (shiftA < 0 || shiftB < 0) throw std::invalid_argument("divmod expects ordinary polynomials");
    std::vector<Rational> r(static_cast<size_t>(a.high() + 1));
    for (size_t i = 0; i < a.c_.size(); ++i) r[static_cast<size_t>(shiftA) + i] = a.c_[i];
    int db = b.high();
    std::vector<Rational> bb(static_cast<size_t>(db + 1));
    for (size_t i = 0; i < b.c_.size(); ++i) bb[static_cast<size_t>(shiftB) + i] = b.c_[i];
    int da = a.high();
    if (da < db) return {LaurentPoly(), a};
    std::vector<Rational> quo(static_cast<size_t>(da - db + 1));
    Rational inv = 1 / bb.back();
    for (int k = da - db; k >= 0; --k) {
        Rational f = r[static_cast<size_t>(k + db)] * inv;
        quo[static_cast<size_t>(k)] = f;
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) r[static_cast<size_t>(k + j)] -= f * bb[static_cast<size_t>(j)];
    }
    r.resize(static_cast<size_t>(db));
    return {from_coeffs(0, std::move(quo)), from_coeffs(0, std::move(r))};
}

LaurentPoly LaurentPoly::exact_div(const LaurentPoly& a, const LaurentPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.is_zero()) return {};
    LaurentPoly as = a.shifted(-a.lo_), bs = b.shifted(-b.lo_);
    auto [quo, rem] = divmod(as, bs);
    if (!rem.is_zero()) throw std::logic_error("inexact polynomial division");
    return quo.shifted(a.lo_ - b.lo_);
}

LaurentPoly LaurentPoly::gcd(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly x = a, y = b;
    auto monic = [](LaurentPoly p) { return p.is_zero() ? p : p.scaled(1 / p.lead()); };
    x = monic(x);
    y = monic(y);
    while (!y.is_zero()) {
        LaurentPoly r = divmod(x, y).second;
        x = y;
        y = monic(r);
    }
    return x;
}

Rational LaurentPoly::eval(const Rational& q) const {
    if (is_zero()) return 0;
    if (q == 0) throw std::domain_error("evaluation at q = 0");
    Rational acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * q + c_[i];
    Rational base = 1;
    Rational qq = lo_ >= 0 ? q : Rational(1 / q);
    for (int k = 0; k < std::abs(lo_); ++k) base *= qq;
    return acc * base;
}

std::string rational_str(const Rational& r) {
    Rational x = r;
    x.canonicalize();
    return x.get_str();
}

std::string LaurentPoly::str() const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        int e = lo_ + static_cast<int>(i);
        if (!first) s += " + ";
        first = false;
        s += rational_str(c_[i]);
        if (e != 0) s += "*q^" + std::to_string(e);
    }
    return s;
}

size_t LaurentPoly::hash() const {
    size_t h = std::hash<int>()(lo_);
    for (const auto& x : c_) {
        h ^= std::hash<std::string>()(x.get_str()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

}  // namespace qca
