#include "qca/qrational.hpp"

#include <cctype>

namespace qca {

QRational::QRational(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("QRational with zero denominator");
    normalize();
}

void QRational::normalize() {
    if (num_.is_zero()) {
        den_ = LaurentPoly(1);
        return;
    }
    if (den_.low() != 0) {
        num_ = num_.shifted(-den_.low());
        den_ = den_.shifted(-den_.low());
    }
    if (den_.span() > 0) {
        LaurentPoly g = LaurentPoly::gcd(num_.shifted(-num_.low()), den_);
        if (g.span() > 0) {
            num_ = LaurentPoly::exact_div(num_, g);
            den_ = LaurentPoly::exact_div(den_, g);
        }
    }
    if (den_.lead() != 1) {
        Rational inv = 1 / den_.lead();
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

QRational QRational::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(q)");
    return QRational(den_, num_);
}

QRational QRational::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    QRational r(1), b = *this;
    while (k > 0) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

QRational QRational::operator-() const {
    QRational r = *this;
    r.num_ = -r.num_;
    return r;
}

QRational operator+(const QRational& a, const QRational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.is_one() && b.den_.is_one()) return QRational(a.num_ + b.num_);
    if (a.den_ == b.den_) return QRational(a.num_ + b.num_, a.den_);
    return QRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

QRational operator-(const QRational& a, const QRational& b) { return a + (-b); }

QRational& QRational::operator+=(const QRational& b) {
    if (den_.is_one() && b.den_.is_one()) {
        num_ += b.num_;
        return *this;
    }
    return *this = *this + b;
}

QRational operator*(const QRational& a, const QRational& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.den_.is_one() && b.den_.is_one()) return QRational(a.num_ * b.num_);
    // a unit times a power of q shares no factor with a denominator
    // normalized to a nonzero constant term
    if (a.den_.is_one() && a.num_.span() == 0) {
        QRational r = b;
        r.num_ = a.num_ * b.num_;
        return r;
    }
    if (b.den_.is_one() && b.num_.span() == 0) return b * a;
    return QRational(a.num_ * b.num_, a.den_ * b.den_);
}

QRational operator/(const QRational& a, const QRational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero in Q(q)");
    if (a.is_zero()) return {};
    return QRational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational QRational::eval(const Rational& q) const {
    Rational d = den_.eval(q);
    if (d == 0) throw std::domain_error("pole at the specialized value of q");
    return num_.eval(q) / d;
}

std::string QRational::str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

QRational qint(int k) {
    if (k == 0) return {};
    if (k < 0) return -qint(-k);
    std::vector<Rational> c(static_cast<size_t>(2 * k - 1));
    for (size_t i = 0; i < c.size(); i += 2) c[i] = 1;
    return QRational(LaurentPoly::from_coeffs(1 - k, std::move(c)));
}

QRational qfact(int k) {
    if (k < 0) throw std::invalid_argument("q-factorial of a negative integer");
    QRational r(1);
    for (int j = 2; j <= k; ++j) r *= qint(j);
    return r;
}

QRational qdiff() { return QRational(LaurentPoly(1, 1) - LaurentPoly(1, -1)); }

namespace {

class Parser {
public:
    Parser(const std::string& s, const std::map<std::string, QRational>& sym) : s_(s), sym_(sym) {}

    QRational run() {
        QRational v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg + " at position " + std::to_string(pos_) + " in \"" + s_ + "\"");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    QRational expr() {
        QRational v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    QRational term() {
        QRational v = unary();
        for (;;) {
            if (eat('*')) v *= unary();
            else if (eat('/')) {
                QRational d = unary();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else return v;
        }
    }
    QRational unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    QRational power() {
        QRational base = primary();
        if (eat('^')) {
            skip();
            bool neg = false;
            if (eat('-')) neg = true;
            else eat('+');
            skip();
            if (eat('(')) {
                bool neg2 = eat('-');
                long e = integer();
                if (!eat(')')) fail("expected ')'");
                if (neg2) e = -e;
                if (neg) e = -e;
                return raise(base, e);
            }
            long e = integer();
            return raise(base, neg ? -e : e);
        }
        return base;
    }
    QRational raise(const QRational& b, long e) {
        if (e < 0 && b.is_zero()) fail("zero to a negative power");
        if (e > 100000 || e < -100000) fail("exponent out of range");
        return b.pow(static_cast<int>(e));
    }
    long integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        if (pos_ - start > 9) fail("integer exponent too large");
        return std::stol(s_.substr(start, pos_ - start));
    }
    QRational primary() {
        skip();
        if (eat('(')) {
            QRational v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            mpz_class z(s_.substr(start, pos_ - start));
            return QRational(Rational(z));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (id == "q") return QRational::q();
            auto it = sym_.find(id);
            if (it == sym_.end()) {
                pos_ = start;
                fail("unknown symbol '" + id + "'");
            }
            return it->second;
        }
        fail("unexpected character");
    }

    const std::string& s_;
    const std::map<std::string, QRational>& sym_;
    size_t pos_ = 0;
};

}  // namespace

QRational QRational::parse(const std::string& text, const std::map<std::string, QRational>& symbols) {
    return Parser(text, symbols).run();
}

}  // namespace qca
