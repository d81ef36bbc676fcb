#include "doctest.h"
#include "qca/omega_series.hpp"
#include "qca/qrational.hpp"
#include "qca/symfun.hpp"

#include <map>

using namespace qca;

namespace {

QRational P(const std::string& s) { return QRational::parse(s); }

// integer Laurent polynomial from an exponent -> coefficient table
QRational laurent(const std::map<int, long>& terms) {
    QRational r;
    for (auto [e, c] : terms) r += QRational(c) * QRational::q_pow(e);
    return r;
}

}  // namespace

TEST_CASE("q-integers") {
    CHECK(qint(1) == QRational(1));
    CHECK(qint(2) == P("q + q^-1"));
    CHECK(qint(0).is_zero());
    CHECK(qint(-3) == -qint(3));
    CHECK(qint(4) == laurent({{3, 1}, {1, 1}, {-1, 1}, {-3, 1}}));
    for (int k = -20; k <= 20; ++k) CHECK(qint(k) * qdiff() == QRational::q_pow(k) - QRational::q_pow(-k));
}

TEST_CASE("q-factorials") {
    CHECK(qfact(0) == QRational(1));
    CHECK(qfact(2) == P("q + 1/q"));
    // (q^2 + 1 + q^-2)(q + q^-1) by coefficient convolution
    std::map<int, long> a{{2, 1}, {0, 1}, {-2, 1}}, b{{1, 1}, {-1, 1}}, prod;
    for (auto [ea, ca] : a)
        for (auto [eb, cb] : b) prod[ea + eb] += ca * cb;
    CHECK(qfact(3) == laurent(prod));
    CHECK_THROWS(qfact(-1));
}

TEST_CASE("normalization and arithmetic") {
    QRational x = P("(q^2 - 1)/(q - 1)");
    CHECK(x == P("q + 1"));
    CHECK(x.is_laurent());
    QRational a = P("(3*q^2 + 1)/(q^3 - 2*q)");
    CHECK(a + QRational() == a);
    CHECK(qdiff() * qint(2) == P("q^2 - q^-2"));
    CHECK_THROWS_AS(a / QRational(), std::domain_error);
    // denominator monic, no q-power factor
    QRational d = P("1/(2*q^3 - 4*q)");
    CHECK(d.den().lead() == 1);
    CHECK(d.den().low() == 0);
    CHECK(d.den().coeff(0) != 0);
}

TEST_CASE("canonical text round trip") {
    QRational v = P("(1*q^1 + 1*q^-1)/(1)");
    CHECK(v.str() == "(1*q^1 + 1*q^-1)/(1)");
    ExactSampler rs(11);
    for (int i = 0; i < 60; ++i) {
        QRational a = rs.value(true), b = rs.value(true), c = rs.nonzero();
        QRational x = (a + b * QRational::q()) / (c + QRational::q_pow(3)) - a * c;
        QRational back = QRational::parse(x.str());
        CHECK(back == x);
        CHECK(back.str() == x.str());
    }
    CHECK_THROWS_AS(QRational::parse("q +"), ParseError);
    CHECK_THROWS_AS(QRational::parse("g"), ParseError);
    CHECK(QRational::parse("2*g", {{"g", QRational(3)}}) == QRational(6));
}

TEST_CASE("field axioms on random triples") {
    ExactSampler rs(5);
    for (int i = 0; i < 40; ++i) {
        QRational a = rs.value() + rs.value() * QRational::q_pow(rs.uniform(-3, 3));
        QRational b = rs.nonzero() / (QRational::q() + QRational(rs.small_rational()));
        QRational c = rs.value(true);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * a.inverse() == QRational(1));
        CHECK(a - a == QRational());
        // idempotent normalization
        CHECK(QRational(a.num(), a.den()) == a);
    }
}

TEST_CASE("specialization") {
    QRational v = P("(q^2 + 1)/(q - 3)");
    CHECK(v.eval(Rational(2)) == Rational(-5));
    CHECK_THROWS(v.eval(Rational(3)));
}

TEST_CASE("omega series expansion") {
    QRational g = P("3/7*q");
    // 1/(1 - g w)
    OmegaSeries s = series_expand(OmegaPoly::constant(QRational(1)), OmegaPoly::one_minus(g), 2);
    CHECK(s.coeff(0) == QRational(1));
    CHECK(s.coeff(1) == g);
    CHECK(s.coeff(2) == g * g);
    // (1 - q^-2 g w)/(1 - g w) by long division: c_t = (1 - q^-2) g^t
    OmegaSeries r = series_expand(OmegaPoly::one_minus(QRational::q_pow(-2) * g), OmegaPoly::one_minus(g), 2);
    CHECK(r.coeff(0) == QRational(1));
    for (int t = 1; t <= 2; ++t) CHECK(r.coeff(t) == (QRational(1) - QRational::q_pow(-2)) * g.pow(t));
    CHECK(series_expand(OmegaPoly::constant(g), OmegaPoly::constant(QRational(1)), 3) == OmegaSeries::constant(g, 3));
    // simple pole
    OmegaSeries pole = series_expand(OmegaPoly::constant(QRational(1)), OmegaPoly{1, {QRational(1)}}, 2);
    CHECK(pole.low() == -1);
    CHECK(pole.coeff(-1) == QRational(1));
    CHECK_THROWS(series_expand(OmegaPoly::constant(QRational(1)), OmegaPoly{2, {QRational(1)}}, 2));
}

TEST_CASE("series of a product is the product of series") {
    ExactSampler rs(17);
    for (int i = 0; i < 10; ++i) {
        OmegaPoly f1{0, {rs.nonzero(), rs.value(true)}}, f2{0, {QRational(1), rs.value()}};
        OmegaPoly g1{0, {rs.value(), rs.value(true), rs.value()}}, g2{0, {rs.nonzero(), rs.value()}};
        int T = 6;
        OmegaSeries prod = series_expand(f1 * g1, f2 * g2, T);
        CHECK(prod == series_expand(f1, f2, T) * series_expand(g1, g2, T));
    }
}
