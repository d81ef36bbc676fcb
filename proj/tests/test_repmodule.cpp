#include "doctest.h"
#include "qca/repmodule.hpp"

using namespace qca;

namespace {

QRational P(const std::string& s) { return QRational::parse(s); }
const QRational q = QRational::q();
QRational qp(int k) { return QRational::q_pow(k); }

Vec unit(int d, int k) {
    Vec v(static_cast<size_t>(d));
    v[static_cast<size_t>(k)] = QRational(1);
    return v;
}

std::vector<GenSymbol> gens(int n) {
    std::vector<GenSymbol> g;
    for (int i = 1; i < n; ++i)
        for (auto s : {GenSymbol::X(1, i, 0), GenSymbol::X(-1, i, 0), GenSymbol::Jt(i, 1), GenSymbol::K(1, i), GenSymbol::K(-1, i)})
            g.push_back(s);
    return g;
}

void require_relations(const Module& M, int T) {
    CheckReport r = verify_relations(M, T);
    INFO((r.failures.empty() ? std::string() : r.failures.front()));
    CHECK(r.total() > 0);
    CHECK(r.ok());
}

void require_structure(const Module& M) {
    CheckReport r = verify_structure(M);
    INFO((r.failures.empty() ? std::string() : r.failures.front()));
    CHECK(r.ok());
}

Matrix evaluate(const TensorElement& te, const Module& M, const Module& N) {
    Matrix m(M.dim() * N.dim(), M.dim() * N.dim());
    for (const auto& [key, c] : te.terms()) m = m + c * Matrix::kron(M.word_matrix(key.first), N.word_matrix(key.second));
    return m;
}

// Maximal submodule missing the top vector, from the closure of the top
// coordinate functional under right multiplication.
int radical_dim_by_functionals(const Module& M, int top_index) {
    int d = M.dim();
    Echelon span(d);
    std::vector<Vec> queue{unit(d, top_index)};
    span.insert(queue.front());
    for (size_t k = 0; k < queue.size(); ++k)
        for (const auto& g : gens(M.n())) {
            Vec f = M.matrix(g).transpose().apply(queue[k]);
            if (span.insert(f)) queue.push_back(f);
        }
    return d - span.rank();
}

}  // namespace

TEST_CASE("one-dimensional modules") {
    QRational Q = P("3/2*q"), beta = P("-2*q^2");
    Module D = one_dim_module({Q}, {beta});
    QRational bt = (QRational(1) - beta.pow(-2)) / qdiff();
    for (int t = 0; t <= 4; ++t) CHECK(D.matrix(GenSymbol::Jt(1, t)).at(0, 0) == bt * Q.pow(-t));
    CHECK(D.matrix(GenSymbol::K(1, 1)).at(0, 0) == beta);
    CHECK(D.matrix(GenSymbol::X(1, 1, 3)).is_zero());

    Module triv = one_dim_module({QRational()}, {QRational(1)});
    for (int t = 0; t <= 4; ++t) CHECK(triv.matrix(GenSymbol::Jt(1, t)).is_zero());
    CHECK(triv.matrix(GenSymbol::K(1, 1)) == Matrix::identity(1));

    CHECK_THROWS_AS(one_dim_module({QRational()}, {P("2")}), std::invalid_argument);
    CHECK_THROWS_AS(one_dim_module({Q}, {QRational()}), std::invalid_argument);
    CHECK_THROWS_AS(one_dim_module({Q}, {beta, beta}), std::invalid_argument);

    for (const auto& [QQ, b] : std::vector<std::pair<QRational, QRational>>{
             {QRational(), QRational(1)}, {QRational(), QRational(-1)}, {Q, beta}, {P("-1/5"), QRational(-1)}}) {
        Module M = one_dim_module({QQ}, {b});
        require_relations(M, 4);
        require_structure(M);
    }
    Module two = one_dim_module({QRational(), P("7*q^-1")}, {QRational(-1), P("1/3")});
    require_relations(two, 3);
    require_structure(two);
}

TEST_CASE("psi elements on one-dimensional modules") {
    int T = 4;
    for (const auto& [Q, b] : std::vector<std::pair<QRational, QRational>>{
             {P("5/3*q"), P("-2*q")}, {QRational(), QRational(-1)}, {P("q^3"), P("1/2")}}) {
        Module D = one_dim_module({Q}, {b}, T);
        OmegaSeries s = psi_series(Q, NodePolynomial(b, {}), T);
        int lo = Q.is_zero() ? 0 : -1;
        for (int t = lo; t < T; ++t) CHECK(D.act(psi_element(1, t, Q)).at(0, 0) == s.coeff(t));
    }
}

TEST_CASE("act") {
    Module V = sl2_eval_module(P("2"), 3);
    CHECK(V.act(AlgebraElement::one()) == Matrix::identity(2));
    CHECK_THROWS_AS(V.act(AlgebraElement(GenSymbol::Jt(1, 4))), std::out_of_range);
    CHECK_NOTHROW(V.act_unchecked(AlgebraElement(GenSymbol::Jt(1, 4))));
    RelParams p;
    p.s = 1;
    p.t = 2;
    CHECK(V.act(relation_instance(RelationId::Q6, p, {QRational()})).is_zero());
}

TEST_CASE("sl2 evaluation modules") {
    for (const auto& g : {QRational(), QRational(1), q, P("2/3*q^-1"), P("-5")}) {
        Module V = sl2_eval_module(g, 4);
        for (int t = 0; t <= 5; ++t) {
            for (auto s : {GenSymbol::X(1, 1, t), GenSymbol::X(-1, 1, t), GenSymbol::Jt(1, t)})
                CHECK(V.matrix(s) == sl2_eval_matrix(g, s));
            QRational gt = t == 0 ? QRational(1) : (g.is_zero() ? QRational() : g.pow(t));
            // J_t v0 = q^{-1} gamma^t v0, J_t v1 = -q gamma^t v1
            CHECK(V.matrix(GenSymbol::Jt(1, t)).at(0, 0) == qp(-1) * gt);
            CHECK(V.matrix(GenSymbol::Jt(1, t)).at(1, 1) == -q * gt);
            CHECK(V.matrix(GenSymbol::Jt(1, t)).is_diagonal());
            if (g.is_zero() && t > 0) {
                CHECK(V.matrix(GenSymbol::X(1, 1, t)).is_zero());
                CHECK(V.matrix(GenSymbol::X(-1, 1, t)).is_zero());
            }
        }
        require_relations(V, 4);
        require_structure(V);
        HWReport hw = hw_of(V, true);
        CHECK(hw.index == 0);
        CHECK(hw.hw.nodes.at(0) == hw_from_poly(QRational(), NodePolynomial(QRational(1), {g}), 4));
        CHECK(*hw.simple);
    }
}

TEST_CASE("corrupted J_1 is detected") {
    Module V = sl2_eval_module(P("3"), 3);
    Matrix j1 = V.matrix(GenSymbol::Jt(1, 1));
    j1.add_to(1, 1, QRational(1));
    V.set_generator(GenSymbol::Jt(1, 1), j1);
    CheckReport r = verify_relations(V, 3);
    CHECK(r.families.at("Q4-3").failures > 0);
    CHECK_FALSE(r.ok());
}

TEST_CASE("gl_n fundamental modules") {
    QRational g = P("3/4*q");
    for (int n = 2; n <= 4; ++n)
        for (int i = 1; i < n; ++i) {
            GlnFundamental G = gln_fundamental(n, i, g);
            int d = static_cast<int>(G.subsets.size());
            Vec v0 = unit(d, G.highest_index);
            for (int j = 1; j <= n; ++j) {
                QRational want = j <= i ? q : QRational(1);
                CHECK(G.Tp[static_cast<size_t>(j)].at(G.highest_index, G.highest_index) == want);
            }
            for (int j = 1; j < n; ++j) {
                CHECK(is_zero(G.E[static_cast<size_t>(j)].apply(v0)));
                const Matrix& F = G.F[static_cast<size_t>(j)];
                if (j != i) CHECK(is_zero(F.apply(v0)));
                else {
                    CHECK_FALSE(is_zero(F.apply(v0)));
                    CHECK(is_zero((F * F).apply(v0)));
                }
            }
            Matrix c = G.k0p;
            for (int j = 1; j < n; ++j) c = c * G.Tp[static_cast<size_t>(j)] * G.Tm[static_cast<size_t>(j + 1)];
            CHECK(c == Matrix::identity(d));

            // affine Chevalley relations for node 0
            const Matrix& e0 = *G.e0;
            const Matrix& f0 = *G.f0;
            CHECK(e0 * f0 - f0 * e0 == qdiff().inverse() * (G.k0p - G.k0m));
            for (int j = 1; j < n; ++j) {
                const Matrix& Ej = G.E[static_cast<size_t>(j)];
                const Matrix& Fj = G.F[static_cast<size_t>(j)];
                CHECK((e0 * Fj - Fj * e0).is_zero());
                CHECK((Ej * f0 - f0 * Ej).is_zero());
                Matrix kj = G.Tp[static_cast<size_t>(j)] * G.Tm[static_cast<size_t>(j + 1)];
                Matrix kjm = G.Tm[static_cast<size_t>(j)] * G.Tp[static_cast<size_t>(j + 1)];
                int a = n == 2 ? -2 : ((j == 1) + (j == n - 1)) * -1;
                CHECK(kj * e0 * kjm == qp(a) * e0);
            }
            CHECK(G.k0p * e0 * G.k0m == qp(2) * e0);

            Module L = G.level_zero();
            require_relations(L, 0);
        }
    CHECK_THROWS_AS(gln_fundamental(3, 3, g), std::invalid_argument);
    CHECK_THROWS_AS(gln_fundamental(3, 0, g), std::invalid_argument);
    CHECK_FALSE(gln_fundamental(3, 1, QRational()).e0.has_value());
}

TEST_CASE("loop action for n = 2 is the sl2 evaluation module") {
    for (const auto& g : {P("2"), QRational(), P("q^-3/5")}) {
        Module M = solve_loop_action(2, 1, g, 4);
        Module V = sl2_eval_module(g * q, 4);
        for (int t = 0; t <= 4; ++t)
            for (auto s : {GenSymbol::X(1, 1, t), GenSymbol::X(-1, 1, t), GenSymbol::Jt(1, t)}) CHECK(M.matrix(s) == V.matrix(s));
    }
}

TEST_CASE("loop action eigenvalues for n = 3") {
    QRational g = P("5/2*q^-1");
    for (int i = 1; i <= 2; ++i) {
        Module M = solve_loop_action(3, i, g, 4);
        Vec v0 = unit(M.dim(), 0);
        QRational shifted = g * qp(-i + 2);
        for (int j = 1; j <= 2; ++j)
            for (int t = 0; t <= 4; ++t) {
                QRational want = j == i ? qp(-1) * shifted.pow(t) : QRational();
                if (t == 0) want = j == i ? qp(-1) : QRational();
                CHECK(M.matrix(GenSymbol::Jt(j, t)).apply(v0) == Vec{want, QRational(), QRational()});
                CHECK(is_zero(M.matrix(GenSymbol::X(1, j, t)).apply(v0)));
            }
        Vec f1 = M.matrix(GenSymbol::X(-1, i, 1)).apply(v0);
        Vec f0 = M.matrix(GenSymbol::X(-1, i, 0)).apply(v0);
        for (auto& x : f0) x *= shifted;
        CHECK(f1 == f0);
        require_relations(M, 3);
        require_structure(M);
    }
}

TEST_CASE("loop action for n = 4, i = 2") {
    Module M = solve_loop_action(4, 2, P("7"), 2);
    CHECK(M.dim() == 6);
    require_structure(M);
}

TEST_CASE("tensor with a Q-twisted one-dimensional module") {
    QRational Q = P("2/3*q"), beta = P("q^-1*3"), g = P("-4");
    int T = 4;
    Module M = tensor(one_dim_module({Q}, {beta}, T), sl2_eval_module(g, T));
    CHECK(M.dim() == 2);
    CHECK(M.Q() == std::vector<QRational>{Q});
    HighestWeight hw = eigen_hw(M, unit(2, 0));
    CHECK(hw.nodes.at(0) == hw_from_poly(Q, NodePolynomial(beta, {g}), T));
    require_relations(M, 4);
    require_structure(M);
}

TEST_CASE("tensor products of evaluation modules, Q = 0") {
    QRational g1 = P("2"), g2 = P("-3*q");
    Module M = tensor(sl2_eval_module(g1), sl2_eval_module(g2));
    CHECK(M.dim() == 4);
    CHECK(M.matrix(GenSymbol::K(1, 1)).at(0, 0) == q * q);
    Submodule sub = cyclic_submodule(M, unit(4, 0));
    HWReport hw = hw_of(sub.module);
    CHECK(hw.hw.nodes.at(0) == hw_from_poly(QRational(), NodePolynomial(QRational(1), {g1, g2}), 4));
    CHECK(hw.hw.nodes.at(0) ==
          combine_hw_tensor(hw_from_poly(QRational(), NodePolynomial(QRational(1), {g1}), 4),
                            hw_from_poly(QRational(), NodePolynomial(QRational(1), {g2}), 4)));
    require_relations(M, 4);
    require_structure(M);
    Module three = tensor_all({one_dim_module({QRational()}, {QRational(-1)}), sl2_eval_module(g1), sl2_eval_module(g2)});
    CHECK(three.dim() == 4);
    require_relations(three, 3);
}

TEST_CASE("X_1 from the closed coproduct formula agrees with the recursion") {
    Module A = sl2_eval_module(P("2"), 3), B = sl2_eval_module(P("1/3*q"), 3);
    Module AB = tensor(A, B);
    for (int s : {1, -1}) CHECK(AB.matrix(GenSymbol::X(s, 1, 1)) == evaluate(coproduct0(2, GenSymbol::X(s, 1, 1)), A, B));
    Module C = solve_loop_action(3, 1, P("2"), 2), D = solve_loop_action(3, 2, P("-1"), 2);
    Module CD = tensor(C, D);
    for (int i = 1; i <= 2; ++i)
        for (int s : {1, -1}) CHECK(CD.matrix(GenSymbol::X(s, i, 1)) == evaluate(coproduct0(3, GenSymbol::X(s, i, 1)), C, D));
    require_relations(CD, 2);
}

TEST_CASE("coassociativity") {
    Module a = sl2_eval_module(P("2"), 2), b = sl2_eval_module(P("q"), 2), c = sl2_eval_module(P("-1/3"), 2);
    CHECK(coassociative(a, b, c));
    Module d = one_dim_module({P("5*q")}, {P("2")}, 2);
    CHECK(coassociative(d, b, c));
    Module e = pullback_iota(sl2_eval_module(P("3"), 2), -1, {P("q^2")});
    CHECK(coassociative(e, a, c));
    Module x = one_dim_module({QRational(), P("3")}, {QRational(1), P("q")}, 2);
    Module y = solve_loop_action(3, 1, P("2"), 2), z = solve_loop_action(3, 2, P("5"), 2);
    CHECK(coassociative(x, y, z));
}

TEST_CASE("closed delta_r form on an iota_- pullback") {
    for (int n : {2, 3}) {
        std::vector<QRational> Q = n == 2 ? std::vector<QRational>{P("3*q")} : std::vector<QRational>{P("2"), QRational()};
        Module M0 = n == 2 ? sl2_eval_module(P("-2"), 2) : solve_loop_action(3, 1, P("2"), 2);
        Module N = n == 2 ? sl2_eval_module(P("q"), 2) : solve_loop_action(3, 2, P("3"), 2);
        Module MQ = pullback_iota(M0, -1, Q);
        Module T = tensor(MQ, N);
        for (const auto& g : gens(n)) CHECK(T.matrix(g) == evaluate(delta_r(Q, g), M0, N));
        require_relations(T, 2);
    }
}

TEST_CASE("pullbacks along iota are Q-modules") {
    QRational Q = P("-2/3*q");
    for (int s : {1, -1}) {
        Module P1 = pullback_iota(sl2_eval_module(P("5"), 3), s, {Q});
        require_relations(P1, 3);
        require_structure(P1);
        Module P2 = pullback_iota(tensor(sl2_eval_module(P("2")), sl2_eval_module(P("q"))), s, {Q});
        require_relations(P2, 3);
        Module P3 = pullback_iota(solve_loop_action(3, 2, P("3"), 2), s, {QRational(), Q});
        require_relations(P3, 2);
    }
    CHECK_THROWS_AS(pullback_iota(one_dim_module({Q}, {P("2")}), 1, {Q}), std::invalid_argument);
}

TEST_CASE("dagger of relations vanishes on modules") {
    std::vector<Module> mods{sl2_eval_module(P("2"), 3), tensor(one_dim_module({P("q")}, {P("3")}, 3), sl2_eval_module(P("1/2"), 3)),
                             solve_loop_action(3, 1, P("2"), 2)};
    for (const auto& M : mods) {
        int T = M.n() == 2 ? 3 : 2;
        for (const auto& [id, p] : enumerate_relations(M.Q(), T))
            CHECK(M.act_unchecked(dagger(relation_instance(id, p, M.Q()))).is_zero());
    }
}

TEST_CASE("cyclic submodules") {
    QRational g = P("2");
    Module M = tensor(sl2_eval_module(g), sl2_eval_module(g * qp(-2)));
    Submodule s = cyclic_submodule(M, unit(4, 0));
    Submodule again = cyclic_submodule(s.module, unit(s.module.dim(), 0));
    CHECK(again.module.dim() == s.module.dim());
    require_relations(s.module, 3);
    Module V = sl2_eval_module(g);
    CHECK(cyclic_submodule(V, unit(2, 0)).module.dim() == 2);
    CHECK_THROWS_AS(cyclic_submodule(M, Vec{QRational(1), QRational(1), QRational(), QRational()}), std::invalid_argument);
}

TEST_CASE("simple tops against the functional closure") {
    QRational g = P("3/2");
    std::vector<std::pair<QRational, QRational>> pairs{{g, g * qp(-2)}, {g * qp(-2), g}, {g, g * qp(2)}, {g * qp(2), g},
                                                       {g, P("5")}, {g, g}};
    for (const auto& [a, b] : pairs) {
        Module M = tensor(sl2_eval_module(a), sl2_eval_module(b));
        Submodule sub = cyclic_submodule(M, unit(4, 0));
        SimpleTop top = simple_top(sub.module, unit(sub.module.dim(), 0));
        CHECK(top.gram_symmetric);
        CHECK(top.radical_dim == radical_dim_by_functionals(sub.module, 0));
        CHECK(top.module.dim() + top.radical_dim == sub.module.dim());
        CHECK(top.simple == (top.radical_dim == 0));
        require_relations(top.module, 3);
        HWReport hw = hw_of(top.module, true);
        CHECK(*hw.simple);
        CHECK(hw.hw.nodes.at(0) == hw_from_poly(QRational(), NodePolynomial(QRational(1), {a, b}), 4));
    }
    Module gen = tensor(sl2_eval_module(g), sl2_eval_module(P("5")));
    CHECK(simple_top(gen, unit(4, 0)).module.dim() == 4);
    CHECK(simple_top(one_dim_module({QRational()}, {QRational(1)}), unit(1, 0)).module.dim() == 1);
    Module three = tensor_all({sl2_eval_module(g), sl2_eval_module(g * qp(-2)), sl2_eval_module(P("7"))});
    Submodule s3 = cyclic_submodule(three, unit(8, 0));
    SimpleTop t3 = simple_top(s3.module, unit(s3.module.dim(), 0));
    CHECK(t3.radical_dim == radical_dim_by_functionals(s3.module, 0));
    CHECK(t3.gram_symmetric);
}

TEST_CASE("non-cyclic input is rejected") {
    Module M = tensor(sl2_eval_module(P("2")), sl2_eval_module(P("2") * qp(2)));
    Submodule sub = cyclic_submodule(M, unit(4, 0));
    if (sub.module.dim() < 4) CHECK_THROWS_AS(simple_top(M, unit(4, 0)), std::invalid_argument);
}

TEST_CASE("rank one operator identities") {
    int kmax = 3;
    std::vector<Module> zero{sl2_eval_module(P("2"), 6), tensor(sl2_eval_module(P("2"), 6), sl2_eval_module(P("-1/3*q"), 6)),
                             tensor_all({sl2_eval_module(P("2"), 6), sl2_eval_module(P("q^2"), 6), sl2_eval_module(P("5"), 6)})};
    for (const auto& M : zero) {
        CheckReport r = verify_rank_one_identities(M, kmax);
        INFO((r.failures.empty() ? std::string() : r.failures.front()));
        CHECK(r.ok());
        CHECK(r.families.count("kernel X1+k X0-k+1"));
        CHECK(r.families.count("X1+k X0-k+1"));
    }
    QRational Q = P("3/5*q^-1");
    std::vector<Module> twisted{one_dim_module({Q}, {P("2")}, 6), tensor(one_dim_module({Q}, {P("-q")}, 6), sl2_eval_module(P("4"), 6)),
                                tensor_all({one_dim_module({Q}, {P("1/2")}, 6), sl2_eval_module(P("4"), 6), sl2_eval_module(P("q"), 6)}),
                                pullback_iota(sl2_eval_module(P("3"), 6), -1, {Q})};
    for (const auto& M : twisted) {
        CheckReport r = verify_rank_one_identities(M, kmax);
        INFO((r.failures.empty() ? std::string() : r.failures.front()));
        CHECK(r.ok());
        CHECK(r.families.count("JQ shift recursion"));
        CHECK(r.families.count("kernel X0+k X0-k+1"));
    }
    CHECK_THROWS_AS(verify_rank_one_identities(solve_loop_action(3, 1, P("1"), 2), 1), std::invalid_argument);
}

TEST_CASE("classification round trips") {
    QRational g = P("2/5");
    RoundtripReport r1 = classify_roundtrip({QRational()}, {NodePolynomial(QRational(1), {g})});
    CHECK(r1.ok);
    CHECK(r1.top_dim == 2);
    RoundtripReport r2 = classify_roundtrip({QRational()}, {NodePolynomial(QRational(-1), {g, P("-3*q")})});
    CHECK(r2.ok);
    CHECK(r2.top_dim == 4);
    QRational Q = P("q^2/3"), beta = P("2");
    RoundtripReport r3 = classify_roundtrip({Q}, {NodePolynomial(beta, {})});
    CHECK(r3.ok);
    CHECK(r3.top_dim == 1);
    CHECK(r3.observed.at(0).lambda == beta);
    RoundtripReport r4 = classify_roundtrip({Q}, {NodePolynomial(beta, {g})});
    CHECK(r4.ok);
    RoundtripReport r5 = classify_roundtrip({QRational(), QRational()}, {NodePolynomial(QRational(1), {g}), NodePolynomial()});
    CHECK(r5.ok);
    CHECK(r5.observed.at(1) == hw_from_poly(QRational(), NodePolynomial(), 4));
    RoundtripReport r6 = classify_roundtrip({QRational(), P("3")}, {NodePolynomial(QRational(1), {g}), NodePolynomial(P("q"), {P("5")})});
    CHECK(r6.ok);
    CHECK_THROWS_AS(classify_roundtrip({QRational()}, {NodePolynomial(P("2"), {})}), std::invalid_argument);
}
