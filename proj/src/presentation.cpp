#include "qca/presentation.hpp"

#include <mutex>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace qca {

namespace {

const QRational& qd() {
    static const QRational v = qdiff();
    return v;
}

QRational qp(int k) { return QRational::q_pow(k); }

AlgebraElement X(int sign, int i, int t) { return AlgebraElement(GenSymbol::X(sign, i, t)); }
AlgebraElement Jg(int i, int t) { return AlgebraElement(GenSymbol::Jt(i, t)); }
AlgebraElement Kg(int sign, int i) { return AlgebraElement(GenSymbol::K(sign, i)); }

int rank_of(const std::vector<QRational>& Q) { return static_cast<int>(Q.size()) + 1; }

void check_node(int i, int n) {
    if (i < 1 || i > n - 1) throw std::invalid_argument("node " + std::to_string(i) + " out of range");
}

}  // namespace

GenSymbol GenSymbol::X(int sign, int i, int t) {
    if (t < 0) throw std::invalid_argument("negative level");
    return {sign > 0 ? GenKind::Xplus : GenKind::Xminus, i, t};
}

GenSymbol GenSymbol::Jt(int i, int t) {
    if (t < 0) throw std::invalid_argument("negative level");
    return {GenKind::J, i, t};
}

GenSymbol GenSymbol::K(int sign, int i) { return {sign > 0 ? GenKind::Kplus : GenKind::Kminus, i, 0}; }

std::string GenSymbol::str() const {
    std::string n = std::to_string(node), l = std::to_string(level);
    switch (kind) {
        case GenKind::Xplus: return "X+[" + n + "," + l + "]";
        case GenKind::Xminus: return "X-[" + n + "," + l + "]";
        case GenKind::J: return "J[" + n + "," + l + "]";
        case GenKind::Kplus: return "K+[" + n + "]";
        case GenKind::Kminus: return "K-[" + n + "]";
    }
    return "?";
}

GenSymbol GenSymbol::parse(const std::string& s) {
    static const std::regex re(R"(\s*(X\+|X-|J|K\+|K-)\[(\d+)(?:,(\d+))?\]\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw ParseError("bad generator symbol: " + s);
    std::string k = m[1];
    int node = std::stoi(m[2]);
    bool lv = m[3].matched;
    if ((k[0] == 'K') == lv) throw ParseError("level given iff the symbol is X or J: " + s);
    int level = lv ? std::stoi(m[3]) : 0;
    if (k == "X+") return X(1, node, level);
    if (k == "X-") return X(-1, node, level);
    if (k == "J") return Jt(node, level);
    return K(k == "K+" ? 1 : -1, node);
}

std::string word_str(const Word& w) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) s += ' ';
        s += w[k].str();
    }
    return s;
}

// ---------------------------------------------------------------- AlgebraElement

AlgebraElement::AlgebraElement(const QRational& c) {
    if (!c.is_zero()) terms_.emplace(Word{}, c);
}

AlgebraElement::AlgebraElement(const GenSymbol& g) { terms_.emplace(Word{g}, QRational(1)); }

AlgebraElement::AlgebraElement(const Word& w, const QRational& c) {
    if (!c.is_zero()) terms_.emplace(w, c);
}

int AlgebraElement::max_level() const {
    int m = 0;
    for (const auto& [w, c] : terms_)
        for (const auto& g : w) m = std::max(m, g.level);
    return m;
}

QRational AlgebraElement::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? QRational() : it->second;
}

void AlgebraElement::add_term(const Word& w, const QRational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

AlgebraElement AlgebraElement::operator-() const {
    AlgebraElement r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& b) {
    for (const auto& [w, c] : b.terms_) add_term(w, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& b) {
    for (const auto& [w, c] : b.terms_) add_term(w, -c);
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    AlgebraElement r;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            r.add_term(w, ca * cb);
        }
    return r;
}

AlgebraElement operator*(const QRational& c, const AlgebraElement& a) {
    if (c.is_zero()) return {};
    AlgebraElement r = a;
    for (auto& [w, x] : r.terms_) x *= c;
    return r;
}

std::string AlgebraElement::str() const {
    if (terms_.empty()) return "0\n";
    std::string s;
    for (const auto& [w, c] : terms_) s += c.str() + " * " + word_str(w) + "\n";
    return s;
}

// ---------------------------------------------------------------- TensorElement

TensorElement TensorElement::pure(const AlgebraElement& a, const AlgebraElement& b) { return tensor(a, b); }

TensorElement tensor(const AlgebraElement& a, const AlgebraElement& b) {
    TensorElement r;
    for (const auto& [wa, ca] : a.terms())
        for (const auto& [wb, cb] : b.terms()) r.add_term(wa, wb, ca * cb);
    return r;
}

void TensorElement::add_term(const Word& a, const Word& b, const QRational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(Key{a, b}, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

TensorElement TensorElement::operator-() const {
    TensorElement r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

TensorElement& TensorElement::operator+=(const TensorElement& b) {
    for (const auto& [k, c] : b.terms_) add_term(k.first, k.second, c);
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& b) {
    for (const auto& [k, c] : b.terms_) add_term(k.first, k.second, -c);
    return *this;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) {
    TensorElement r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_) {
            Word l = ka.first, rt = ka.second;
            l.insert(l.end(), kb.first.begin(), kb.first.end());
            rt.insert(rt.end(), kb.second.begin(), kb.second.end());
            r.add_term(l, rt, ca * cb);
        }
    return r;
}

TensorElement operator*(const QRational& c, const TensorElement& a) {
    if (c.is_zero()) return {};
    TensorElement r = a;
    for (auto& [k, x] : r.terms_) x *= c;
    return r;
}

std::string TensorElement::str() const {
    if (terms_.empty()) return "0\n";
    std::string s;
    for (const auto& [k, c] : terms_) s += c.str() + " * " + word_str(k.first) + " (x) " + word_str(k.second) + "\n";
    return s;
}

// ---------------------------------------------------------------- maps

AlgebraElement GeneratorMap::apply(const AlgebraElement& x) const {
    AlgebraElement r;
    for (const auto& [w, c] : x.terms()) {
        AlgebraElement p = AlgebraElement::one();
        for (const auto& g : w) p = p * image(g);
        r += c * p;
    }
    return r;
}

AlgebraElement qbracket(const AlgebraElement& a, const AlgebraElement& b, const QRational& v) {
    return a * b - v * (b * a);
}

AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b) { return a * b - b * a; }

AlgebraElement root_vector(int sign, int i, int j, int t) {
    if (i < 1 || j <= i) throw std::invalid_argument("root vector needs 1 <= i < j");
    QRational q = QRational::q();
    AlgebraElement acc = X(sign, j - 1, j - 1 == i ? t : 0);
    for (int m = j - 2; m >= i; --m) {
        AlgebraElement g = X(sign, m, m == i ? t : 0);
        acc = sign > 0 ? qbracket(acc, g, q) : qbracket(g, acc, q);
    }
    return acc;
}

AlgebraElement tilde_root_vector(int i, int j) {
    if (i < 1 || j <= i) throw std::invalid_argument("root vector needs 1 <= i < j");
    QRational qi = qp(-1);
    AlgebraElement acc = X(1, j - 1, 0);
    for (int m = j - 2; m >= i; --m) acc = qbracket(acc, X(1, m, 0), qi);
    return acc;
}

int cartan(int i, int j) {
    if (i == j) return 2;
    return std::abs(i - j) == 1 ? -1 : 0;
}

// ---------------------------------------------------------------- relations

std::string relation_name(RelationId id) {
    switch (id) {
        case RelationId::Q1_1: return "Q1-1";
        case RelationId::Q1_2: return "Q1-2";
        case RelationId::Q2: return "Q2";
        case RelationId::Q3: return "Q3";
        case RelationId::Q4_1: return "Q4-1";
        case RelationId::Q4_2: return "Q4-2";
        case RelationId::Q4_3: return "Q4-3";
        case RelationId::Q5_1: return "Q5-1";
        case RelationId::Q5_2: return "Q5-2";
        case RelationId::Q5_3: return "Q5-3";
        case RelationId::Q6: return "Q6";
        case RelationId::Q7: return "Q7";
        case RelationId::Q8: return "Q8";
    }
    return "?";
}

std::vector<RelationId> all_relations() {
    return {RelationId::Q1_1, RelationId::Q1_2, RelationId::Q2,   RelationId::Q3,   RelationId::Q4_1,
            RelationId::Q4_2, RelationId::Q4_3, RelationId::Q5_1, RelationId::Q5_2, RelationId::Q5_3,
            RelationId::Q6,   RelationId::Q7,   RelationId::Q8};
}

RelationId relation_from_name(const std::string& name) {
    for (RelationId id : all_relations())
        if (relation_name(id) == name) return id;
    throw ParseError("unknown relation " + name);
}

std::string RelParams::str() const {
    std::ostringstream o;
    o << "i=" << i << " j=" << j << " s=" << s << " t=" << t << " u=" << u << " variant=" << variant;
    return o.str();
}

namespace {

AlgebraElement serre(int sign, int i, int nb, int s, int t, int u) {
    AlgebraElement a = X(sign, i, s), b = X(sign, i, t), c = X(sign, nb, u);
    AlgebraElement sym = a * b + b * a;
    return c * sym + sym * c - (QRational::q() + qp(-1)) * (a * c * b + b * c * a);
}

}  // namespace

AlgebraElement relation_instance(RelationId id, const RelParams& p, const std::vector<QRational>& Q) {
    int n = rank_of(Q);
    int i = p.i, j = p.j;
    check_node(i, n);
    check_node(j, n);
    if (p.s < 0 || p.t < 0 || p.u < 0) throw std::invalid_argument("negative level in relation parameters");
    int a = cartan(i, j);
    int s = p.s, t = p.t;
    AlgebraElement one = AlgebraElement::one();
    switch (id) {
        case RelationId::Q1_1:
            if (p.variant == 0) return commutator(Kg(1, i), Kg(1, j));
            if (p.variant == 1) return commutator(Kg(1, i), Jg(j, t));
            if (p.variant == 2) return commutator(Jg(i, s), Jg(j, t));
            break;
        case RelationId::Q1_2:
            if (i != j) break;
            if (p.variant == 0) return Kg(1, i) * Kg(-1, i) - one;
            if (p.variant == 1) return Kg(-1, i) * Kg(1, i) - one;
            if (p.variant == 2) return Kg(-1, i) * Kg(-1, i) - one + qd() * Jg(i, 0);
            break;
        case RelationId::Q2:
        case RelationId::Q3: {
            int sg = id == RelationId::Q2 ? 1 : -1;
            QRational v = qp(sg * a);
            return X(sg, i, t + 1) * X(sg, j, s) - v * (X(sg, j, s) * X(sg, i, t + 1)) -
                   v * (X(sg, i, t) * X(sg, j, s + 1)) + X(sg, j, s + 1) * X(sg, i, t);
        }
        case RelationId::Q4_1:
        case RelationId::Q5_1: {
            int sg = id == RelationId::Q4_1 ? 1 : -1;
            return Kg(1, i) * X(sg, j, t) * Kg(-1, i) - qp(sg * a) * X(sg, j, t);
        }
        case RelationId::Q4_2:
        case RelationId::Q5_2: {
            int sg = id == RelationId::Q4_2 ? 1 : -1;
            int b = sg * a;
            return qp(b) * (Jg(i, 0) * X(sg, j, t)) - qp(-b) * (X(sg, j, t) * Jg(i, 0)) - qint(b) * X(sg, j, t);
        }
        case RelationId::Q4_3:
        case RelationId::Q5_3: {
            int sg = id == RelationId::Q4_3 ? 1 : -1;
            int b = sg * a;
            return commutator(Jg(i, s + 1), X(sg, j, t)) - qp(b) * (Jg(i, s) * X(sg, j, t + 1)) +
                   qp(-b) * (X(sg, j, t + 1) * Jg(i, s));
        }
        case RelationId::Q6: {
            AlgebraElement r = commutator(X(1, i, t), X(-1, j, s));
            if (i == j) {
                AlgebraElement rhs = Jg(i, s + t);
                const QRational& Qi = Q[static_cast<size_t>(i - 1)];
                if (!Qi.is_zero()) rhs -= Qi * Jg(i, s + t + 1);
                r -= Kg(1, i) * rhs;
            }
            return r;
        }
        case RelationId::Q7:
        case RelationId::Q8: {
            int sg = id == RelationId::Q7 ? 1 : -1;
            if (p.variant == 0 && std::abs(i - j) > 1) return commutator(X(sg, i, t), X(sg, j, s));
            if (p.variant == 1 && std::abs(i - j) == 1) return serre(sg, i, j, s, t, p.u);
            break;
        }
    }
    throw std::invalid_argument("parameters do not fit relation " + relation_name(id) + ": " + p.str());
}

std::vector<std::pair<RelationId, RelParams>> enumerate_relations(const std::vector<QRational>& Q, int T) {
    int n = rank_of(Q);
    std::vector<std::pair<RelationId, RelParams>> out;
    auto push = [&](RelationId id, RelParams p, int top) {
        if (top <= T && relation_instance(id, p, Q).max_level() <= T) out.emplace_back(id, p);
    };
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j) {
            RelParams b;
            b.i = i;
            b.j = j;
            b.variant = 0;
            push(RelationId::Q1_1, b, 0);
            for (int s = 0; s <= T; ++s)
                for (int t = 0; t <= T; ++t) {
                    RelParams p = b;
                    p.s = s;
                    p.t = t;
                    if (s == 0) {
                        p.variant = 1;
                        push(RelationId::Q1_1, p, t);
                    }
                    p.variant = 2;
                    push(RelationId::Q1_1, p, std::max(s, t));
                    p.variant = 0;
                    push(RelationId::Q2, p, std::max(t, s) + 1);
                    push(RelationId::Q3, p, std::max(t, s) + 1);
                    push(RelationId::Q4_3, p, std::max(t, s) + 1);
                    push(RelationId::Q5_3, p, std::max(t, s) + 1);
                    push(RelationId::Q6, p, s + t);
                    if (std::abs(i - j) > 1) {
                        push(RelationId::Q7, p, std::max(s, t));
                        push(RelationId::Q8, p, std::max(s, t));
                    }
                    if (std::abs(i - j) == 1 && s <= t) {
                        p.variant = 1;
                        for (int u = 0; u <= T; ++u) {
                            p.u = u;
                            push(RelationId::Q7, p, std::max({s, t, u}));
                            push(RelationId::Q8, p, std::max({s, t, u}));
                        }
                    }
                    if (s == 0) {
                        RelParams r = b;
                        r.t = t;
                        push(RelationId::Q4_1, r, t);
                        push(RelationId::Q4_2, r, t);
                        push(RelationId::Q5_1, r, t);
                        push(RelationId::Q5_2, r, t);
                    }
                }
        }
    for (int i = 1; i < n; ++i)
        for (int v = 0; v < 3; ++v) {
            RelParams p;
            p.i = p.j = i;
            p.variant = v;
            push(RelationId::Q1_2, p, 0);
        }
    return out;
}

// ---------------------------------------------------------------- rank-one composites

AlgebraElement j_bracket_0(int t) {
    if (t < 0) throw std::invalid_argument("negative index");
    std::vector<AlgebraElement> J(static_cast<size_t>(t + 1));
    J[0] = AlgebraElement::one();
    for (int m = 1; m <= t; ++m) {
        AlgebraElement acc;
        for (int z = 1; z <= m; ++z) {
            AlgebraElement term = Jg(1, z) * J[static_cast<size_t>(m - z)];
            if (z % 2 == 0) term = -term;
            acc += term;
        }
        J[static_cast<size_t>(m)] = (qp(m) / qint(m)) * acc;
    }
    return J[static_cast<size_t>(t)];
}

AlgebraElement j_shift(int k, int t, const QRational& Q) {
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
    if (t < 0 || t > k) throw std::invalid_argument("j_shift needs 0 <= t <= k");
    if (Q.is_zero()) throw std::invalid_argument("j_shift needs Q != 0");
    std::vector<AlgebraElement> J(static_cast<size_t>(t + 1));
    J[0] = AlgebraElement(qp(-k * (k + 1)) * Q.pow(k));
    for (int m = 1; m <= t; ++m) {
        AlgebraElement acc;
        for (int z = 1; z <= m; ++z) {
            QRational Qz = Q.pow(-z);
            AlgebraElement f = Jg(1, z) - (qp(2 * (k - m + z)) * Qz) * Jg(1, 0) +
                               AlgebraElement(qp(k - 2 * (m - z)) * qint(k) * Qz);
            AlgebraElement term = f * J[static_cast<size_t>(m - z)];
            if (z % 2 == 0) term = -term;
            acc += term;
        }
        J[static_cast<size_t>(m)] = (qp(m) / qint(m)) * acc;
    }
    return J[static_cast<size_t>(t)];
}

AlgebraElement psi_element(int i, int t, const QRational& Qi) {
    if (Qi.is_zero()) {
        if (t < 0) throw std::invalid_argument("Psi_{i,t} needs t >= 0 when Q_i = 0");
        if (t == 0) return Kg(1, i);
        return qd() * (Kg(1, i) * Jg(i, t));
    }
    if (t < -1) throw std::invalid_argument("Psi_{i,t} needs t >= -1");
    if (t == -1) return -Qi * Kg(1, i);
    if (t == 0) return Kg(1, i) - (qd() * Qi) * (Kg(1, i) * Jg(i, 1));
    return qd() * (Kg(1, i) * (Jg(i, t) - Qi * Jg(i, t + 1)));
}

// ---------------------------------------------------------------- homomorphisms

GeneratorMap iota(int sign, const std::vector<QRational>& Q) {
    GenKind moved = sign > 0 ? GenKind::Xplus : GenKind::Xminus;
    return {[Q, moved, sign](const GenSymbol& g) {
        AlgebraElement r(g);
        if (g.kind == moved && g.node >= 1 && g.node <= static_cast<int>(Q.size())) {
            const QRational& Qi = Q[static_cast<size_t>(g.node - 1)];
            if (!Qi.is_zero()) r -= Qi * X(sign, g.node, g.level + 1);
        }
        return r;
    }};
}

GeneratorMap upsilon(const std::vector<QRational>&) {
    return {[](const GenSymbol& g) {
        if (!g.has_level()) return AlgebraElement(g);
        return qp(g.level * g.node) * AlgebraElement(g);
    }};
}

AlgebraElement dagger(const AlgebraElement& x) {
    AlgebraElement r;
    for (const auto& [w, c] : x.terms()) {
        Word v(w.rbegin(), w.rend());
        for (auto& g : v) {
            if (g.kind == GenKind::Xplus)
                g.kind = GenKind::Xminus;
            else if (g.kind == GenKind::Xminus)
                g.kind = GenKind::Xplus;
        }
        r.add_term(v, c);
    }
    return r;
}

// ---------------------------------------------------------------- coproducts

namespace {

const AlgebraElement& unit() {
    static const AlgebraElement u = AlgebraElement::one();
    return u;
}

TensorElement delta_J1(int n, int i) {
    QRational q = QRational::q();
    QRational q3 = qp(3);
    TensorElement r = tensor(Jg(i, 1), unit()) + tensor(unit(), Jg(i, 1));
    r -= (qp(2) - qp(-2)) * tensor(X(1, i, 0), X(-1, i, 1));
    for (int l = i + 2; l <= n; ++l) {
        r += qd() * tensor(tilde_root_vector(i + 1, l), root_vector(-1, i + 1, l, 1));
        r += (qp(-2) * qd()) * tensor(qbracket(X(1, i, 0), tilde_root_vector(i + 1, l), q3), root_vector(-1, i, l, 1));
    }
    for (int k = 1; k < i; ++k) {
        r += (qd() * qp(k + 1 - i)) * tensor(root_vector(1, k, i, 0), root_vector(-1, k, i, 1));
        r -= (qd() * qp(k - i - 1)) *
             tensor(qbracket(X(1, i, 0), root_vector(1, k, i, 0), q3), root_vector(-1, k, i + 1, 1));
    }
    QRational qd2 = qd() * qd();
    for (int l = i + 2; l <= n; ++l)
        for (int k = 1; k < i; ++k) {
            AlgebraElement left = tilde_root_vector(i, l) * root_vector(1, k, i, 0) -
                                  tilde_root_vector(i + 1, l) * root_vector(1, k, i + 1, 0);
            r += (qd2 * qp(k - i)) * tensor(left, root_vector(-1, k, l, 1));
        }
    return r;
}

// Delta(X_{i,1}^+) without the leading 1 (x) X_{i,1}^+ term.
TensorElement delta_Xp1_tail(int n, int i) {
    QRational q = QRational::q();
    QRational qd2 = qd() * qd();
    AlgebraElement Kp = Kg(1, i), X0 = X(1, i, 0);
    TensorElement r = tensor(X(1, i, 1), Kp);
    r += qd() * tensor(X0, Kp * Jg(i, 1));
    r -= (qp(-1) * qd2) * tensor(X0 * X0, X(-1, i, 1) * Kp);
    for (int l = i + 2; l <= n; ++l) {
        r += (q * qd()) * tensor(tilde_root_vector(i, l), root_vector(-1, i + 1, l, 1) * Kp);
        r -= qd2 * tensor(X0 * tilde_root_vector(i, l), root_vector(-1, i, l, 1) * Kp);
    }
    for (int k = 1; k < i; ++k) {
        r -= (q * qd() * qp(k - i)) * tensor(root_vector(1, k, i + 1, 0), root_vector(-1, k, i, 1) * Kp);
        r -= (qd2 * qp(k - i)) * tensor(X0 * root_vector(1, k, i + 1, 0), root_vector(-1, k, i + 1, 1) * Kp);
    }
    for (int l = i + 2; l <= n; ++l)
        for (int k = 1; k < i; ++k)
            r -= (qd2 * qp(k - i)) *
                 tensor(tilde_root_vector(i, l) * root_vector(1, k, i + 1, 0), root_vector(-1, k, l, 1) * Kp);
    return r;
}

// Delta(X_{i,1}^-) without the leading X_{i,1}^- (x) 1 term.
TensorElement delta_Xm1_tail(int n, int i) {
    QRational qd2 = qd() * qd();
    AlgebraElement Kp = Kg(1, i);
    TensorElement r = tensor(Kp, X(-1, i, 1));
    for (int l = i + 2; l <= n; ++l)
        r += (qp(-1) * qd()) * tensor(tilde_root_vector(i + 1, l) * Kp, root_vector(-1, i, l, 1));
    for (int k = 1; k < i; ++k)
        r -= (qd() * qp(k - i)) * tensor(root_vector(1, k, i, 0) * Kp, root_vector(-1, k, i + 1, 1));
    for (int l = i + 2; l <= n; ++l)
        for (int k = 1; k < i; ++k)
            r -= (qd2 * qp(k - i - 1)) *
                 tensor(tilde_root_vector(i + 1, l) * root_vector(1, k, i, 0) * Kp, root_vector(-1, k, l, 1));
    return r;
}

bool explicit_supported(const GenSymbol& g) {
    switch (g.kind) {
        case GenKind::Kplus:
        case GenKind::Kminus: return true;
        case GenKind::J: return g.level == 1;
        default: return g.level <= 1;
    }
}

}  // namespace

TensorElement coproduct0(int n, const GenSymbol& g) {
    check_node(g.node, n);
    int i = g.node;
    switch (g.kind) {
        case GenKind::Kplus:
        case GenKind::Kminus: return tensor(AlgebraElement(g), AlgebraElement(g));
        case GenKind::J:
            if (g.level == 1) return delta_J1(n, i);
            break;
        case GenKind::Xplus:
            if (g.level == 0) return tensor(unit(), X(1, i, 0)) + tensor(X(1, i, 0), Kg(1, i));
            if (g.level == 1) return tensor(unit(), X(1, i, 1)) + delta_Xp1_tail(n, i);
            break;
        case GenKind::Xminus:
            if (g.level == 0) return tensor(X(-1, i, 0), unit()) + tensor(Kg(-1, i), X(-1, i, 0));
            if (g.level == 1) return tensor(X(-1, i, 1), unit()) + delta_Xm1_tail(n, i);
            break;
    }
    throw std::invalid_argument("no explicit coproduct formula for " + g.str());
}

TensorElement coproduct0_derived(int n, const GenSymbol& g) {
    check_node(g.node, n);
    static std::mutex mu;
    static std::map<std::pair<int, GenSymbol>, TensorElement> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({n, g});
        if (it != cache.end()) return it->second;
    }
    int i = g.node;
    TensorElement r;
    if (g.kind == GenKind::Kplus || g.kind == GenKind::Kminus || (g.kind == GenKind::J && g.level == 1) ||
        ((g.kind == GenKind::Xplus || g.kind == GenKind::Xminus) && g.level == 0)) {
        r = coproduct0(n, g);
    } else if (g.kind == GenKind::J && g.level == 0) {
        TensorElement km = coproduct0(n, GenSymbol::K(-1, i));
        r = qd().inverse() * (tensor(unit(), unit()) - km * km);
    } else if (g.kind == GenKind::J) {
        // J_{i,t+1} = K_i^- [X_{i,t+1}^+, X_{i,0}^-] for Q_i = 0
        TensorElement xp = coproduct0_derived(n, GenSymbol::X(1, i, g.level));
        TensorElement xm = coproduct0(n, GenSymbol::X(-1, i, 0));
        r = coproduct0(n, GenSymbol::K(-1, i)) * (xp * xm - xm * xp);
    } else {
        int sign = g.kind == GenKind::Xplus ? 1 : -1;
        TensorElement j1 = delta_J1(n, i);
        TensorElement x = coproduct0_derived(n, GenSymbol::X(sign, i, g.level - 1));
        r = (QRational(sign) / qint(2)) * (j1 * x - x * j1);
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(n, g), r);
    return r;
}

TensorElement coproduct0(int n, const AlgebraElement& x) {
    TensorElement r;
    for (const auto& [w, c] : x.terms()) {
        TensorElement p = tensor(unit(), unit());
        for (const auto& g : w) p = p * coproduct0_derived(n, g);
        r += c * p;
    }
    return r;
}

TensorElement delta_r(const std::vector<QRational>& Q, const GenSymbol& g) {
    if (!explicit_supported(g)) throw std::invalid_argument("unsupported symbol " + g.str());
    return coproduct0(rank_of(Q), iota(-1, Q)(g));
}

TensorElement delta_l(const std::vector<QRational>& Q, const GenSymbol& g) {
    if (!explicit_supported(g)) throw std::invalid_argument("unsupported symbol " + g.str());
    return coproduct0(rank_of(Q), iota(1, Q)(g));
}

TensorElement delta_r_explicit(const std::vector<QRational>& Q, const GenSymbol& g) {
    int n = rank_of(Q);
    check_node(g.node, n);
    const QRational& Qi = Q[static_cast<size_t>(g.node - 1)];
    if (g.kind == GenKind::Xminus && g.level == 0) {
        TensorElement r = coproduct0(n, g);
        if (!Qi.is_zero()) r -= Qi * delta_Xm1_tail(n, g.node);
        return r;
    }
    if (g.kind == GenKind::Xplus && g.level == 0) return coproduct0(n, g);
    if (g.kind == GenKind::Kplus || g.kind == GenKind::Kminus || (g.kind == GenKind::J && g.level == 1))
        return coproduct0(n, g);
    throw std::invalid_argument("unsupported symbol " + g.str());
}

TensorElement delta_l_explicit(const std::vector<QRational>& Q, const GenSymbol& g) {
    int n = rank_of(Q);
    check_node(g.node, n);
    const QRational& Qi = Q[static_cast<size_t>(g.node - 1)];
    if (g.kind == GenKind::Xplus && g.level == 0) {
        TensorElement r = coproduct0(n, g);
        if (!Qi.is_zero()) r -= Qi * delta_Xp1_tail(n, g.node);
        return r;
    }
    if (g.kind == GenKind::Xminus && g.level == 0) return coproduct0(n, g);
    if (g.kind == GenKind::Kplus || g.kind == GenKind::Kminus || (g.kind == GenKind::J && g.level == 1))
        return coproduct0(n, g);
    throw std::invalid_argument("unsupported symbol " + g.str());
}

}  // namespace qca
