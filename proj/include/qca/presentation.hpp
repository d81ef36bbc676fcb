#pragma once

#include "qca/qrational.hpp"

#include <compare>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qca {

enum class GenKind { Xplus, Xminus, J, Kplus, Kminus };

struct GenSymbol {
    GenKind kind = GenKind::J;
    int node = 1;
    int level = 0;  // always 0 for K

    static GenSymbol X(int sign, int i, int t);
    static GenSymbol Jt(int i, int t);
    static GenSymbol K(int sign, int i);

    bool has_level() const { return kind == GenKind::Xplus || kind == GenKind::Xminus || kind == GenKind::J; }
    // "X+[i,t]", "X-[i,t]", "J[i,t]", "K+[i]", "K-[i]"
    std::string str() const;
    static GenSymbol parse(const std::string& s);

    friend auto operator<=>(const GenSymbol&, const GenSymbol&) = default;
    friend bool operator==(const GenSymbol&, const GenSymbol&) = default;
};

using Word = std::vector<GenSymbol>;

std::string word_str(const Word& w);

// Formal linear combination of words; no rewriting.
class AlgebraElement {
public:
    AlgebraElement() = default;
    AlgebraElement(const QRational& c);  // c times the empty word
    AlgebraElement(const GenSymbol& g);
    AlgebraElement(const Word& w, const QRational& c = QRational(1));

    static AlgebraElement one() { return AlgebraElement(QRational(1)); }

    const std::map<Word, QRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    int max_level() const;
    // coefficient of w (zero when absent)
    QRational coeff(const Word& w) const;

    void add_term(const Word& w, const QRational& c);

    AlgebraElement operator-() const;
    AlgebraElement& operator+=(const AlgebraElement& b);
    AlgebraElement& operator-=(const AlgebraElement& b);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(const QRational& c, const AlgebraElement& a);
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }

    // one "coeff * Sym ... Sym" line per word, words in lexicographic order
    std::string str() const;

private:
    std::map<Word, QRational> terms_;
};

class TensorElement {
public:
    using Key = std::pair<Word, Word>;

    TensorElement() = default;
    static TensorElement pure(const AlgebraElement& a, const AlgebraElement& b);

    const std::map<Key, QRational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    void add_term(const Word& a, const Word& b, const QRational& c);

    TensorElement operator-() const;
    TensorElement& operator+=(const TensorElement& b);
    TensorElement& operator-=(const TensorElement& b);
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
    friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
    friend TensorElement operator*(const QRational& c, const TensorElement& a);
    friend bool operator==(const TensorElement& a, const TensorElement& b) { return a.terms_ == b.terms_; }

    std::string str() const;

private:
    std::map<Key, QRational> terms_;
};

// a (x) b
TensorElement tensor(const AlgebraElement& a, const AlgebraElement& b);

// Algebra homomorphism given on symbols, extended multiplicatively.
struct GeneratorMap {
    std::function<AlgebraElement(const GenSymbol&)> image;
    AlgebraElement operator()(const GenSymbol& g) const { return image(g); }
    AlgebraElement apply(const AlgebraElement& x) const;
};

// ab - v ba
AlgebraElement qbracket(const AlgebraElement& a, const AlgebraElement& b, const QRational& v);
AlgebraElement commutator(const AlgebraElement& a, const AlgebraElement& b);

// X^sign_{alpha_{i,j}}(t); for sign = +1 the level sits on X_i, for sign = -1 as well.
AlgebraElement root_vector(int sign, int i, int j, int t = 0);
// q^{-1}-bracket version of X^+_{alpha_{i,j}}(0)
AlgebraElement tilde_root_vector(int i, int j);

// Cartan matrix of type A
int cartan(int i, int j);

enum class RelationId { Q1_1, Q1_2, Q2, Q3, Q4_1, Q4_2, Q4_3, Q5_1, Q5_2, Q5_3, Q6, Q7, Q8 };

std::string relation_name(RelationId id);
RelationId relation_from_name(const std::string& name);
std::vector<RelationId> all_relations();

// Index tuple of a relation instance. `variant` selects the sub-relation:
//   Q1-1: 0 [K_i,K_j], 1 [K_i,J_{j,t}], 2 [J_{i,s},J_{j,t}]
//   Q1-2: 0 K_i^+K_i^- - 1, 1 K_i^-K_i^+ - 1, 2 (K_i^-)^2 - 1 + (q-q^{-1})J_{i,0}
//   Q7/Q8: 0 commutator for |i-j| > 1, 1 Serre relation with neighbour j = i +- 1
struct RelParams {
    int i = 1, j = 1, s = 0, t = 0, u = 0;
    int variant = 0;
    std::string str() const;
};

// LHS - RHS. Q = (Q_1, ..., Q_{n-1}) fixes the rank.
AlgebraElement relation_instance(RelationId id, const RelParams& p, const std::vector<QRational>& Q);

// All instances whose symbols have levels <= T (Serre with s <= t).
std::vector<std::pair<RelationId, RelParams>> enumerate_relations(const std::vector<QRational>& Q, int T);

// Rank-one composites, written in J_{1,t}.
AlgebraElement j_bracket_0(int t);
AlgebraElement j_shift(int k, int t, const QRational& Q);
AlgebraElement psi_element(int i, int t, const QRational& Qi);

GeneratorMap iota(int sign, const std::vector<QRational>& Q);
GeneratorMap upsilon(const std::vector<QRational>& Q);
AlgebraElement dagger(const AlgebraElement& x);

// Coproduct on X_{i,0}^{+-}, X_{i,1}^{+-}, J_{i,1}, K_i^{+-} by the explicit formulas (rank n).
TensorElement coproduct0(int n, const GenSymbol& g);
// Coproduct of an arbitrary symbol through the defining recursions for J_{i,0},
// X_{i,t+1}^{+-} and J_{i,t+1}.
TensorElement coproduct0_derived(int n, const GenSymbol& g);
TensorElement coproduct0(int n, const AlgebraElement& x);

// Delta^<0> o iota_-(g) and Delta^<0> o iota_+(g), expanded in U^<0> (x) U^<0>.
TensorElement delta_r(const std::vector<QRational>& Q, const GenSymbol& g);
TensorElement delta_l(const std::vector<QRational>& Q, const GenSymbol& g);
// The closed forms whose Q-side leg is read in U^<Q> (left leg for delta_r,
// right leg for delta_l). Supported on X_{i,0}^{+-}, J_{i,1}, K_i^{+-}.
TensorElement delta_r_explicit(const std::vector<QRational>& Q, const GenSymbol& g);
TensorElement delta_l_explicit(const std::vector<QRational>& Q, const GenSymbol& g);

}  // namespace qca
