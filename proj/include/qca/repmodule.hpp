#pragma once

#include "qca/hwclass.hpp"
#include "qca/linalg.hpp"
#include "qca/presentation.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace qca {

using Weight = std::vector<int>;

// Finite-dimensional module given by matrices for X_{i,0}^{+-}, J_{i,1},
// K_i^{+-}; every other symbol is derived through the defining recursions.
// Basis vectors are weight vectors.
class Module {
public:
    Module() = default;
    Module(std::vector<QRational> Q, int dim, int T = 4);

    int n() const { return static_cast<int>(Q_.size()) + 1; }
    const std::vector<QRational>& Q() const { return Q_; }
    bool has_nonzero_Q() const;
    int dim() const { return dim_; }
    int T() const { return T_; }
    void set_T(int T) { T_ = T; }

    std::vector<std::string> labels;
    std::vector<Weight> weights;
    // K_i^+ acts on weight mu by q^{mu_i} node_scalars[i-1]
    std::vector<QRational> node_scalars;

    static bool is_generating(const GenSymbol& g);
    void set_generator(const GenSymbol& g, Matrix m);
    // derived lazily and cached; no level bound
    const Matrix& matrix(const GenSymbol& g) const;
    // matrix of a word, cached
    const Matrix& word_matrix(const Word& w) const;
    // rejects symbols above the truncation T
    Matrix act(const AlgebraElement& x) const;
    Matrix act_unchecked(const AlgebraElement& x) const;
    Vec apply(const AlgebraElement& x, const Vec& v) const;

    // basis indices grouped by weight
    std::map<Weight, std::vector<int>> weight_spaces() const;
    std::map<Weight, int> weight_multiplicities() const;
    // X_{i,t} shift weights by +-alpha_i, J and K preserve them (levels <= T)
    bool check_weights() const;

    Vec basis_vector(int k) const;

private:
    std::vector<QRational> Q_;
    int dim_ = 0;
    int T_ = 4;
    std::map<GenSymbol, Matrix> gens_;
    mutable std::map<GenSymbol, Matrix> cache_;
    mutable std::map<Word, Matrix> words_;
    mutable std::shared_ptr<std::recursive_mutex> mu_ = std::make_shared<std::recursive_mutex>();

    Matrix derive(const GenSymbol& g) const;
};

// sl-weight of alpha_i in node coordinates
Weight simple_root(int n, int i);

Module one_dim_module(const std::vector<QRational>& Q, const std::vector<QRational>& beta, int T = 4);
Module sl2_eval_module(const QRational& gamma, int T = 4);
// matrix of an arbitrary symbol by the evaluation map formulas (rank one)
Matrix sl2_eval_matrix(const QRational& gamma, const GenSymbol& g);

// V(varpi_i) for U_q(gl_n) together with the affine Chevalley images.
struct GlnFundamental {
    int n = 0, i = 0;
    QRational gamma;
    std::vector<std::vector<int>> subsets;  // basis labels, increasing
    std::vector<Matrix> E, F;                // index j = 1..n-1 (slot 0 unused)
    std::vector<Matrix> Tp, Tm;              // index j = 1..n (slot 0 unused)
    std::optional<Matrix> e0, f0;            // need gamma != 0
    Matrix k0p, k0m;
    int highest_index = 0;
    // X_{j,0}^{+-}, K_j^{+-} of the U_q^<0> module; J_{j,1} left unset
    Module level_zero(int T = 4) const;
};

GlnFundamental gln_fundamental(int n, int i, const QRational& gamma);

struct LoopSolveError : std::runtime_error {
    SolveStatus status;
    int nullity;
    LoopSolveError(const std::string& m, SolveStatus s, int k) : std::runtime_error(m), status(s), nullity(k) {}
};

Module solve_loop_action(int n, int i, const QRational& gamma, int T = 4);

// M (x) N with Delta_r^<Q> when M carries a nonzero Q_i, else Delta^<0>
Module tensor(const Module& M, const Module& N);
Module tensor_all(const std::vector<Module>& factors);

// pullback of a <0>-module along iota_{+-}^<Q>
Module pullback_iota(const Module& M0, int sign, const std::vector<QRational>& Q);

struct Submodule {
    Module module;
    std::vector<Vec> basis;  // vectors of the ambient module
};

// closure of span{v} under the generating matrices; v must be a weight vector
Submodule cyclic_submodule(const Module& M, const Vec& v);

struct SimpleTop {
    Module module;
    bool simple = false;        // radical was zero
    bool gram_symmetric = true;
    int radical_dim = 0;
};

SimpleTop simple_top(const Module& M, const Vec& v0);

struct HWReport {
    Vec vector;
    int index = -1;  // basis index when the vector is a basis vector
    HighestWeight hw;
    int dim = 0;
    std::map<Weight, int> multiplicities;
    std::optional<bool> simple;
};

// top weight vectors killed by all X^+_{i,t}, t <= T
std::vector<Vec> singular_top_vectors(const Module& M);
HWReport hw_of(const Module& M, bool check_simple = false);
// K and J eigenvalues on a given vector; throws when v is not an eigenvector
HighestWeight eigen_hw(const Module& M, const Vec& v);
bool killed_by_raising(const Module& M, const Vec& v);
// vectors killed by every X^+_{i,t}, t >= 0 (levels taken until the span stabilizes)
std::vector<Vec> raising_kernel(const Module& M);

struct FamilyCount {
    int instances = 0;
    int failures = 0;
};

struct CheckReport {
    std::map<std::string, FamilyCount> families;
    std::vector<std::string> failures;  // first few failing instances
    bool ok() const;
    int total() const;
    int failed() const;
};

CheckReport verify_relations(const Module& M, int T);
// derived cache against the recursions, weight grading
CheckReport verify_structure(const Module& M);
CheckReport verify_rank_one_identities(const Module& M, int kmax);
// generator matrices of (M N) P against M (N P)
bool coassociative(const Module& M, const Module& N, const Module& P);

struct RoundtripReport {
    bool ok = false;
    std::vector<HighestWeightNode> expected, observed;
    int tensor_dim = 0;
    int cyclic_dim = 0;
    int top_dim = 0;
    std::string detail;
};

RoundtripReport classify_roundtrip(const std::vector<QRational>& Q, const std::vector<NodePolynomial>& phi, int T = 4);

}  // namespace qca
