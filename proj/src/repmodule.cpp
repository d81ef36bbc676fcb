#include "qca/repmodule.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qca {

namespace {

const QRational& qd() {
    static const QRational v = qdiff();
    return v;
}

QRational qp(int k) { return QRational::q_pow(k); }

// 0^0 = 1
QRational gpow(const QRational& g, int t) {
    if (t == 0) return QRational(1);
    if (g.is_zero()) return QRational();
    return g.pow(t);
}

Matrix mpow(const Matrix& m, int k) {
    Matrix r = Matrix::identity(m.rows());
    for (int e = 0; e < k; ++e) r = r * m;
    return r;
}

Vec unit_vec(int d, int k) {
    Vec v(static_cast<size_t>(d));
    v.at(static_cast<size_t>(k)) = QRational(1);
    return v;
}

Weight add(const Weight& a, const Weight& b, int sign = 1) {
    Weight r = a;
    for (size_t k = 0; k < r.size(); ++k) r[k] += sign * b[k];
    return r;
}

std::vector<GenSymbol> generating_symbols(int n) {
    std::vector<GenSymbol> g;
    for (int i = 1; i < n; ++i) {
        g.push_back(GenSymbol::X(1, i, 0));
        g.push_back(GenSymbol::X(-1, i, 0));
        g.push_back(GenSymbol::Jt(i, 1));
        g.push_back(GenSymbol::K(1, i));
        g.push_back(GenSymbol::K(-1, i));
    }
    return g;
}

bool all_zero(const std::vector<QRational>& Q) {
    return std::all_of(Q.begin(), Q.end(), [](const QRational& x) { return x.is_zero(); });
}

// Coordinates with respect to a list of independent vectors.
class Coordinates {
public:
    Coordinates(int dim, const std::vector<Vec>& basis) : dim_(dim), k_(static_cast<int>(basis.size())), e_(dim + k_) {
        for (int j = 0; j < k_; ++j) {
            SparseVec r = to_sparse(basis[static_cast<size_t>(j)]);
            r[dim_ + j] = QRational(1);
            e_.insert(std::move(r));
        }
    }

    Vec operator()(const Vec& w) const {
        SparseVec r = e_.reduce(to_sparse(w));
        Vec c(static_cast<size_t>(k_));
        for (const auto& [col, x] : r) {
            if (col < dim_) throw std::logic_error("vector outside the span");
            c[static_cast<size_t>(col - dim_)] = -x;
        }
        return c;
    }

private:
    int dim_, k_;
    Echelon e_;
};

Matrix restrict_to(const Matrix& A, const std::vector<Vec>& basis, const Coordinates& coords, int keep) {
    Matrix r(keep, keep);
    for (int j = 0; j < keep; ++j) {
        Vec c = coords(A.apply(basis[static_cast<size_t>(j)]));
        for (int a = 0; a < static_cast<int>(c.size()); ++a) {
            if (c[static_cast<size_t>(a)].is_zero()) continue;
            if (a >= keep) continue;
            r.set(a, j, c[static_cast<size_t>(a)]);
        }
    }
    return r;
}

Weight weight_of(const Module& M, const Vec& v) {
    std::optional<Weight> w;
    for (int k = 0; k < M.dim(); ++k) {
        if (v[static_cast<size_t>(k)].is_zero()) continue;
        const Weight& wk = M.weights[static_cast<size_t>(k)];
        if (w && *w != wk) throw std::invalid_argument("vector is not a weight vector");
        w = wk;
    }
    if (!w) throw std::invalid_argument("zero vector");
    return *w;
}

// nu - mu in the nonnegative root cone
bool dominates(const Weight& nu, const Weight& mu) {
    int n = static_cast<int>(nu.size()) + 1;
    for (int i = 1; i < n; ++i) {
        long s = 0;
        for (int j = 1; j < n; ++j)
            s += static_cast<long>(n * std::min(i, j) - i * j) * (nu[static_cast<size_t>(j - 1)] - mu[static_cast<size_t>(j - 1)]);
        if (s < 0 || s % n != 0) return false;
    }
    return true;
}

std::optional<QRational> eigenvalue(const Matrix& A, const Vec& v) {
    Vec w = A.apply(v);
    size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) throw std::invalid_argument("zero vector");
    QRational lam = w[p] / v[p];
    for (size_t k = 0; k < v.size(); ++k)
        if (w[k] != lam * v[k]) return std::nullopt;
    return lam;
}

}  // namespace

// ---------------------------------------------------------------- Module

Module::Module(std::vector<QRational> Q, int dim, int T) : Q_(std::move(Q)), dim_(dim), T_(T) {
    if (dim < 1) throw std::invalid_argument("module dimension must be positive");
    if (T < 1) throw std::invalid_argument("truncation must be positive");
    weights.assign(static_cast<size_t>(dim), Weight(Q_.size(), 0));
    for (int k = 0; k < dim; ++k) labels.push_back("v" + std::to_string(k));
    node_scalars.assign(Q_.size(), QRational(1));
}

bool Module::has_nonzero_Q() const { return !all_zero(Q_); }

bool Module::is_generating(const GenSymbol& g) {
    switch (g.kind) {
        case GenKind::Kplus:
        case GenKind::Kminus: return true;
        case GenKind::J: return g.level == 1;
        default: return g.level == 0;
    }
}

void Module::set_generator(const GenSymbol& g, Matrix m) {
    if (!is_generating(g)) throw std::invalid_argument(g.str() + " is not a generating symbol");
    if (g.node < 1 || g.node >= n()) throw std::invalid_argument("node out of range");
    if (m.rows() != dim_ || m.cols() != dim_) throw std::invalid_argument("generator matrix has wrong size");
    std::lock_guard<std::recursive_mutex> lock(*mu_);
    gens_[g] = std::move(m);
    cache_.clear();
    words_.clear();
}

const Matrix& Module::matrix(const GenSymbol& g) const {
    std::lock_guard<std::recursive_mutex> lock(*mu_);
    if (auto it = gens_.find(g); it != gens_.end()) return it->second;
    if (auto it = cache_.find(g); it != cache_.end()) return it->second;
    Matrix m = derive(g);
    return cache_.emplace(g, std::move(m)).first->second;
}

Matrix Module::derive(const GenSymbol& g) const {
    if (g.node < 1 || g.node >= n()) throw std::invalid_argument("node out of range in " + g.str());
    int i = g.node;
    const QRational& Qi = Q_[static_cast<size_t>(i - 1)];
    switch (g.kind) {
        case GenKind::Kplus:
        case GenKind::Kminus: throw std::logic_error("generator " + g.str() + " not set");
        case GenKind::J: {
            const Matrix& km = matrix(GenSymbol::K(-1, i));
            if (g.level == 0) return qd().inverse() * (Matrix::identity(dim_) - km * km);
            const Matrix& xm = matrix(GenSymbol::X(-1, i, 0));
            if (Qi.is_zero()) {
                if (g.level == 1) throw std::logic_error("generator " + g.str() + " not set");
                const Matrix& xp = matrix(GenSymbol::X(1, i, g.level));
                return km * (xp * xm - xm * xp);
            }
            const Matrix& xp = matrix(GenSymbol::X(1, i, g.level - 1));
            const Matrix& jt = matrix(GenSymbol::Jt(i, g.level - 1));
            return Qi.inverse() * (jt - km * (xp * xm - xm * xp));
        }
        case GenKind::Xplus:
        case GenKind::Xminus: {
            if (g.level == 0) throw std::logic_error("generator " + g.str() + " not set");
            int sign = g.kind == GenKind::Xplus ? 1 : -1;
            const Matrix& j1 = matrix(GenSymbol::Jt(i, 1));
            const Matrix& x = matrix(GenSymbol::X(sign, i, g.level - 1));
            return (QRational(sign) / qint(2)) * (j1 * x - x * j1);
        }
    }
    throw std::logic_error("unreachable");
}

const Matrix& Module::word_matrix(const Word& w) const {
    std::lock_guard<std::recursive_mutex> lock(*mu_);
    if (auto it = words_.find(w); it != words_.end()) return it->second;
    Matrix m;
    if (w.empty()) {
        m = Matrix::identity(dim_);
    } else if (w.size() == 1) {
        m = matrix(w[0]);
    } else {
        Word prefix(w.begin(), w.end() - 1);
        m = word_matrix(prefix) * matrix(w.back());
    }
    return words_.emplace(w, std::move(m)).first->second;
}

Matrix Module::act(const AlgebraElement& x) const {
    if (x.max_level() > T_)
        throw std::out_of_range("level " + std::to_string(x.max_level()) + " exceeds truncation " + std::to_string(T_));
    return act_unchecked(x);
}

Matrix Module::act_unchecked(const AlgebraElement& x) const {
    Matrix r(dim_, dim_);
    for (const auto& [w, c] : x.terms()) r = r + c * word_matrix(w);
    return r;
}

Vec Module::apply(const AlgebraElement& x, const Vec& v) const { return act(x).apply(v); }

std::map<Weight, std::vector<int>> Module::weight_spaces() const {
    std::map<Weight, std::vector<int>> r;
    for (int k = 0; k < dim_; ++k) r[weights[static_cast<size_t>(k)]].push_back(k);
    return r;
}

std::map<Weight, int> Module::weight_multiplicities() const {
    std::map<Weight, int> r;
    for (const auto& w : weights) ++r[w];
    return r;
}

bool Module::check_weights() const {
    for (int i = 1; i < n(); ++i) {
        Weight a = simple_root(n(), i);
        const Matrix& kp = matrix(GenSymbol::K(1, i));
        const Matrix& km = matrix(GenSymbol::K(-1, i));
        if (!kp.is_diagonal()) return false;
        for (int k = 0; k < dim_; ++k) {
            QRational want = qp(weights[static_cast<size_t>(k)][static_cast<size_t>(i - 1)]) * node_scalars[static_cast<size_t>(i - 1)];
            if (kp.at(k, k) != want) return false;
        }
        if (kp * km != Matrix::identity(dim_)) return false;
        for (int t = 0; t <= T_; ++t) {
            for (int sign : {1, -1}) {
                const Matrix& x = matrix(GenSymbol::X(sign, i, t));
                for (int r = 0; r < dim_; ++r)
                    for (const auto& [c, v] : x.row(r))
                        if (weights[static_cast<size_t>(r)] != add(weights[static_cast<size_t>(c)], a, sign)) return false;
            }
            const Matrix& j = matrix(GenSymbol::Jt(i, t));
            for (int r = 0; r < dim_; ++r)
                for (const auto& [c, v] : j.row(r))
                    if (weights[static_cast<size_t>(r)] != weights[static_cast<size_t>(c)]) return false;
        }
    }
    return true;
}

Vec Module::basis_vector(int k) const { return unit_vec(dim_, k); }

Weight simple_root(int n, int i) {
    Weight a(static_cast<size_t>(n - 1));
    for (int j = 1; j < n; ++j) a[static_cast<size_t>(j - 1)] = cartan(j, i);
    return a;
}

// ---------------------------------------------------------------- constructors

Module one_dim_module(const std::vector<QRational>& Q, const std::vector<QRational>& beta, int T) {
    if (Q.size() != beta.size()) throw std::invalid_argument("one_dim_module: Q and beta differ in length");
    Module M(Q, 1, T);
    M.labels = {"d"};
    for (size_t k = 0; k < Q.size(); ++k) {
        const QRational& b = beta[k];
        if (Q[k].is_zero() && b != QRational(1) && b != QRational(-1))
            throw std::invalid_argument("one_dim_module: beta must be +-1 where Q_i = 0");
        if (b.is_zero()) throw std::invalid_argument("one_dim_module: beta must be nonzero");
        int i = static_cast<int>(k) + 1;
        M.set_generator(GenSymbol::K(1, i), Matrix::scalar(1, b));
        M.set_generator(GenSymbol::K(-1, i), Matrix::scalar(1, b.inverse()));
        M.set_generator(GenSymbol::X(1, i, 0), Matrix(1, 1));
        M.set_generator(GenSymbol::X(-1, i, 0), Matrix(1, 1));
        QRational j1;
        if (!Q[k].is_zero()) j1 = (QRational(1) - b.pow(-2)) / qd() * Q[k].inverse();
        M.set_generator(GenSymbol::Jt(i, 1), Matrix::scalar(1, j1));
        M.node_scalars[k] = b;
    }
    return M;
}

Matrix sl2_eval_matrix(const QRational& gamma, const GenSymbol& g) {
    if (g.node != 1) throw std::invalid_argument("rank one module has node 1 only");
    Matrix e(2, 2), f(2, 2), kp(2, 2), km(2, 2);
    e.set(0, 1, QRational(1));
    f.set(1, 0, QRational(1));
    kp.set(0, 0, qp(1));
    kp.set(1, 1, qp(-1));
    km.set(0, 0, qp(-1));
    km.set(1, 1, qp(1));
    int t = g.level;
    QRational c = gpow(gamma, t) * qp(-t);
    switch (g.kind) {
        case GenKind::Kplus: return kp;
        case GenKind::Kminus: return km;
        case GenKind::Xplus: return c * (mpow(kp, t) * e);
        case GenKind::Xminus: return c * (f * mpow(kp, t));
        case GenKind::J: {
            Matrix r = (c / qd()) * (mpow(kp, t) * (Matrix::identity(2) - km * km));
            if (t > 0) r = r - (gpow(gamma, t) * (qp(t) - qp(-t))) * (mpow(kp, t - 1) * f * e);
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

Module sl2_eval_module(const QRational& gamma, int T) {
    Module M({QRational()}, 2, T);
    M.weights = {{1}, {-1}};
    for (const auto& g : generating_symbols(2)) M.set_generator(g, sl2_eval_matrix(gamma, g));
    return M;
}

GlnFundamental gln_fundamental(int n, int i, const QRational& gamma) {
    if (n < 2) throw std::invalid_argument("gln_fundamental needs n >= 2");
    if (i < 1 || i > n - 1) throw std::invalid_argument("gln_fundamental: node out of range");
    GlnFundamental G;
    G.n = n;
    G.i = i;
    G.gamma = gamma;
    std::vector<int> pick(static_cast<size_t>(i));
    std::function<void(int, int)> rec = [&](int pos, int from) {
        if (pos == i) {
            G.subsets.push_back(pick);
            return;
        }
        for (int m = from; m <= n - (i - pos) + 1; ++m) {
            pick[static_cast<size_t>(pos)] = m;
            rec(pos + 1, m + 1);
        }
    };
    rec(0, 1);
    int d = static_cast<int>(G.subsets.size());
    std::map<std::vector<int>, int> index;
    for (int k = 0; k < d; ++k) index[G.subsets[static_cast<size_t>(k)]] = k;
    auto has = [&](int k, int m) {
        const auto& s = G.subsets[static_cast<size_t>(k)];
        return std::binary_search(s.begin(), s.end(), m);
    };
    auto swap_in = [&](int k, int out, int in) {
        std::vector<int> s = G.subsets[static_cast<size_t>(k)];
        *std::find(s.begin(), s.end(), out) = in;
        std::sort(s.begin(), s.end());
        return index.at(s);
    };
    G.E.assign(static_cast<size_t>(n), Matrix(d, d));
    G.F.assign(static_cast<size_t>(n), Matrix(d, d));
    G.Tp.assign(static_cast<size_t>(n + 1), Matrix(d, d));
    G.Tm.assign(static_cast<size_t>(n + 1), Matrix(d, d));
    for (int j = 1; j < n; ++j)
        for (int k = 0; k < d; ++k) {
            if (has(k, j + 1) && !has(k, j)) G.E[static_cast<size_t>(j)].set(swap_in(k, j + 1, j), k, QRational(1));
            if (has(k, j) && !has(k, j + 1)) G.F[static_cast<size_t>(j)].set(swap_in(k, j, j + 1), k, QRational(1));
        }
    for (int j = 1; j <= n; ++j)
        for (int k = 0; k < d; ++k) {
            int e = has(k, j) ? 1 : 0;
            G.Tp[static_cast<size_t>(j)].set(k, k, qp(e));
            G.Tm[static_cast<size_t>(j)].set(k, k, qp(-e));
        }
    const auto& T1p = G.Tp[1];
    const auto& Tnp = G.Tp[static_cast<size_t>(n)];
    const auto& T1m = G.Tm[1];
    const auto& Tnm = G.Tm[static_cast<size_t>(n)];
    G.k0p = T1m * Tnp;
    G.k0m = T1p * Tnm;
    if (!gamma.is_zero()) {
        Matrix accF = G.F[1], accE = G.E[1];
        for (int m = 2; m < n; ++m) {
            const Matrix& Fm = G.F[static_cast<size_t>(m)];
            const Matrix& Em = G.E[static_cast<size_t>(m)];
            accF = Fm * accF - qp(-1) * (accF * Fm);
            accE = Em * accE - qp(-1) * (accE * Em);
        }
        G.e0 = (gamma * qp(-1)) * (T1p * Tnp * accF);
        QRational sgn(n % 2 == 0 ? 1 : -1);
        G.f0 = (sgn * gamma.inverse() * qp(n - 1)) * (T1m * Tnm * accE);
    }
    return G;
}

Module GlnFundamental::level_zero(int T) const {
    int d = static_cast<int>(subsets.size());
    Module M(std::vector<QRational>(static_cast<size_t>(n - 1)), d, T);
    for (int k = 0; k < d; ++k) {
        const auto& s = subsets[static_cast<size_t>(k)];
        std::string lab = "{";
        for (size_t m = 0; m < s.size(); ++m) lab += (m ? "," : "") + std::to_string(s[m]);
        M.labels[static_cast<size_t>(k)] = lab + "}";
        Weight w(static_cast<size_t>(n - 1));
        for (int j = 1; j < n; ++j) {
            int a = std::binary_search(s.begin(), s.end(), j) ? 1 : 0;
            int b = std::binary_search(s.begin(), s.end(), j + 1) ? 1 : 0;
            w[static_cast<size_t>(j - 1)] = a - b;
        }
        M.weights[static_cast<size_t>(k)] = w;
    }
    for (int j = 1; j < n; ++j) {
        auto sj = static_cast<size_t>(j);
        M.set_generator(GenSymbol::X(1, j, 0), E[sj]);
        M.set_generator(GenSymbol::X(-1, j, 0), F[sj]);
        M.set_generator(GenSymbol::K(1, j), Tp[sj] * Tm[sj + 1]);
        M.set_generator(GenSymbol::K(-1, j), Tm[sj] * Tp[sj + 1]);
    }
    return M;
}

Module solve_loop_action(int n, int i, const QRational& gamma, int T) {
    GlnFundamental G = gln_fundamental(n, i, gamma);
    Module base = G.level_zero(T);
    int d = base.dim();
    int v0 = G.highest_index;

    // unknown entries: J_{j,1} on weight-preserving positions, X_{j,1}^{+-} on
    // positions shifting the weight by +-alpha_j
    std::map<GenSymbol, std::vector<std::pair<int, int>>> pattern;
    std::map<GenSymbol, int> offset;
    int unknowns = 0;
    for (int j = 1; j < n; ++j) {
        Weight a = simple_root(n, j);
        for (int kind = 0; kind < 3; ++kind) {
            GenSymbol g = kind == 0 ? GenSymbol::Jt(j, 1) : GenSymbol::X(kind == 1 ? 1 : -1, j, 1);
            int sign = kind == 0 ? 0 : (kind == 1 ? 1 : -1);
            auto& pat = pattern[g];
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    if (base.weights[static_cast<size_t>(r)] == add(base.weights[static_cast<size_t>(c)], a, sign))
                        pat.emplace_back(r, c);
            offset[g] = unknowns;
            unknowns += static_cast<int>(pat.size());
        }
    }
    auto is_unknown = [&](const GenSymbol& g) { return pattern.count(g) > 0; };

    std::vector<SparseVec> rows;
    auto flush = [&](std::map<std::pair<int, int>, SparseVec>& entries) {
        for (auto& [pos, row] : entries)
            if (!row.empty()) rows.push_back(std::move(row));
        entries.clear();
    };
    auto accumulate = [&](SparseVec& row, int col, const QRational& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = row.emplace(col, v);
        if (!fresh) {
            it->second += v;
            if (it->second.is_zero()) row.erase(it);
        }
    };

    std::vector<QRational> Qz(static_cast<size_t>(n - 1));
    for (const auto& [id, p] : enumerate_relations(Qz, 1)) {
        AlgebraElement rel = relation_instance(id, p, Qz);
        bool linear = true;
        for (const auto& [w, c] : rel.terms())
            if (std::count_if(w.begin(), w.end(), is_unknown) > 1) linear = false;
        if (!linear) continue;
        std::map<std::pair<int, int>, SparseVec> entries;
        for (const auto& [w, c] : rel.terms()) {
            auto pos = std::find_if(w.begin(), w.end(), is_unknown);
            if (pos == w.end()) {
                Matrix m = c * base.word_matrix(w);
                for (int r = 0; r < d; ++r)
                    for (const auto& [col, v] : m.row(r)) accumulate(entries[{r, col}], unknowns, -v);
                continue;
            }
            Matrix A = base.word_matrix(Word(w.begin(), pos)).transpose();
            const Matrix& B = base.word_matrix(Word(pos + 1, w.end()));
            const auto& pat = pattern.at(*pos);
            int off = offset.at(*pos);
            for (size_t k = 0; k < pat.size(); ++k) {
                auto [ur, uc] = pat[k];
                for (const auto& [a, x] : A.row(ur))
                    for (const auto& [b, y] : B.row(uc)) accumulate(entries[{a, b}], off + static_cast<int>(k), c * x * y);
            }
        }
        flush(entries);
    }

    // conditions on the highest weight vector
    auto column_rows = [&](const GenSymbol& g, const Vec& target) {
        const auto& pat = pattern.at(g);
        for (int a = 0; a < d; ++a) {
            SparseVec row;
            for (size_t k = 0; k < pat.size(); ++k)
                if (pat[k].first == a && pat[k].second == v0) row[offset.at(g) + static_cast<int>(k)] = QRational(1);
            if (!target[static_cast<size_t>(a)].is_zero()) row[unknowns] = target[static_cast<size_t>(a)];
            if (!row.empty()) rows.push_back(std::move(row));
        }
    };
    QRational shifted = gamma * qp(-i + 2);
    for (int j = 1; j < n; ++j) {
        Vec jt(static_cast<size_t>(d));
        if (j == i) jt[static_cast<size_t>(v0)] = qp(-1) * shifted;
        column_rows(GenSymbol::Jt(j, 1), jt);
        column_rows(GenSymbol::X(1, j, 1), Vec(static_cast<size_t>(d)));
    }
    Vec fv = G.F[static_cast<size_t>(i)].apply(unit_vec(d, v0));
    for (auto& x : fv) x *= shifted;
    column_rows(GenSymbol::X(-1, i, 1), fv);

    LinearSolution sol = solve_augmented(rows, unknowns);
    if (sol.status == SolveStatus::NoSolution)
        throw LoopSolveError("solve_loop_action: linear system has no solution", sol.status, 0);
    if (sol.status == SolveStatus::Underdetermined)
        throw LoopSolveError("solve_loop_action: solution space has dimension " + std::to_string(sol.nullity), sol.status,
                             sol.nullity);

    auto unpack = [&](const GenSymbol& g) {
        Matrix m(d, d);
        const auto& pat = pattern.at(g);
        for (size_t k = 0; k < pat.size(); ++k)
            m.set(pat[k].first, pat[k].second, sol.x[static_cast<size_t>(offset.at(g)) + k]);
        return m;
    };
    Module M = base;
    for (int j = 1; j < n; ++j) M.set_generator(GenSymbol::Jt(j, 1), unpack(GenSymbol::Jt(j, 1)));
    for (int j = 1; j < n; ++j)
        for (int sign : {1, -1})
            if (M.matrix(GenSymbol::X(sign, j, 1)) != unpack(GenSymbol::X(sign, j, 1)))
                throw std::logic_error("solve_loop_action: derived X_1 disagrees with the solved one");
    CheckReport rep = verify_relations(M, T);
    if (!rep.ok()) throw std::logic_error("solve_loop_action: relation check failed: " + rep.failures.front());
    return M;
}

// ---------------------------------------------------------------- tensor products

Module tensor(const Module& M, const Module& N) {
    if (M.n() != N.n()) throw std::invalid_argument("tensor: rank mismatch");
    if (N.has_nonzero_Q()) throw std::invalid_argument("tensor: right factor must have Q = 0");
    int dN = N.dim();
    Module R(M.Q(), M.dim() * dN, std::min(M.T(), N.T()));
    for (int a = 0; a < M.dim(); ++a)
        for (int b = 0; b < dN; ++b) {
            auto k = static_cast<size_t>(a * dN + b);
            R.weights[k] = add(M.weights[static_cast<size_t>(a)], N.weights[static_cast<size_t>(b)]);
            R.labels[k] = M.labels[static_cast<size_t>(a)] + "," + N.labels[static_cast<size_t>(b)];
        }
    for (size_t k = 0; k < R.node_scalars.size(); ++k) R.node_scalars[k] = M.node_scalars[k] * N.node_scalars[k];
    for (const auto& g : generating_symbols(M.n())) {
        TensorElement te = delta_r_explicit(M.Q(), g);
        Matrix m(R.dim(), R.dim());
        for (const auto& [key, c] : te.terms())
            m = m + c * Matrix::kron(M.word_matrix(key.first), N.word_matrix(key.second));
        R.set_generator(g, std::move(m));
    }
    return R;
}

Module tensor_all(const std::vector<Module>& factors) {
    if (factors.empty()) throw std::invalid_argument("tensor_all: no factors");
    Module R = factors.front();
    for (size_t k = 1; k < factors.size(); ++k) R = tensor(R, factors[k]);
    return R;
}

Module pullback_iota(const Module& M0, int sign, const std::vector<QRational>& Q) {
    if (M0.has_nonzero_Q()) throw std::invalid_argument("pullback_iota: source must be a <0>-module");
    if (static_cast<int>(Q.size()) + 1 != M0.n()) throw std::invalid_argument("pullback_iota: rank mismatch");
    Module R(Q, M0.dim(), M0.T());
    R.weights = M0.weights;
    R.labels = M0.labels;
    R.node_scalars = M0.node_scalars;
    GeneratorMap io = iota(sign, Q);
    for (const auto& g : generating_symbols(M0.n())) R.set_generator(g, M0.act_unchecked(io(g)));
    return R;
}

// ---------------------------------------------------------------- submodules and quotients

Submodule cyclic_submodule(const Module& M, const Vec& v) {
    if (static_cast<int>(v.size()) != M.dim()) throw std::invalid_argument("cyclic_submodule: vector size");
    Weight w0 = weight_of(M, v);
    std::map<Weight, Echelon> spans;
    std::vector<Vec> basis;
    std::vector<Weight> bw;
    std::deque<size_t> queue;
    auto offer = [&](const Vec& x, const Weight& w) {
        auto it = spans.try_emplace(w, Echelon(M.dim())).first;
        if (!it->second.insert(x)) return;
        basis.push_back(x);
        bw.push_back(w);
        queue.push_back(basis.size() - 1);
    };
    offer(v, w0);
    auto gens = generating_symbols(M.n());
    while (!queue.empty()) {
        size_t k = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            Vec x = M.matrix(g).apply(basis[k]);
            if (is_zero(x)) continue;
            offer(x, weight_of(M, x));
        }
    }
    int k = static_cast<int>(basis.size());
    Coordinates coords(M.dim(), basis);
    Module S(M.Q(), k, M.T());
    S.weights = bw;
    S.node_scalars = M.node_scalars;
    for (int j = 0; j < k; ++j) {
        const Vec& b = basis[static_cast<size_t>(j)];
        int nz = 0, at = -1;
        for (int a = 0; a < M.dim(); ++a)
            if (!b[static_cast<size_t>(a)].is_zero()) ++nz, at = a;
        if (nz == 1) S.labels[static_cast<size_t>(j)] = M.labels[static_cast<size_t>(at)];
    }
    for (const auto& g : gens) S.set_generator(g, restrict_to(M.matrix(g), basis, coords, k));
    return {std::move(S), std::move(basis)};
}

SimpleTop simple_top(const Module& M, const Vec& v0) {
    Weight top = weight_of(M, v0);
    auto gens = generating_symbols(M.n());
    std::map<Weight, Echelon> spans;
    std::vector<Vec> vecs;
    std::vector<Word> words;
    std::vector<Weight> ws;
    std::deque<size_t> queue;
    auto offer = [&](const Vec& x, const Word& w) {
        Weight wt = weight_of(M, x);
        auto it = spans.try_emplace(wt, Echelon(M.dim())).first;
        if (!it->second.insert(x)) return;
        vecs.push_back(x);
        words.push_back(w);
        ws.push_back(wt);
        queue.push_back(vecs.size() - 1);
    };
    offer(v0, Word{});
    while (!queue.empty()) {
        size_t k = queue.front();
        queue.pop_front();
        for (const auto& g : gens) {
            Vec x = M.matrix(g).apply(vecs[k]);
            if (is_zero(x)) continue;
            Word w{g};
            w.insert(w.end(), words[k].begin(), words[k].end());
            offer(x, w);
        }
    }
    if (static_cast<int>(vecs.size()) != M.dim()) throw std::invalid_argument("simple_top: module is not cyclic on v0");
    if (spans.at(top).rank() != 1) throw std::invalid_argument("simple_top: top weight space is not one-dimensional");
    for (const auto& [w, e] : spans)
        if (w != top && !dominates(top, w)) throw std::invalid_argument("simple_top: v0 is not of highest weight");

    size_t p = 0;
    while (v0[p].is_zero()) ++p;
    auto top_coeff = [&](const Vec& x) { return x[p] / v0[p]; };

    SimpleTop out;
    std::map<Weight, std::vector<size_t>> by_weight;
    for (size_t k = 0; k < vecs.size(); ++k) by_weight[ws[k]].push_back(k);
    std::vector<Vec> radical;
    std::vector<Weight> radical_w;
    for (const auto& [w, idx] : by_weight) {
        size_t m = idx.size();
        std::vector<Vec> G(m, Vec(m));
        for (size_t a = 0; a < m; ++a) {
            AlgebraElement dag = dagger(AlgebraElement(words[idx[a]]));
            const Matrix& D = M.word_matrix(dag.terms().begin()->first);
            for (size_t b = 0; b < m; ++b) G[a][b] = top_coeff(D.apply(vecs[idx[b]]));
        }
        for (size_t a = 0; a < m; ++a)
            for (size_t b = 0; b < a; ++b)
                if (G[a][b] != G[b][a]) out.gram_symmetric = false;
        for (const auto& c : kernel(G, static_cast<int>(m))) {
            Vec r(static_cast<size_t>(M.dim()));
            for (size_t b = 0; b < m; ++b)
                if (!c[b].is_zero())
                    for (size_t e = 0; e < r.size(); ++e) r[e] += c[b] * vecs[idx[b]][e];
            radical.push_back(r);
            radical_w.push_back(w);
        }
    }
    out.radical_dim = static_cast<int>(radical.size());
    out.simple = radical.empty();

    Echelon span(M.dim());
    for (const auto& r : radical) span.insert(r);
    std::vector<Vec> comp;
    std::vector<Weight> comp_w;
    for (size_t k = 0; k < vecs.size(); ++k)
        if (span.insert(vecs[k])) {
            comp.push_back(vecs[k]);
            comp_w.push_back(ws[k]);
        }
    int keep = static_cast<int>(comp.size());
    std::vector<Vec> all = comp;
    all.insert(all.end(), radical.begin(), radical.end());
    Coordinates coords(M.dim(), all);
    Module L(M.Q(), keep, M.T());
    L.weights = comp_w;
    L.node_scalars = M.node_scalars;
    for (const auto& g : gens) L.set_generator(g, restrict_to(M.matrix(g), all, coords, keep));
    out.module = std::move(L);
    return out;
}

// ---------------------------------------------------------------- highest weights

bool killed_by_raising(const Module& M, const Vec& v) {
    for (int i = 1; i < M.n(); ++i)
        for (int t = 0; t <= M.T(); ++t)
            if (!is_zero(M.matrix(GenSymbol::X(1, i, t)).apply(v))) return false;
    return true;
}

std::vector<Vec> raising_kernel(const Module& M) {
    int d = M.dim();
    std::vector<SparseVec> rows;
    for (int i = 1; i < M.n(); ++i) {
        Echelon seen(d * d);
        for (int t = 0;; ++t) {
            const Matrix& x = M.matrix(GenSymbol::X(1, i, t));
            SparseVec flat;
            for (int r = 0; r < d; ++r)
                for (const auto& [c, v] : x.row(r)) flat[r * d + c] = v;
            if (!seen.insert(flat)) break;
            for (int r = 0; r < d; ++r)
                if (!x.row(r).empty()) rows.push_back(x.row(r));
        }
    }
    Echelon e(d);
    for (auto& r : rows) e.insert(r);
    return e.nullspace();
}

std::vector<Vec> singular_top_vectors(const Module& M) {
    auto spaces = M.weight_spaces();
    std::vector<Vec> out;
    for (const auto& [w, idx] : spaces) {
        bool maximal = true;
        for (const auto& [o, oi] : spaces)
            if (o != w && dominates(o, w)) maximal = false;
        if (!maximal) continue;
        int m = static_cast<int>(idx.size());
        std::vector<Vec> rows;
        for (int i = 1; i < M.n(); ++i)
            for (int t = 0; t <= M.T(); ++t) {
                const Matrix& x = M.matrix(GenSymbol::X(1, i, t));
                for (int r = 0; r < M.dim(); ++r) {
                    Vec row(static_cast<size_t>(m));
                    for (int c = 0; c < m; ++c) row[static_cast<size_t>(c)] = x.at(r, idx[static_cast<size_t>(c)]);
                    if (!is_zero(row)) rows.push_back(row);
                }
            }
        for (const auto& c : kernel(rows, m)) {
            Vec v(static_cast<size_t>(M.dim()));
            for (int k = 0; k < m; ++k) v[static_cast<size_t>(idx[static_cast<size_t>(k)])] = c[static_cast<size_t>(k)];
            out.push_back(v);
        }
    }
    return out;
}

HighestWeight eigen_hw(const Module& M, const Vec& v) {
    HighestWeight hw;
    for (int i = 1; i < M.n(); ++i) {
        HighestWeightNode node;
        auto lam = eigenvalue(M.matrix(GenSymbol::K(1, i)), v);
        if (!lam) throw std::invalid_argument("K_" + std::to_string(i) + "^+ does not act by a scalar");
        node.lambda = *lam;
        for (int t = 1; t <= M.T(); ++t) {
            auto u = eigenvalue(M.matrix(GenSymbol::Jt(i, t)), v);
            if (!u) throw std::invalid_argument("J_{" + std::to_string(i) + "," + std::to_string(t) + "} does not act by a scalar");
            node.u.push_back(*u);
        }
        hw.nodes.push_back(std::move(node));
    }
    return hw;
}

HWReport hw_of(const Module& M, bool check_simple) {
    auto vs = singular_top_vectors(M);
    if (vs.empty()) throw std::invalid_argument("hw_of: no highest weight vector");
    if (vs.size() > 1) throw std::invalid_argument("hw_of: highest weight vector is not unique");
    HWReport r;
    r.vector = vs.front();
    int nz = 0;
    for (int k = 0; k < M.dim(); ++k)
        if (!r.vector[static_cast<size_t>(k)].is_zero()) ++nz, r.index = k;
    if (nz != 1) r.index = -1;
    r.hw = eigen_hw(M, r.vector);
    r.dim = M.dim();
    r.multiplicities = M.weight_multiplicities();
    if (check_simple) {
        try {
            SimpleTop s = simple_top(M, r.vector);
            r.simple = s.simple;
        } catch (const std::invalid_argument&) {
            r.simple = false;
        }
    }
    return r;
}

// ---------------------------------------------------------------- verification

bool CheckReport::ok() const { return failed() == 0; }

int CheckReport::total() const {
    int s = 0;
    for (const auto& [k, c] : families) s += c.instances;
    return s;
}

int CheckReport::failed() const {
    int s = 0;
    for (const auto& [k, c] : families) s += c.failures;
    return s;
}

namespace {

void record(CheckReport& rep, const std::string& family, bool pass, const std::string& what) {
    auto& c = rep.families[family];
    ++c.instances;
    if (pass) return;
    ++c.failures;
    if (rep.failures.size() < 20) rep.failures.push_back(family + " " + what);
}

}  // namespace

CheckReport verify_relations(const Module& M, int T) {
    CheckReport rep;
    for (const auto& [id, p] : enumerate_relations(M.Q(), T)) {
        AlgebraElement rel = relation_instance(id, p, M.Q());
        record(rep, relation_name(id), M.act_unchecked(rel).is_zero(), p.str());
    }
    return rep;
}

CheckReport verify_structure(const Module& M) {
    CheckReport rep;
    record(rep, "weights", M.check_weights(), "grading");
    Matrix I = Matrix::identity(M.dim());
    for (int i = 1; i < M.n(); ++i) {
        std::string node = "i=" + std::to_string(i);
        const QRational& Qi = M.Q()[static_cast<size_t>(i - 1)];
        const Matrix& kp = M.matrix(GenSymbol::K(1, i));
        const Matrix& km = M.matrix(GenSymbol::K(-1, i));
        record(rep, "K", kp * km == I && km * kp == I, node);
        record(rep, "J0", M.matrix(GenSymbol::Jt(i, 0)) == qd().inverse() * (I - km * km), node);
        const Matrix& xm0 = M.matrix(GenSymbol::X(-1, i, 0));
        const Matrix& xp0 = M.matrix(GenSymbol::X(1, i, 0));
        for (int t = 0; t < M.T(); ++t) {
            std::string what = node + " t=" + std::to_string(t + 1);
            const Matrix& jn = M.matrix(GenSymbol::Jt(i, t + 1));
            if (Qi.is_zero()) {
                const Matrix& xp = M.matrix(GenSymbol::X(1, i, t + 1));
                const Matrix& xm = M.matrix(GenSymbol::X(-1, i, t + 1));
                record(rep, "J", jn == km * (xp * xm0 - xm0 * xp), what);
                record(rep, "J", jn == km * (xp0 * xm - xm * xp0), what + " mirrored");
            } else {
                const Matrix& xp = M.matrix(GenSymbol::X(1, i, t));
                const Matrix& xm = M.matrix(GenSymbol::X(-1, i, t));
                const Matrix& jt = M.matrix(GenSymbol::Jt(i, t));
                record(rep, "J", jn == Qi.inverse() * (jt - km * (xp * xm0 - xm0 * xp)), what);
                record(rep, "J", jn == Qi.inverse() * (jt - km * (xp0 * xm - xm * xp0)), what + " mirrored");
            }
            const Matrix& j1 = M.matrix(GenSymbol::Jt(i, 1));
            for (int sign : {1, -1}) {
                const Matrix& x = M.matrix(GenSymbol::X(sign, i, t));
                const Matrix& xn = M.matrix(GenSymbol::X(sign, i, t + 1));
                record(rep, "X", xn == (QRational(sign) / qint(2)) * (j1 * x - x * j1), what);
            }
        }
    }
    return rep;
}

namespace {

AlgebraElement Xe(int sign, int t) { return AlgebraElement(GenSymbol::X(sign, 1, t)); }
AlgebraElement Je(int t) { return AlgebraElement(GenSymbol::Jt(1, t)); }
AlgebraElement Kpe() { return AlgebraElement(GenSymbol::K(1, 1)); }
AlgebraElement Kme() { return AlgebraElement(GenSymbol::K(-1, 1)); }

AlgebraElement power(const AlgebraElement& x, int k) {
    AlgebraElement r = AlgebraElement::one();
    for (int e = 0; e < k; ++e) r = r * x;
    return r;
}

// X_t^{sign (k)}; zero for k < 0
AlgebraElement dp(int sign, int t, int k) {
    if (k < 0) return AlgebraElement();
    return qfact(k).inverse() * power(Xe(sign, t), k);
}

}  // namespace

CheckReport verify_rank_one_identities(const Module& M, int kmax) {
    if (M.n() != 2) throw std::invalid_argument("verify_rank_one_identities needs a rank one module");
    CheckReport rep;
    const QRational Q = M.Q()[0];
    const QRational inv2 = qint(2).inverse();
    const AlgebraElement Kp = Kpe(), Km = Kme(), J0 = Je(0), J1 = Je(1);
    auto exact = [&](const std::string& name, const std::string& what, const AlgebraElement& lhs, const AlgebraElement& rhs) {
        record(rep, name, M.act_unchecked(lhs - rhs).is_zero(), what);
    };
    std::vector<Vec> singular = raising_kernel(M);
    auto modulo = [&](const std::string& name, const std::string& what, const AlgebraElement& lhs, const AlgebraElement& rhs) {
        Matrix D = M.act_unchecked(lhs - rhs);
        bool pass = true;
        for (const auto& v : singular)
            if (!is_zero(D.apply(v))) pass = false;
        record(rep, name, pass, what + " on " + std::to_string(singular.size()) + " vectors");
    };

    for (int k = 0; k <= kmax; ++k)
        for (int t = 0; t <= 2; ++t) {
            std::string what = "k=" + std::to_string(k) + " t=" + std::to_string(t);
            exact("Xt+1+ Xt+k", what, Xe(1, t + 1) * dp(1, t, k),
                  (qp(k) * inv2) * (J1 * dp(1, t, k + 1) - dp(1, t, k + 1) * J1));
            exact("Xt-k Xt+1-", what, dp(-1, t, k) * Xe(-1, t + 1),
                  (-qp(k) * inv2) * (J1 * dp(-1, t, k + 1) - dp(-1, t, k + 1) * J1));
        }

    for (int k = 1; k <= kmax; ++k) {
        std::string what = "k=" + std::to_string(k);
        exact("X0+ X0-k", what, Xe(1, 0) * dp(-1, 0, k),
              dp(-1, 0, k) * Xe(1, 0) + dp(-1, 0, k - 1) * Kp * (qp(k - 1) * J0 - (qp(-k + 1) * Q) * J1) -
                  (Xe(-1, 0) - (qp(-2) * Q) * Xe(-1, 1)) * dp(-1, 0, k - 2) * Kp);
        exact("X0+k X0-", what, dp(1, 0, k) * Xe(-1, 0),
              Xe(-1, 0) * dp(1, 0, k) + Kp * (qp(k - 1) * J0 - (qp(-k + 1) * Q) * J1) * dp(1, 0, k - 1) -
                  Kp * dp(1, 0, k - 2) * (Xe(1, 0) - (qp(-2) * Q) * Xe(1, 1)));
        AlgebraElement B = dp(1, 0, k - 1) * dp(-1, 0, k);
        exact("X0+k X0-k+1", what, dp(1, 0, k) * dp(-1, 0, k + 1),
              (qp(-k) / qint(k)) * (Xe(-1, 0) * Xe(1, 0) * B) + (qp(-3) * J0 - (qp(-2 * k) * inv2 * Q) * J1) * B * Kp -
                  B * (qp(-1) * J0 - (qp(-2 * k) * inv2 * Q) * J1 - AlgebraElement(qp(-2))) * Kp -
                  qp(-k - 1) * (dp(1, 0, k - 1) * dp(-1, 0, k + 1) * Xe(1, 0)));
    }

    if (Q.is_zero()) {
        for (int k = 1; k <= kmax; ++k) {
            std::string what = "k=" + std::to_string(k);
            exact("X1+ X0-k Q=0", what, Xe(1, 1) * dp(-1, 0, k),
                  dp(-1, 0, k) * Xe(1, 1) + qp(-k + 1) * (dp(-1, 0, k - 1) * Kp * J1) -
                      qp(-2 * (k - 1)) * (dp(-1, 0, k - 2) * Xe(-1, 1) * Kp));
            exact("X1+k X0- Q=0", what, dp(1, 1, k) * Xe(-1, 0),
                  Xe(-1, 0) * dp(1, 1, k) + qp(-k + 1) * (Kp * J1 * dp(1, 1, k - 1)) -
                      qp(-2 * (k - 1)) * (Kp * Xe(1, 2) * dp(1, 1, k - 2)));
            AlgebraElement A = dp(1, 1, k - 1) * dp(-1, 0, k);
            exact("X1+k X0-k+1", what, dp(1, 1, k) * dp(-1, 0, k + 1),
                  (qp(-k) / qint(k)) * (Xe(-1, 0) * Xe(1, 1) * A) + (qp(-2 * k) * inv2) * (J1 * A - A * J1) * Kp -
                      qp(-k - 1) * (dp(1, 1, k - 1) * dp(-1, 0, k + 1) * Xe(1, 1)));
            AlgebraElement rhs;
            for (int z = 0; z <= k; ++z) {
                AlgebraElement term = Xe(-1, z) * power(Kp, k) * j_bracket_0(k - z);
                rhs += (z % 2 ? QRational(-1) : QRational(1)) * term;
            }
            modulo("kernel X1+k X0-k+1", what, dp(1, 1, k) * dp(-1, 0, k + 1), qp(-k * (k + 1)) * rhs);
        }
    } else {
        for (int k = 1; k <= kmax; ++k) {
            for (int t = 1; t < k; ++t)
                exact("JQ shift recursion", "k=" + std::to_string(k) + " t=" + std::to_string(t), j_shift(k, t, Q),
                      Km * Km * j_shift(k - 1, t - 1, Q) + (qp(-2 * k) * Q) * j_shift(k - 1, t, Q));
            AlgebraElement inner = (Q * J1 - qp(2 * k) * J0 + AlgebraElement(qp(k) * qint(k))) * j_shift(k - 1, k - 1, Q);
            for (int z = 1; z <= k - 1; ++z) {
                AlgebraElement term = (Je(z) - Q * Je(z + 1)) * j_shift(k - 1, k - z - 1, Q);
                inner += ((z - 1) % 2 ? QRational(-1) : QRational(1)) * term;
            }
            std::string what = "k=" + std::to_string(k);
            exact("JQ top coefficient", what, j_shift(k, k, Q), (qp(-k) / qint(k)) * inner);
            AlgebraElement rhs;
            for (int z = 0; z <= k; ++z) {
                AlgebraElement term = Xe(-1, z) * power(Kp, k) * j_shift(k, k - z, Q);
                rhs += ((k - z) % 2 ? QRational(-1) : QRational(1)) * term;
            }
            modulo("kernel X0+k X0-k+1", what, dp(1, 0, k) * dp(-1, 0, k + 1), rhs);
        }
    }
    return rep;
}

bool coassociative(const Module& M, const Module& N, const Module& P) {
    Module A = tensor(tensor(M, N), P);
    Module B = tensor(M, tensor(N, P));
    for (const auto& g : generating_symbols(M.n()))
        if (A.matrix(g) != B.matrix(g)) return false;
    return true;
}

// ---------------------------------------------------------------- round trip

RoundtripReport classify_roundtrip(const std::vector<QRational>& Q, const std::vector<NodePolynomial>& phi, int T) {
    if (Q.size() != phi.size()) throw std::invalid_argument("classify_roundtrip: one polynomial per node expected");
    if (Q.empty()) throw std::invalid_argument("classify_roundtrip: rank must be positive");
    int n = static_cast<int>(Q.size()) + 1;
    RoundtripReport rep;
    std::vector<QRational> beta;
    for (size_t k = 0; k < Q.size(); ++k) {
        if (!in_CxQ(Q[k], phi[k]))
            throw std::invalid_argument("classify_roundtrip: polynomial at node " + std::to_string(k + 1) + " is not canonical");
        beta.push_back(phi[k].beta);
        rep.expected.push_back(hw_from_poly(Q[k], phi[k], T));
    }
    std::vector<Module> factors{one_dim_module(Q, beta, T)};
    if (n == 2) {
        for (const auto& g : phi[0].roots) factors.push_back(sl2_eval_module(g, T));
    } else {
        for (int i = 1; i < n; ++i)
            for (const auto& g : phi[static_cast<size_t>(i - 1)].roots) factors.push_back(solve_loop_action(n, i, qp(i - 2) * g, T));
    }
    Module M = tensor_all(factors);
    rep.tensor_dim = M.dim();
    Vec v = M.basis_vector(0);
    std::ostringstream detail;
    if (n == 2) {
        Submodule sub = cyclic_submodule(M, v);
        rep.cyclic_dim = sub.module.dim();
        SimpleTop top = simple_top(sub.module, sub.module.basis_vector(0));
        rep.top_dim = top.module.dim();
        HWReport hw = hw_of(top.module);
        rep.observed = hw.hw.nodes;
        detail << "tensor " << rep.tensor_dim << ", cyclic " << rep.cyclic_dim << ", simple top " << rep.top_dim;
    } else {
        if (!killed_by_raising(M, v)) {
            rep.detail = "generator vector is not killed by X^+";
            return rep;
        }
        rep.observed = eigen_hw(M, v).nodes;
        detail << "tensor " << rep.tensor_dim;
    }
    rep.ok = rep.observed == rep.expected;
    if (!rep.ok) detail << "; highest weight mismatch";
    rep.detail = detail.str();
    return rep;
}

}  // namespace qca
