#include "qca/hwclass.hpp"

#include <algorithm>
#include <stdexcept>

namespace qca {

namespace {

std::vector<std::string> root_keys(const std::vector<QRational>& roots) {
    std::vector<std::string> keys;
    for (const auto& r : roots) keys.push_back(r.str());
    std::sort(keys.begin(), keys.end());
    return keys;
}

bool is_sign(const QRational& b) { return b == QRational(1) || b == QRational(-1); }

// removes one occurrence of r; false when absent
bool remove_root(std::vector<QRational>& roots, const QRational& r) {
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) return false;
    roots.erase(it);
    return true;
}

}  // namespace

NodePolynomial::NodePolynomial(QRational b, std::vector<QRational> r) : beta(std::move(b)), roots(std::move(r)) {
    if (beta.is_zero()) throw std::invalid_argument("leading coefficient must be nonzero");
}

std::vector<QRational> NodePolynomial::expanded() const {
    std::vector<QRational> c{beta};
    for (const auto& g : roots) {
        std::vector<QRational> n(c.size() + 1);
        for (size_t i = 0; i < c.size(); ++i) {
            n[i + 1] += c[i];
            n[i] -= g * c[i];
        }
        c = std::move(n);
    }
    return c;
}

std::string NodePolynomial::str() const {
    std::string s = beta.str();
    for (const auto& g : roots) s += " * (x - " + g.str() + ")";
    return s;
}

bool operator==(const NodePolynomial& a, const NodePolynomial& b) {
    return a.beta == b.beta && root_keys(a.roots) == root_keys(b.roots);
}

QRational HighestWeightNode::u0() const { return (QRational(1) - lambda.pow(-2)) / qdiff(); }

HighestWeightNode hw_from_poly(const QRational& Q, const NodePolynomial& phi, int T) {
    if (T < 1) throw std::invalid_argument("truncation must be at least 1");
    HighestWeightNode h;
    int k = phi.degree();
    h.u.assign(static_cast<size_t>(T), QRational());
    if (Q.is_zero()) {
        if (!is_sign(phi.beta)) throw std::invalid_argument("for Q = 0 the leading coefficient must be 1 or -1");
        h.lambda = phi.beta * QRational::q_pow(k);
        if (k > 0) {
            auto p = q_power_sums(T, phi.roots);
            for (int t = 1; t <= T; ++t) h.u[static_cast<size_t>(t - 1)] = p[static_cast<size_t>(t)];
        }
        return h;
    }
    h.lambda = phi.beta * QRational::q_pow(k);
    if (k == 0) {
        QRational bt = beta_tilde(phi.beta), Qinv = Q.inverse();
        for (int t = 1; t <= T; ++t) h.u[static_cast<size_t>(t - 1)] = bt * Qinv.pow(t);
        return h;
    }
    auto pQ = q_power_sums_shifted(q_power_sums(T, phi.roots), Q, phi.beta);
    for (int t = 1; t <= T; ++t) h.u[static_cast<size_t>(t - 1)] = pQ[static_cast<size_t>(t)];
    return h;
}

bool in_CxQ(const QRational& Q, const NodePolynomial& phi) {
    if (Q.is_zero()) return is_sign(phi.beta);
    QRational r = phi.beta.pow(-2) * Q.inverse();
    return std::find(phi.roots.begin(), phi.roots.end(), r) == phi.roots.end();
}

NodePolynomial canonicalize(const QRational& Q, const NodePolynomial& phi) {
    if (Q.is_zero()) {
        if (!is_sign(phi.beta)) throw std::invalid_argument("for Q = 0 the leading coefficient must be 1 or -1");
        return phi;
    }
    NodePolynomial cur = phi;
    QRational Qinv = Q.inverse();
    // phi = q^{-1} phi' (x - beta_phi^{-2} Q^{-1}) with beta_phi' = q beta_phi
    while (remove_root(cur.roots, cur.beta.pow(-2) * Qinv)) cur.beta *= QRational::q();
    return cur;
}

int strip_count(const QRational& Q, const NodePolynomial& phi) {
    return phi.degree() - canonicalize(Q, phi).degree();
}

bool equivalent(const QRational& Q, const NodePolynomial& phi, const NodePolynomial& psi) {
    if (Q.is_zero()) {
        // u^<0> sees lambda = beta q^deg and the multiset of nonzero roots
        if (phi.beta * QRational::q_pow(phi.degree()) != psi.beta * QRational::q_pow(psi.degree())) return false;
        std::vector<QRational> a, b;
        for (const auto& r : phi.roots)
            if (!r.is_zero()) a.push_back(r);
        for (const auto& r : psi.roots)
            if (!r.is_zero()) b.push_back(r);
        return root_keys(a) == root_keys(b);
    }
    const NodePolynomial& big = phi.degree() >= psi.degree() ? phi : psi;
    const NodePolynomial& small = phi.degree() >= psi.degree() ? psi : phi;
    int d = big.degree() - small.degree();
    // big = q^{-d} small prod_{z=1}^{d} (x - q^{-2(z-1)} beta_big^{-2} Q^{-1})
    if (big.beta != QRational::q_pow(-d) * small.beta) return false;
    std::vector<QRational> expect = small.roots;
    QRational base = big.beta.pow(-2) * Q.inverse();
    for (int z = 1; z <= d; ++z) expect.push_back(QRational::q_pow(-2 * (z - 1)) * base);
    return root_keys(expect) == root_keys(big.roots);
}

OmegaPoly flat(const NodePolynomial& phi) {
    OmegaPoly f = OmegaPoly::constant(QRational(1));
    for (const auto& g : phi.roots) f = f * OmegaPoly::one_minus(g);
    return f;
}

OmegaSeries psi_series(const QRational& Q, const NodePolynomial& phi, int T) {
    if (!in_CxQ(Q, phi)) throw std::invalid_argument("psi series needs a polynomial in the canonical set");
    OmegaPoly num = OmegaPoly::constant(QRational::q_pow(phi.degree()));
    QRational qm2 = QRational::q_pow(-2);
    for (const auto& g : phi.roots) num = num * OmegaPoly::one_minus(qm2 * g);
    if (Q.is_zero()) {
        num = num * OmegaPoly::constant(phi.beta);
    } else {
        // (beta^{-1} - Q beta omega^{-1})
        num = num * OmegaPoly{-1, {-Q * phi.beta, phi.beta.inverse()}};
    }
    return series_expand(num, flat(phi), T);
}

NodePolynomial sharp(const std::vector<QRational>& drinfeld_params) {
    for (const auto& g : drinfeld_params)
        if (g.is_zero()) throw std::invalid_argument("Drinfeld polynomial factors need nonzero parameters");
    return NodePolynomial(QRational(1), drinfeld_params);
}

HighestWeightNode combine_hw_tensor(const HighestWeightNode& a, const HighestWeightNode& b) {
    int T = std::min(a.order(), b.order());
    HighestWeightNode h;
    h.lambda = a.lambda * b.lambda;
    h.u.resize(static_cast<size_t>(T));
    QRational qd = qdiff();
    for (int t = 1; t <= T; ++t) {
        QRational mid;
        for (int z = 1; z < t; ++z) mid += a.u_at(z) * b.u_at(t - z);
        h.u[static_cast<size_t>(t - 1)] = a.u_at(t) + b.u_at(t) + qd * mid;
    }
    return h;
}

bool product_hw_check(const NodePolynomial& phi, const NodePolynomial& psi, int T) {
    NodePolynomial prod(phi.beta * psi.beta, phi.roots);
    prod.roots.insert(prod.roots.end(), psi.roots.begin(), psi.roots.end());
    QRational zero;
    return hw_from_poly(zero, prod, T) == combine_hw_tensor(hw_from_poly(zero, phi, T), hw_from_poly(zero, psi, T));
}

std::vector<WeylNode> weyl_hw(const std::vector<int>& nbar, const Multipartition& lambda,
                              const std::vector<QRational>& Qhat, int T) {
    size_t r = nbar.size();
    if (r == 0) throw std::invalid_argument("empty shape vector");
    if (lambda.size() != r) throw std::invalid_argument("multipartition must have one component per shape entry");
    if (Qhat.size() != r) throw std::invalid_argument("need parameters Qhat_0..Qhat_{r-1}");
    for (size_t k = 0; k < r; ++k) {
        if (nbar[k] < 1) throw std::invalid_argument("shape entries must be positive");
        if (lambda[k].length() > nbar[k]) throw std::invalid_argument("partition longer than its shape entry");
    }
    for (size_t k = 1; k < r; ++k)
        if (Qhat[k].is_zero()) throw std::invalid_argument("Qhat_k must be nonzero for 1 <= k <= r-1");
    int n = 0;
    for (int nk : nbar) n += nk;

    std::vector<WeylNode> out;
    int offset = 0;
    for (size_t k = 0; k < r; ++k) {
        // k is zero based
        const Partition& lk = lambda[k];
        int nk = nbar[k];
        for (int j = 1; j <= nk; ++j) {
            int i = offset + j;
            if (i >= n) break;
            WeylNode w;
            w.node = i;
            int lj = lk[static_cast<size_t>(j - 1)];
            if (j < nk) {
                int cnt = lj - lk[static_cast<size_t>(j)];
                for (int p = 1; p <= cnt; ++p)
                    w.phi.roots.push_back(QRational::q_pow(i - 2 * j + 2 * lj - 2 * (p - 1)) * Qhat[k]);
                w.Q = QRational();
            } else {
                int l1next = lambda[k + 1][0];
                w.phi.beta = QRational::q_pow(-l1next);
                for (int p = 1; p <= lj; ++p)
                    w.phi.roots.push_back(QRational::q_pow(i - 2 * nk + 2 * lj - 2 * (p - 1)) * Qhat[k]);
                w.Q = QRational::q_pow(-i) * Qhat[k + 1].inverse();
            }
            w.hw = hw_from_poly(w.Q, w.phi, T);
            out.push_back(std::move(w));
        }
        offset += nk;
    }
    return out;
}

}  // namespace qca
