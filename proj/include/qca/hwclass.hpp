#pragma once

#include "qca/omega_series.hpp"
#include "qca/symfun.hpp"

#include <vector>

namespace qca {

// beta * prod (x - gamma_p), kept factored.
struct NodePolynomial {
    QRational beta{1};
    std::vector<QRational> roots;

    NodePolynomial() = default;
    NodePolynomial(QRational b, std::vector<QRational> r);

    int degree() const { return static_cast<int>(roots.size()); }
    // coefficients of the expanded polynomial, constant term first
    std::vector<QRational> expanded() const;
    std::string str() const;
    // root multiset compared order-insensitively
    friend bool operator==(const NodePolynomial& a, const NodePolynomial& b);
    friend bool operator!=(const NodePolynomial& a, const NodePolynomial& b) { return !(a == b); }
};

// Eigenvalue package of K_i^+ and J_{i,1..T} on a highest weight vector.
struct HighestWeightNode {
    QRational lambda{1};
    std::vector<QRational> u;  // u[0] is u_1

    int order() const { return static_cast<int>(u.size()); }
    QRational u_at(int t) const { return u.at(static_cast<size_t>(t - 1)); }
    // J_{i,0} eigenvalue forced by K_i
    QRational u0() const;
    friend bool operator==(const HighestWeightNode& a, const HighestWeightNode& b) {
        return a.lambda == b.lambda && a.u == b.u;
    }
    friend bool operator!=(const HighestWeightNode& a, const HighestWeightNode& b) { return !(a == b); }
};

struct HighestWeight {
    std::vector<HighestWeightNode> nodes;
    friend bool operator==(const HighestWeight& a, const HighestWeight& b) { return a.nodes == b.nodes; }
};

using Multipartition = std::vector<Partition>;

HighestWeightNode hw_from_poly(const QRational& Q, const NodePolynomial& phi, int T);
bool in_CxQ(const QRational& Q, const NodePolynomial& phi);
NodePolynomial canonicalize(const QRational& Q, const NodePolynomial& phi);
// number of factors removed by canonicalize
int strip_count(const QRational& Q, const NodePolynomial& phi);
bool equivalent(const QRational& Q, const NodePolynomial& phi, const NodePolynomial& psi);

// phi^flat(omega) = prod (1 - gamma_p omega)
OmegaPoly flat(const NodePolynomial& phi);
OmegaSeries psi_series(const QRational& Q, const NodePolynomial& phi, int T);
// (1 - gamma_1 x) ... (1 - gamma_k x)  ->  (x - gamma_1) ... (x - gamma_k)
NodePolynomial sharp(const std::vector<QRational>& drinfeld_params);

// Highest weight of a tensor of two highest weight vectors for Q = 0.
HighestWeightNode combine_hw_tensor(const HighestWeightNode& a, const HighestWeightNode& b);
bool product_hw_check(const NodePolynomial& phi, const NodePolynomial& psi, int T);

struct WeylNode {
    int node;
    NodePolynomial phi;
    QRational Q;
    HighestWeightNode hw;
};

// Highest weight data of the Weyl module for shape nbar and multipartition
// lambda; Qhat = (Qhat_0, ..., Qhat_{r-1}).
std::vector<WeylNode> weyl_hw(const std::vector<int>& nbar, const Multipartition& lambda,
                              const std::vector<QRational>& Qhat, int T);

}  // namespace qca
