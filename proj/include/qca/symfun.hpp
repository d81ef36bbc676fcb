#pragma once

#include "qca/omega_series.hpp"
#include "qca/qrational.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace qca {

// Weakly decreasing positive parts.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int size() const;
    int length() const { return static_cast<int>(parts_.size()); }
    int operator[](size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    std::string str() const;

    friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }
    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }

private:
    std::vector<int> parts_;
};

using VariableValues = std::vector<QRational>;

// All partitions of t with at most maxlen parts, lexicographically increasing.
const std::vector<Partition>& partitions(int t, int maxlen);

QRational monomial_sym(const Partition& lambda, const VariableValues& v);
QRational elem_sym(int t, const VariableValues& v);
// e_0..e_tmax
std::vector<QRational> elem_syms(int tmax, const VariableValues& v);

// p_t(q) through the one-variable-at-a-time recursion.
QRational q_power_sum(int t, const VariableValues& v);
// p_1(q)..p_T(q); entry 0 is unused and zero.
std::vector<QRational> q_power_sums(int T, const VariableValues& v);
// p_t(q) straight from the weighted sum over partitions.
QRational q_power_sum_def(int t, const VariableValues& v);

// (1 - beta^{-2}) / (q - q^{-1})
QRational beta_tilde(const QRational& beta);
QRational q_power_sum_shifted(int t, const QRational& Q, const QRational& beta, const VariableValues& v);
// p^<Q>_1..p^<Q>_T from precomputed p_1(q)..p_T(q); entry 0 unused.
std::vector<QRational> q_power_sums_shifted(const std::vector<QRational>& p, const QRational& Q, const QRational& beta);

// e_t = sum_lambda a_lambda p_lambda(q); p_lambda the product of p_{lambda_i}(q).
std::map<Partition, QRational> expand_elem_in_qpowersums(int t, int k);
QRational eval_qpower_product(const Partition& lambda, const std::vector<QRational>& p);

// 1 + (q - q^{-1}) sum_{t=1}^T p_t(q) omega^t
OmegaSeries gen_series_P(const VariableValues& v, int T);
// prod (1 - q^{-2} g omega) / prod (1 - g omega) expanded through omega^T
OmegaSeries gen_series_P_rational(const VariableValues& v, int T);

struct IdentityCheck {
    std::string identity;
    std::map<std::string, std::string> params;
    bool pass;
};

// Random exact values for property checks: small rationals times small
// powers of q.
class ExactSampler {
public:
    explicit ExactSampler(std::uint64_t seed) : rng_(seed) {}
    Rational small_rational(int bound = 9);
    QRational value(bool allow_zero = false);
    QRational nonzero() { return value(false); }
    VariableValues values(int k, bool allow_zero = false);
    int uniform(int lo, int hi);
    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

std::vector<IdentityCheck> identity_suite(int k, int tmax, const std::vector<std::uint64_t>& seeds);

}  // namespace qca
