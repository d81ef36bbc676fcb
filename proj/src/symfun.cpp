#include "qca/symfun.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <stdexcept>

namespace qca {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    }
}

int Partition::size() const {
    int s = 0;
    for (int p : parts_) s += p;
    return s;
}

std::string Partition::str() const {
    std::string s = "(";
    for (size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + ")";
}

namespace {

void gen_partitions(int rest, int maxpart, int maxlen, std::vector<int>& cur, std::vector<Partition>& out) {
    if (rest == 0) {
        out.emplace_back(cur);
        return;
    }
    if (static_cast<int>(cur.size()) == maxlen) return;
    for (int p = 1; p <= std::min(rest, maxpart); ++p) {
        cur.push_back(p);
        gen_partitions(rest - p, p, maxlen, cur, out);
        cur.pop_back();
    }
}

std::vector<QRational> powers(const QRational& x, int n) {
    std::vector<QRational> r(static_cast<size_t>(n + 1));
    r[0] = QRational(1);
    for (int i = 1; i <= n; ++i) r[static_cast<size_t>(i)] = r[static_cast<size_t>(i - 1)] * x;
    return r;
}

}  // namespace

const std::vector<Partition>& partitions(int t, int maxlen) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<Partition>> cache;
    if (t < 0) throw std::invalid_argument("partitions of a negative integer");
    maxlen = std::min(maxlen, t);
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(t, maxlen);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<Partition> out;
    std::vector<int> cur;
    gen_partitions(t, t, maxlen, cur, out);
    std::sort(out.begin(), out.end());
    return cache.emplace(key, std::move(out)).first->second;
}

namespace {

// m_lambda from precomputed powers pw[p][e] = x_p^e
QRational monomial_from_powers(const Partition& lambda, const std::vector<std::vector<QRational>>& pw) {
    int k = static_cast<int>(pw.size());
    // distinct exponents (zero included) with multiplicities
    std::map<int, int> mult;
    for (int i = 0; i < k; ++i) ++mult[lambda[static_cast<size_t>(i)]];
    std::vector<int> values;
    std::vector<int> counts;
    for (const auto& [e, c] : mult) {
        values.push_back(e);
        counts.push_back(c);
    }
    // m(rest) = sum over distinct arrangements of the multiset `rest` on the
    // trailing variables; the variable index is k minus the size of rest
    std::map<std::vector<int>, QRational> memo;
    std::function<QRational(std::vector<int>&, int)> rec = [&](std::vector<int>& rest, int p) -> QRational {
        if (p == k) return QRational(1);
        auto it = memo.find(rest);
        if (it != memo.end()) return it->second;
        QRational sum;
        for (size_t a = 0; a < rest.size(); ++a) {
            if (rest[a] == 0) continue;
            --rest[a];
            QRational tail = rec(rest, p + 1);
            ++rest[a];
            if (tail.is_zero()) continue;
            int e = values[a];
            sum += e ? pw[static_cast<size_t>(p)][static_cast<size_t>(e)] * tail : tail;
        }
        memo.emplace(rest, sum);
        return sum;
    };
    return rec(counts, 0);
}

std::vector<std::vector<QRational>> power_table(const VariableValues& v, int top) {
    std::vector<std::vector<QRational>> pw;
    for (const auto& x : v) pw.push_back(powers(x, top));
    return pw;
}

}  // namespace

QRational monomial_sym(const Partition& lambda, const VariableValues& v) {
    if (lambda.length() > static_cast<int>(v.size())) throw std::invalid_argument("partition longer than the number of variables");
    return monomial_from_powers(lambda, power_table(v, lambda.length() ? lambda[0] : 0));
}

std::vector<QRational> elem_syms(int tmax, const VariableValues& v) {
    std::vector<QRational> e(static_cast<size_t>(std::max(tmax, 0) + 1));
    e[0] = QRational(1);
    for (const auto& x : v) {
        for (int t = tmax; t >= 1; --t) e[static_cast<size_t>(t)] += e[static_cast<size_t>(t - 1)] * x;
    }
    return e;
}

QRational elem_sym(int t, const VariableValues& v) {
    if (t < 0) throw std::invalid_argument("negative degree");
    if (t > static_cast<int>(v.size())) return {};
    return elem_syms(t, v)[static_cast<size_t>(t)];
}

std::vector<QRational> q_power_sums(int T, const VariableValues& v) {
    if (v.empty()) throw std::invalid_argument("q-power sum needs at least one variable");
    QRational qinv = QRational::q_pow(-1);
    QRational c = qinv * qdiff();
    std::vector<QRational> p(static_cast<size_t>(T + 1));
    for (const auto& x : v) {
        std::vector<QRational> xp = powers(x, T);
        std::vector<QRational> np(p.size());
        for (int t = 1; t <= T; ++t) {
            QRational acc = p[static_cast<size_t>(t)] + qinv * xp[static_cast<size_t>(t)];
            QRational mid;
            for (int z = 1; z < t; ++z) mid += p[static_cast<size_t>(z)] * xp[static_cast<size_t>(t - z)];
            np[static_cast<size_t>(t)] = acc + c * mid;
        }
        p = std::move(np);
    }
    return p;
}

QRational q_power_sum(int t, const VariableValues& v) {
    if (t <= 0) throw std::invalid_argument("q-power sum needs t > 0");
    return q_power_sums(t, v)[static_cast<size_t>(t)];
}

QRational q_power_sum_def(int t, const VariableValues& v) {
    if (t <= 0) throw std::invalid_argument("q-power sum needs t > 0");
    QRational sum;
    QRational qd = qdiff();
    auto pw = power_table(v, t);
    for (const auto& lam : partitions(t, static_cast<int>(v.size()))) {
        int l = lam.length();
        sum += QRational::q_pow(-l) * qd.pow(l - 1) * monomial_from_powers(lam, pw);
    }
    return sum;
}

QRational beta_tilde(const QRational& beta) {
    if (beta.is_zero()) throw std::invalid_argument("beta must be nonzero");
    return (QRational(1) - beta.pow(-2)) / qdiff();
}

std::vector<QRational> q_power_sums_shifted(const std::vector<QRational>& p, const QRational& Q, const QRational& beta) {
    if (Q.is_zero()) throw std::invalid_argument("shifted q-power sum needs Q != 0");
    QRational bt = beta_tilde(beta);
    QRational Qinv = Q.inverse();
    int T = static_cast<int>(p.size()) - 1;
    std::vector<QRational> out(p.size());
    std::vector<QRational> qpow = powers(Qinv, T);
    QRational qd = qdiff();
    for (int t = 1; t <= T; ++t) {
        QRational mid;
        for (int z = 1; z < t; ++z) mid += qpow[static_cast<size_t>(t - z)] * p[static_cast<size_t>(z)];
        out[static_cast<size_t>(t)] = p[static_cast<size_t>(t)] + bt * qpow[static_cast<size_t>(t)] + qd * bt * mid;
    }
    return out;
}

QRational q_power_sum_shifted(int t, const QRational& Q, const QRational& beta, const VariableValues& v) {
    if (Q.is_zero()) throw std::invalid_argument("shifted q-power sum needs Q != 0");
    if (beta.is_zero()) throw std::invalid_argument("shifted q-power sum needs beta != 0");
    if (t <= 0) throw std::invalid_argument("q-power sum needs t > 0");
    return q_power_sums_shifted(q_power_sums(t, v), Q, beta)[static_cast<size_t>(t)];
}

namespace {

using PExpansion = std::map<Partition, QRational>;

Partition merge(const Partition& a, int part) {
    std::vector<int> v = a.parts();
    v.push_back(part);
    std::sort(v.rbegin(), v.rend());
    return Partition(v);
}

}  // namespace

std::map<Partition, QRational> expand_elem_in_qpowersums(int t, int k) {
    if (t < 1) throw std::invalid_argument("elementary expansion needs t >= 1");
    if (t > k) throw std::invalid_argument("elementary expansion needs t <= k");
    // e_s = c_s^{-1} (p_s - sum_{z=1}^{s-1} (-1)^{s+z-1} p_z e_{s-z}), c_s = (-1)^{s-1} q^{-s} [s]
    std::vector<PExpansion> e(static_cast<size_t>(t + 1));
    e[0][Partition()] = QRational(1);
    for (int s = 1; s <= t; ++s) {
        PExpansion acc;
        acc[Partition({s})] += QRational(1);
        for (int z = 1; z < s; ++z) {
            QRational sign((s + z - 1) % 2 == 0 ? 1 : -1);
            for (const auto& [lam, c] : e[static_cast<size_t>(s - z)]) acc[merge(lam, z)] -= sign * c;
        }
        QRational cs = QRational(s % 2 == 1 ? 1 : -1) * QRational::q_pow(-s) * qint(s);
        QRational inv = cs.inverse();
        PExpansion out;
        for (auto& [lam, c] : acc)
            if (!c.is_zero()) out[lam] = c * inv;
        e[static_cast<size_t>(s)] = std::move(out);
    }
    return e[static_cast<size_t>(t)];
}

QRational eval_qpower_product(const Partition& lambda, const std::vector<QRational>& p) {
    QRational r(1);
    for (int part : lambda.parts()) r *= p.at(static_cast<size_t>(part));
    return r;
}

OmegaSeries gen_series_P(const VariableValues& v, int T) {
    if (T < 0) throw std::invalid_argument("negative truncation order");
    OmegaSeries s = OmegaSeries::constant(QRational(1), T);
    if (v.empty() || T == 0) return s;
    std::vector<QRational> p = q_power_sums(T, v);
    QRational qd = qdiff();
    for (int t = 1; t <= T; ++t) s.set(t, qd * p[static_cast<size_t>(t)]);
    return s;
}

OmegaSeries gen_series_P_rational(const VariableValues& v, int T) {
    OmegaPoly num = OmegaPoly::constant(QRational(1)), den = OmegaPoly::constant(QRational(1));
    QRational qm2 = QRational::q_pow(-2);
    for (const auto& g : v) {
        num = num * OmegaPoly::one_minus(qm2 * g);
        den = den * OmegaPoly::one_minus(g);
    }
    return series_expand(num, den, T);
}

Rational ExactSampler::small_rational(int bound) {
    std::uniform_int_distribution<int> nd(-bound, bound), dd(1, bound);
    int n = 0;
    while (n == 0) n = nd(rng_);
    Rational r(n, dd(rng_));
    r.canonicalize();
    return r;
}

int ExactSampler::uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

QRational ExactSampler::value(bool allow_zero) {
    if (allow_zero && uniform(0, 9) == 0) return {};
    return QRational(small_rational()) * QRational::q_pow(uniform(-2, 2));
}

VariableValues ExactSampler::values(int k, bool allow_zero) {
    VariableValues v;
    for (int i = 0; i < k; ++i) v.push_back(value(allow_zero));
    return v;
}

namespace {

// p_t(q) of the first m variables by the raw definition; zero for m = 0.
QRational p_raw(int t, const VariableValues& v, size_t m) {
    if (m == 0) return {};
    return q_power_sum_def(t, VariableValues(v.begin(), v.begin() + static_cast<long>(m)));
}

QRational sgn(int e) { return QRational(e % 2 == 0 ? 1 : -1); }

}  // namespace

std::vector<IdentityCheck> identity_suite(int k, int tmax, const std::vector<std::uint64_t>& seeds) {
    if (k < 1 || tmax < 1) throw std::invalid_argument("identity suite needs k >= 1 and tmax >= 1");
    std::vector<IdentityCheck> out;
    QRational qd = qdiff();
    for (auto seed : seeds) {
        ExactSampler rs(seed * 7919 + static_cast<std::uint64_t>(k));
        VariableValues v = rs.values(k, true);
        QRational Q = rs.nonzero(), beta = rs.nonzero();
        int top = tmax + k;
        std::vector<QRational> p(static_cast<size_t>(top + 1)), pm(static_cast<size_t>(top + 1));
        for (int t = 1; t <= top; ++t) {
            p[static_cast<size_t>(t)] = p_raw(t, v, v.size());
            pm[static_cast<size_t>(t)] = p_raw(t, v, v.size() - 1);
        }
        std::vector<QRational> e = elem_syms(top, v);
        QRational bt = beta_tilde(beta);
        QRational Qinv = Q.inverse();
        // p^<Q> from its definition
        std::vector<QRational> pQ(static_cast<size_t>(top + 1));
        for (int t = 1; t <= top; ++t) {
            QRational mid;
            for (int z = 1; z < t; ++z) mid += bt * Qinv.pow(t - z) * p[static_cast<size_t>(z)];
            pQ[static_cast<size_t>(t)] = p[static_cast<size_t>(t)] + bt * Qinv.pow(t) + qd * mid;
        }
        pQ[0] = (QRational(1) - (beta * QRational::q_pow(k)).pow(-2)) / qd;

        auto record = [&](const std::string& name, int bad) {
            std::map<std::string, std::string> params{{"k", std::to_string(k)}, {"tmax", std::to_string(tmax)},
                                                      {"seed", std::to_string(seed)}};
            if (bad) params["first_failing_t"] = std::to_string(bad);
            out.push_back({name, params, bad == 0});
        };

        int bad = 0;
        const QRational& xk = v.back();
        for (int t = 1; t <= tmax && !bad; ++t) {
            QRational rhs = pm[static_cast<size_t>(t)] + QRational::q_pow(-1) * xk.pow(t);
            QRational mid;
            for (int z = 1; z < t; ++z) mid += pm[static_cast<size_t>(z)] * xk.pow(t - z);
            rhs += QRational::q_pow(-1) * qd * mid;
            if (rhs != p[static_cast<size_t>(t)]) bad = t;
        }
        record("ptq(i)", bad);

        bad = 0;
        for (int t = 1; t <= tmax && !bad; ++t) {
            QRational rhs = sgn(t - 1) * QRational::q_pow(-t) * qint(t) * e[static_cast<size_t>(t)];
            for (int z = 1; z < t; ++z) rhs += sgn(t + z - 1) * p[static_cast<size_t>(z)] * e[static_cast<size_t>(t - z)];
            if (rhs != p[static_cast<size_t>(t)]) bad = t;
        }
        record("ptq(ii)", bad);

        bad = 0;
        for (int t = 1; t <= tmax && !bad; ++t) {
            QRational rhs;
            for (int z = 0; z < k; ++z) rhs += sgn(k + z - 1) * p[static_cast<size_t>(t + z)] * e[static_cast<size_t>(k - z)];
            if (rhs != p[static_cast<size_t>(k + t)]) bad = t;
        }
        record("ptq(iii)", bad);

        bad = 0;
        for (int t = 1; t <= tmax && !bad; ++t) {
            QRational rhs = sgn(t - 1) * QRational::q_pow(-t) * qint(t) * e[static_cast<size_t>(t)] + bt * Qinv.pow(t);
            for (int z = 1; z < t; ++z)
                rhs += sgn(t - z + 1) * (pQ[static_cast<size_t>(z)] - QRational::q_pow(-2 * (t - z)) * bt * Qinv.pow(z)) *
                       e[static_cast<size_t>(t - z)];
            if (rhs != pQ[static_cast<size_t>(t)]) bad = t;
        }
        record("ptQqb(i)", bad);

        bad = 0;
        for (int t = 1; t <= tmax && !bad; ++t) {
            QRational rhs = Qinv * pQ[static_cast<size_t>(k + t - 1)];
            for (int z = 0; z < k; ++z)
                rhs += sgn(k - z + 1) * (pQ[static_cast<size_t>(t + z)] - Qinv * pQ[static_cast<size_t>(t + z - 1)]) *
                       e[static_cast<size_t>(k - z)];
            if (rhs != pQ[static_cast<size_t>(k + t)]) bad = t;
        }
        record("ptQqb(ii)", bad);
    }
    return out;
}

}  // namespace qca
