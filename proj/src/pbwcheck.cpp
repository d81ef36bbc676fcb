#include "qca/pbwcheck.hpp"

#include "qca/linalg.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace qca {

namespace {

using Key = std::pair<std::vector<int>, int>;  // (weight, level sum)

void check_slice(const GradedSlice& sl) {
    if (sl.n < 2) throw std::invalid_argument("slice needs n >= 2");
    if (static_cast<int>(sl.gamma.size()) != sl.n - 1) throw std::invalid_argument("gamma needs one entry per node");
    for (int g : sl.gamma)
        if (g < 0) throw std::invalid_argument("gamma entries must be nonnegative");
    if (sl.s < 0 || sl.T < 0) throw std::invalid_argument("negative level bound");
}

// all words with weight <= gamma, level sum <= s, letters <= T, bucketed
std::map<Key, std::vector<Word>> words_below(const GradedSlice& sl) {
    std::map<Key, std::vector<Word>> out;
    std::vector<int> w(sl.gamma.size(), 0);
    Word cur;
    std::function<void(int)> rec = [&](int lev) {
        out[{w, lev}].push_back(cur);
        for (int i = 1; i < sl.n; ++i) {
            auto k = static_cast<size_t>(i - 1);
            if (w[k] == sl.gamma[k]) continue;
            for (int t = 0; t <= sl.T && lev + t <= sl.s; ++t) {
                ++w[k];
                cur.push_back(GenSymbol::X(1, i, t));
                rec(lev + t);
                cur.pop_back();
                --w[k];
            }
        }
    };
    rec(0);
    return out;
}

struct Instance {
    AlgebraElement rel;
    std::vector<int> weight;
    int level;
};

std::vector<Instance> instances_below(const GradedSlice& sl) {
    std::vector<Instance> out;
    std::vector<QRational> Q(static_cast<size_t>(sl.n - 1));
    int m = sl.s;
    auto weight_of = [&](std::initializer_list<int> nodes) {
        std::vector<int> w(sl.gamma.size(), 0);
        for (int i : nodes) ++w[static_cast<size_t>(i - 1)];
        return w;
    };
    auto fits = [&](const std::vector<int>& w) {
        for (size_t k = 0; k < w.size(); ++k)
            if (w[k] > sl.gamma[k]) return false;
        return true;
    };
    for (int i = 1; i < sl.n; ++i)
        for (int j = 1; j < sl.n; ++j) {
            RelParams p;
            p.i = i;
            p.j = j;
            auto w2 = weight_of({i, j});
            if (!fits(w2)) continue;
            for (int s = 0; s <= m; ++s)
                for (int t = 0; s + t <= m; ++t) {
                    p.s = s;
                    p.t = t;
                    p.variant = 0;
                    if (s + t + 1 <= m)
                        out.push_back({relation_instance(RelationId::Q2, p, Q), w2, s + t + 1});
                    if (std::abs(i - j) > 1) out.push_back({relation_instance(RelationId::Q7, p, Q), w2, s + t});
                    if (std::abs(i - j) == 1 && s <= t) {
                        auto w3 = weight_of({i, i, j});
                        if (!fits(w3)) continue;
                        p.variant = 1;
                        for (int u = 0; s + t + u <= m; ++u) {
                            p.u = u;
                            out.push_back({relation_instance(RelationId::Q7, p, Q), w3, s + t + u});
                        }
                    }
                }
        }
    return out;
}

}  // namespace

std::vector<PositiveRoot> positive_roots(int n) {
    std::vector<PositiveRoot> r;
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j) r.push_back({i, j});
    return r;
}

std::vector<Word> slice_words(const GradedSlice& slice) {
    check_slice(slice);
    auto all = words_below(slice);
    auto it = all.find({slice.gamma, slice.s});
    return it == all.end() ? std::vector<Word>{} : it->second;
}

SliceReport slice_report(const GradedSlice& sl) {
    check_slice(sl);
    if (sl.T < sl.s) throw std::invalid_argument("graded_dim_uplus needs T >= s");
    auto buckets = words_below(sl);
    SliceReport rep;
    rep.slice = sl;
    std::map<Word, int> column;
    if (auto it = buckets.find({sl.gamma, sl.s}); it != buckets.end())
        for (const auto& w : it->second) column.emplace(w, static_cast<int>(column.size()));
    rep.words = static_cast<int>(column.size());
    Echelon e(rep.words);
    for (const auto& inst : instances_below(sl)) {
        if (e.rank() == rep.words) break;
        for (const auto& [ukey, us] : buckets) {
            std::vector<int> rest = sl.gamma;
            bool ok = true;
            for (size_t k = 0; k < rest.size(); ++k) {
                rest[k] -= inst.weight[k] + ukey.first[k];
                if (rest[k] < 0) ok = false;
            }
            int lev = sl.s - inst.level - ukey.second;
            if (!ok || lev < 0) continue;
            auto wit = buckets.find({rest, lev});
            if (wit == buckets.end()) continue;
            for (const auto& u : us)
                for (const auto& w : wit->second) {
                    SparseVec row;
                    for (const auto& [word, c] : inst.rel.terms()) {
                        Word full = u;
                        full.insert(full.end(), word.begin(), word.end());
                        full.insert(full.end(), w.begin(), w.end());
                        int col = column.at(full);
                        auto [it, fresh] = row.emplace(col, c);
                        if (!fresh) {
                            it->second += c;
                            if (it->second.is_zero()) row.erase(it);
                        }
                    }
                    e.insert(std::move(row));
                }
        }
    }
    rep.ideal_rank = e.rank();
    rep.dim = rep.words - rep.ideal_rank;
    rep.pbw_count = pbw_count(sl);
    rep.match = rep.dim == rep.pbw_count;
    return rep;
}

int graded_dim_uplus(const GradedSlice& slice) { return slice_report(slice).dim; }

long pbw_count(const GradedSlice& sl) {
    check_slice(sl);
    std::vector<std::pair<PositiveRoot, int>> items;
    for (const auto& r : positive_roots(sl.n))
        for (int t = 0; t <= std::min(sl.T, sl.s); ++t) items.push_back({r, t});
    std::vector<int> rest = sl.gamma;
    std::function<long(size_t, int)> rec = [&](size_t k, int lev) -> long {
        if (k == items.size()) {
            if (lev != 0) return 0;
            for (int x : rest)
                if (x != 0) return 0;
            return 1;
        }
        long total = rec(k + 1, lev);
        const auto& [root, t] = items[k];
        int used = 0;
        for (;;) {
            bool ok = lev >= t;
            for (int m = root.i; m < root.j; ++m)
                if (rest[static_cast<size_t>(m - 1)] == 0) ok = false;
            if (!ok) break;
            for (int m = root.i; m < root.j; ++m) --rest[static_cast<size_t>(m - 1)];
            lev -= t;
            ++used;
            total += rec(k + 1, lev);
        }
        for (int m = root.i; m < root.j; ++m) rest[static_cast<size_t>(m - 1)] += used;
        return total;
    };
    return rec(0, sl.s);
}

PBWReport pbw_verify(int n, int maxmult, int maxs, int T) {
    if (T < maxs) throw std::invalid_argument("pbw_verify needs T >= maxs");
    PBWReport rep;
    std::vector<int> gamma(static_cast<size_t>(n - 1), 0);
    std::function<void(size_t)> rec = [&](size_t k) {
        if (k == gamma.size()) {
            for (int s = 0; s <= maxs; ++s) {
                SliceReport r = slice_report({n, gamma, s, T});
                if (!r.match) ++rep.mismatches;
                rep.slices.push_back(r);
            }
            return;
        }
        for (int g = 0; g <= maxmult; ++g) {
            gamma[k] = g;
            rec(k + 1);
        }
    };
    rec(0);
    return rep;
}

}  // namespace qca
