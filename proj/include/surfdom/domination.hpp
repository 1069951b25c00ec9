#pragma once
// Domination checks, exact branch-and-bound, and greedy construction.

#include <cstdint>
#include <functional>
#include <limits>

#include "surface_map.hpp"

namespace surfdom {

struct DominationCertificate {
    bool ok = false;
    int undominated = -1;         // smallest undominated vertex when !ok
    std::vector<int> set;         // sorted D
    std::vector<int> witness;     // per vertex, a member of D in N[v]
};

inline DominationCertificate is_dominating(const Triangulation& G, const std::vector<int>& D) {
    DominationCertificate c;
    std::vector<char> in(G.n(), 0);
    for (int v : D) {
        if (v < 0 || v >= G.n()) throw Error("dominating set contains out-of-range id " + std::to_string(v));
        in[v] = 1;
    }
    for (int v = 0; v < G.n(); ++v)
        if (in[v]) c.set.push_back(v);
    c.witness.assign(G.n(), -1);
    for (int v = 0; v < G.n(); ++v) {
        if (in[v]) {
            c.witness[v] = v;
            continue;
        }
        for (const auto& d : G.rotation(v))
            if (in[d.to] && (c.witness[v] < 0 || d.to < c.witness[v])) c.witness[v] = d.to;
        if (c.witness[v] < 0) {
            c.undominated = v;
            c.witness.clear();
            return c;
        }
    }
    c.ok = true;
    return c;
}

inline bool dominates(const Triangulation& G, const std::vector<int>& D) { return is_dominating(G, D).ok; }

// ---------------------------------------------------------------- bitsets

class Bits {
public:
    Bits() = default;
    explicit Bits(int n) : n_(n), w_((n + 63) / 64, 0) {}
    void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    int count() const {
        int c = 0;
        for (auto x : w_) c += __builtin_popcountll(x);
        return c;
    }
    int count_andnot(const Bits& o) const {  // |this \ o|
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += __builtin_popcountll(w_[i] & ~o.w_[i]);
        return c;
    }
    void or_with(const Bits& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    }
    int first_unset() const {
        for (size_t i = 0; i < w_.size(); ++i) {
            uint64_t inv = ~w_[i];
            if (inv) {
                int b = static_cast<int>(i * 64) + __builtin_ctzll(inv);
                return b < n_ ? b : -1;
            }
        }
        return -1;
    }
    int size() const { return n_; }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

// ---------------------------------------------------------------- greedy

inline std::vector<int> greedy_dominating_set(const Triangulation& G, const std::vector<int>& required = {}) {
    const int n = G.n();
    std::vector<char> inD(n, 0), dom(n, 0);
    int undominated = n;
    auto take = [&](int v) {
        if (inD[v]) return;
        inD[v] = 1;
        if (!dom[v]) dom[v] = 1, --undominated;
        for (const auto& d : G.rotation(v))
            if (!dom[d.to]) dom[d.to] = 1, --undominated;
    };
    for (int v : required) {
        if (v < 0 || v >= n) throw Error("required vertex out of range");
        take(v);
    }
    auto gain = [&](int v) {
        int g = !dom[v];
        for (const auto& d : G.rotation(v)) g += !dom[d.to];
        return g;
    };
    // max gain, then lowest id; gains only decrease so stale entries are re-pushed
    using Entry = std::pair<int, int>;  // (gain, -id)
    std::priority_queue<Entry> pq;
    for (int v = 0; v < n; ++v)
        if (!inD[v]) pq.push({gain(v), -v});
    while (undominated > 0 && !pq.empty()) {
        auto [g, nv] = pq.top();
        pq.pop();
        int v = -nv;
        if (inD[v]) continue;
        int now = gain(v);
        if (now != g) {
            if (now > 0) pq.push({now, nv});
            continue;
        }
        if (now == 0) continue;
        take(v);
    }
    std::vector<int> D;
    for (int v = 0; v < n; ++v)
        if (inD[v]) D.push_back(v);
    return D;
}

// ---------------------------------------------------------------- exact

struct ExactOptions {
    int max_n = 60;
    long long node_budget = 50'000'000;
    bool override_limit = false;
};

struct ExactResult {
    std::vector<int> set;
    bool complete = false;  // false: budget exhausted, set is only the best found
    long long nodes = 0;
    std::string status() const { return complete ? "optimal" : "incomplete"; }
};

inline ExactResult exact_min_dominating_set(const Triangulation& G, const std::vector<int>& required = {},
                                            ExactOptions opt = {}) {
    const int n = G.n();
    if (n > opt.max_n && !opt.override_limit)
        throw Error("instance too large for the exact solver (n=" + std::to_string(n) + ")");
    std::vector<Bits> N(n, Bits(n));
    for (int v = 0; v < n; ++v) {
        N[v].set(v);
        for (const auto& d : G.rotation(v)) N[v].set(d.to);
    }
    Bits dom(n);
    std::vector<int> chosen;
    for (int v : required) {
        if (v < 0 || v >= n) throw Error("required vertex out of range");
        if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) {
            chosen.push_back(v);
            dom.or_with(N[v]);
        }
    }
    ExactResult res;
    {
        auto g = greedy_dominating_set(G, required);
        res.set = g;
    }
    size_t best = res.set.size();
    std::vector<char> excluded(n, 0);
    std::vector<int> gains(n);
    bool aborted = false;

    auto lower_bound = [&](const Bits& d) {
        int rem = n - d.count();
        if (rem == 0) return 0;
        int k = 0;
        for (int v = 0; v < n; ++v) gains[k++] = excluded[v] ? 0 : N[v].count_andnot(d);
        std::sort(gains.begin(), gains.begin() + k, std::greater<int>());
        int s = 0, c = 0;
        while (s < rem && c < k && gains[c] > 0) s += gains[c++];
        if (s < rem) return n + 1;  // cannot finish
        return c;
    };

    std::function<void(Bits&)> rec = [&](Bits& d) {
        if (aborted) return;
        if (++res.nodes > opt.node_budget) {
            aborted = true;
            return;
        }
        int v = d.first_unset();
        if (v < 0) {
            if (chosen.size() < best) {
                best = chosen.size();
                res.set = chosen;
            }
            return;
        }
        if (chosen.size() + static_cast<size_t>(lower_bound(d)) >= best) return;
        std::vector<int> cand;
        if (!excluded[v]) cand.push_back(v);
        for (const auto& e : G.rotation(v))
            if (!excluded[e.to]) cand.push_back(e.to);
        std::sort(cand.begin(), cand.end(), [&](int a, int b) {
            int ga = N[a].count_andnot(d), gb = N[b].count_andnot(d);
            return ga != gb ? ga > gb : a < b;
        });
        std::vector<int> newly_excluded;
        for (int u : cand) {
            Bits nd = d;
            nd.or_with(N[u]);
            chosen.push_back(u);
            rec(nd);
            chosen.pop_back();
            if (aborted) break;
            excluded[u] = 1;
            newly_excluded.push_back(u);
        }
        for (int u : newly_excluded) excluded[u] = 0;
    };
    rec(dom);
    res.complete = !aborted;
    std::sort(res.set.begin(), res.set.end());
    return res;
}

// gamma by plain subset enumeration, for small oracles
inline int gamma_by_enumeration(const Triangulation& G) {
    const int n = G.n();
    if (n > 24) throw Error("enumeration limited to n <= 24");
    std::vector<uint32_t> N(n, 0);
    for (int v = 0; v < n; ++v) {
        N[v] = 1u << v;
        for (const auto& d : G.rotation(v)) N[v] |= 1u << d.to;
    }
    const uint32_t full = n == 32 ? ~0u : ((1u << n) - 1);
    int best = n;
    for (uint32_t S = 0; S <= full; ++S) {
        int c = __builtin_popcount(S);
        if (c >= best) {
            if (S == full) break;
            continue;
        }
        uint32_t cov = 0;
        for (uint32_t t = S; t; t &= t - 1) cov |= N[__builtin_ctz(t)];
        if (cov == full) best = c;
        if (S == full) break;
    }
    return best;
}

}  // namespace surfdom
