#pragma once
// Periodic domination tiles for (w,l,k)-cylinders and the wide-cylinder stripe pattern.

#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <utility>

#include "generators.hpp"

namespace surfdom {

using Cell = std::pair<int, int>;  // (a, b): column a mod w, ring b

// Closed neighbourhood of z_{a,b} in the infinite (w,*,k)-cylinder.
inline std::vector<Cell> cylinder_closed_nbhd(int w, int k, int a, int b) {
    a = mod(a, w);
    const int am = mod(a - 1, w);
    std::vector<Cell> out{{a, b}, {mod(a + 1, w), b}, {am, b}, {a, b + 1}, {a, b - 1}};
    if (a < k) out.push_back({mod(a + 1, w), b + 1});
    if (am >= k) out.push_back({am, b + 1});
    if (am < k) out.push_back({am, b - 1});
    if (a >= k) out.push_back({mod(a + 1, w), b - 1});
    return out;
}

struct Tile {
    int w = 0, k = 0, m = 0;
    std::vector<Cell> cells;  // subset of [0,w) x [0,m)
    size_t size() const { return cells.size(); }
};

// Does the m-periodic extension of the tile dominate every ring of the infinite cylinder?
inline bool tile_dominates(const Tile& t) {
    std::vector<char> in(t.w * t.m, 0);
    for (auto [a, b] : t.cells) in[mod(b, t.m) * t.w + mod(a, t.w)] = 1;
    for (int b = 0; b < t.m; ++b)
        for (int a = 0; a < t.w; ++a) {
            bool ok = false;
            for (auto [x, y] : cylinder_closed_nbhd(t.w, t.k, a, b))
                if (in[mod(y, t.m) * t.w + x]) ok = true;
            if (!ok) return false;
        }
    return true;
}

// Backtracking search for a tile of exactly `size` cells with period m.
inline std::optional<Tile> search_tile(int w, int k, int m, int size, long long budget = 200'000'000) {
    const int N = w * m;
    std::vector<std::vector<int>> nb(N);
    for (int b = 0; b < m; ++b)
        for (int a = 0; a < w; ++a) {
            std::vector<int> s;
            for (auto [x, y] : cylinder_closed_nbhd(w, k, a, b)) s.push_back(mod(y, m) * w + x);
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            nb[b * w + a] = s;
        }
    const int maxcov = 7;
    std::vector<int> cov(N, 0), chosen;
    std::vector<char> used(N, 0);
    int undominated = N;
    long long nodes = 0;
    std::function<bool()> rec = [&]() -> bool {
        if (++nodes > budget) return false;
        const int left = size - static_cast<int>(chosen.size());
        if (undominated == 0) return true;
        if (left == 0 || undominated > left * maxcov) return false;
        int v = 0;
        while (cov[v] > 0) ++v;
        for (int u : nb[v]) {  // closed neighbourhoods are symmetric
            if (used[u]) continue;
            used[u] = 1;
            chosen.push_back(u);
            for (int x : nb[u])
                if (cov[x]++ == 0) --undominated;
            if (rec()) return true;
            for (int x : nb[u])
                if (--cov[x] == 0) ++undominated;
            chosen.pop_back();
            used[u] = 0;
        }
        return false;
    };
    if (!rec()) return std::nullopt;
    // pad to the exact size with unused cells
    for (int u = 0; u < N && static_cast<int>(chosen.size()) < size; ++u)
        if (!used[u]) used[u] = 1, chosen.push_back(u);
    Tile t{w, k, m, {}};
    std::sort(chosen.begin(), chosen.end());
    for (int u : chosen) t.cells.push_back({u % w, u / w});
    return t;
}

// Tiles for w in {5,7,11}, found offline by search_tile under the tabulated (|S|, m).
struct FrozenTile {
    int w, k, m;
    std::vector<Cell> cells;
};

inline const std::vector<FrozenTile>& frozen_tiles() {
    static const std::vector<FrozenTile> t = {
#include "frozen_tiles.inc"
    };
    return t;
}

// Expected (|S|, m) per (w, k) for the frozen rows.
inline std::optional<std::pair<int, int>> tabulated_tile_shape(int w, int k) {
    static const std::array<std::array<int, 4>, 13> rows = {{{5, 0, 4, 5},
                                                              {5, 1, 5, 7},
                                                              {5, 2, 5, 6},
                                                              {7, 0, 7, 7},
                                                              {7, 1, 8, 7},
                                                              {7, 2, 8, 7},
                                                              {7, 3, 8, 7},
                                                              {11, 0, 12, 7},
                                                              {11, 1, 12, 7},
                                                              {11, 2, 9, 5},
                                                              {11, 3, 12, 7},
                                                              {11, 4, 12, 7},
                                                              {11, 5, 12, 7}}};
    for (const auto& r : rows)
        if (r[0] == w && r[1] == k) return std::make_pair(r[2], r[3]);
    return std::nullopt;
}

inline int normalize_turns(int w, int k) { return std::min(k, w - k) % w; }

// Even w: one cell per even column, offsets in {0,1,2} chained so every odd column is covered.
inline Tile even_width_tile(int w, int k) {
    Tile t{w, k, 3, {}};
    const int rows = w / 2;
    std::vector<int> off(rows, 0);
    std::function<bool(int)> pick = [&](int i) -> bool {
        if (i == rows) {
            t.cells.clear();
            for (int j = 0; j < rows; ++j) t.cells.push_back({2 * j, off[j]});
            return tile_dominates(t);
        }
        for (int o = 0; o < 3; ++o) {
            off[i] = o;
            if (pick(i + 1)) return true;
        }
        return false;
    };
    if (!pick(0)) throw Error("no offset chain for even width " + std::to_string(w));
    return t;
}

// Tile for 3 <= w <= 12; k taken mod the reflection symmetry.
inline Tile cylinder_tile(int w, int k) {
    if (w < 3 || w > 12) throw Error("parameter violation: tiles exist for 3 <= w <= 12");
    if (k < 0 || k >= w) throw Error("parameter violation: need 0 <= k < w");
    const int kn = normalize_turns(w, k);
    Tile t;
    if (w % 3 == 0) {
        t = Tile{w, kn, 2, {}};
        for (int i = 0; 3 * i + 1 < w; ++i) t.cells.push_back({3 * i + 1, 0});
    } else if (w % 2 == 0) {
        t = even_width_tile(w, kn);
    } else {
        for (const auto& f : frozen_tiles())
            if (f.w == w && f.k == kn) t = Tile{w, kn, f.m, f.cells};
        if (t.m == 0) throw Error("missing frozen tile");
    }
    if (kn != k) {  // reflect a -> w - a
        for (auto& c : t.cells) c.first = mod(w - c.first, w);
        t.k = k;
    }
    return t;
}

// ---------------------------------------------------------------- patterns on a finite cylinder

struct CylinderPattern {
    int w = 0, l = 0, k = 0;
    std::vector<Cell> cells;  // S_Z, 0 <= b <= l
    int m = 0;                // tile period, 0 for the stripe construction
    int tile_size = 0;
    std::string method;
};

// Interior rings 1..l-1 all dominated by `cells`?
inline bool pattern_dominates_interior(int w, int l, int k, const std::vector<Cell>& cells) {
    std::vector<char> in(w * (l + 1), 0);
    for (auto [a, b] : cells) {
        if (b < 0 || b > l) return false;
        in[cylinder_id(w, a, b)] = 1;
    }
    for (int b = 1; b < l; ++b)
        for (int a = 0; a < w; ++a) {
            bool ok = false;
            for (auto [x, y] : cylinder_closed_nbhd(w, k, a, b))
                if (in[cylinder_id(w, x, y)]) ok = true;
            if (!ok) return false;
        }
    return true;
}

namespace detail {

// Cylinder neighbourhoods restricted to rings 0..l.
struct CylinderNbhd {
    int w, l;
    std::vector<std::vector<int>> N;
    CylinderNbhd(int w_, int l_, int k) : w(w_), l(l_), N(w_ * (l_ + 1)) {
        for (int b = 0; b <= l; ++b)
            for (int a = 0; a < w; ++a)
                for (auto [x, y] : cylinder_closed_nbhd(w, k, a, b))
                    if (y >= 0 && y <= l) N[cylinder_id(w, a, b)].push_back(cylinder_id(w, x, y));
    }
    bool interior(int v) const { return v >= w && v < w * l; }
};

// D-infinity stripes cut open at column `seam`, greedy repair of what the seam misses, then pruning.
// code 0: (2x - y) = phase mod 7, code 1: (3x + y) = phase mod 7 (the mirror sublattice).
inline std::vector<int> stripe_pattern(const CylinderNbhd& C, int k, int seam, int code, int phase) {
    const int w = C.w, l = C.l, n = w * (l + 1);
    std::vector<char> in(n, 0);
    int shear = 0;
    for (int i = 0; i < w; ++i) {
        const int a = (seam + i) % w;
        for (int b = 0; b <= l; ++b) {
            const int y = b - shear;
            const int f = code == 0 ? 2 * i - y : 3 * i + y;
            if (mod(f - phase, 7) == 0) in[cylinder_id(w, a, b)] = 1;
        }
        if (a < k) ++shear;
    }
    std::vector<int> cov(n, 0);
    for (int v = 0; v < n; ++v)
        if (in[v])
            for (int u : C.N[v]) ++cov[u];
    std::vector<int> open;
    for (int u = C.w; u < C.w * l; ++u)
        if (!cov[u]) open.push_back(u);
    while (!open.empty()) {
        int best = -1, bg = 0;
        for (int u : open)
            for (int v : C.N[u]) {
                int g = 0;
                for (int x : C.N[v]) g += C.interior(x) && cov[x] == 0;
                if (g > bg || (g == bg && v < best)) bg = g, best = v;
            }
        in[best] = 1;
        for (int x : C.N[best]) ++cov[x];
        std::erase_if(open, [&](int u) { return cov[u] > 0; });
    }
    for (int v = n - 1; v >= 0; --v) {
        if (!in[v]) continue;
        bool needed = false;
        for (int u : C.N[v]) needed |= C.interior(u) && cov[u] == 1;
        if (!needed) {
            in[v] = 0;
            for (int u : C.N[v]) --cov[u];
        }
    }
    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (in[v]) out.push_back(v);
    return out;
}

// Local search: add one vertex, drop every member it makes redundant; keep moves that do not grow D.
inline void improve_pattern(const CylinderNbhd& C, std::vector<int>& D, int rounds, uint32_t seed) {
    const int n = static_cast<int>(C.N.size());
    std::vector<char> in(n, 0);
    std::vector<int> cov(n, 0);
    for (int v : D) {
        in[v] = 1;
        for (int x : C.N[v]) ++cov[x];
    }
    auto redundant = [&](int v) {
        for (int x : C.N[v])
            if (C.interior(x) && cov[x] == 1) return false;
        return true;
    };
    std::mt19937 rng(seed);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> near;
    for (int round = 0; round < rounds; ++round) {
        std::shuffle(order.begin(), order.end(), rng);
        bool gained = false;
        for (int u : order) {
            if (in[u]) continue;
            in[u] = 1;
            for (int x : C.N[u]) ++cov[x];
            near.clear();
            for (int x : C.N[u])
                for (int v : C.N[x])
                    if (in[v] && v != u) near.push_back(v);
            std::sort(near.begin(), near.end());
            near.erase(std::unique(near.begin(), near.end()), near.end());
            std::shuffle(near.begin(), near.end(), rng);
            std::vector<int> dropped;
            for (int v : near)
                if (redundant(v)) {
                    in[v] = 0;
                    for (int x : C.N[v]) --cov[x];
                    dropped.push_back(v);
                }
            if (dropped.size() >= 2) gained = true;
            if (dropped.empty()) {
                in[u] = 0;
                for (int x : C.N[u]) --cov[x];
            }
        }
        if (!gained && round >= rounds / 2) break;
    }
    D.clear();
    for (int v = 0; v < n; ++v)
        if (in[v]) D.push_back(v);
}

}  // namespace detail

// S_Z for a (w,l,k)-cylinder.
inline CylinderPattern cylinder_pattern(int w, int l, int k) {
    check_cylinder_params(w, l, k);
    CylinderPattern p{w, l, k, {}, 0, 0, ""};
    if (w <= 12) {
        auto t = cylinder_tile(w, k);
        p.m = t.m;
        p.tile_size = static_cast<int>(t.size());
        p.method = "tile";
        std::vector<char> in(t.w * t.m, 0);
        for (auto [a, b] : t.cells) in[b * t.w + a] = 1;
        for (int b = 0; b <= l; ++b)
            for (int a = 0; a < w; ++a)
                if (in[(b % t.m) * w + a]) p.cells.push_back({a, b});
    } else {
        p.method = "stripes";
        detail::CylinderNbhd C(w, l, k);
        std::vector<int> best;
        for (int seam = 0; seam < std::min(w, 7); ++seam)
            for (int code = 0; code < 2; ++code)
                for (int s = 0; s < 7; ++s) {
                    auto c = detail::stripe_pattern(C, k, seam, code, s);
                    if (best.empty() || c.size() < best.size()) best = std::move(c);
                }
        const size_t budget = static_cast<size_t>((l + 6) / 7) * (w + 2);
        if (best.size() > budget) detail::improve_pattern(C, best, 60, static_cast<uint32_t>(w * 1000003 + l * 1009 + k));
        for (int v : best) p.cells.push_back({v % w, v / w});
    }
    if (!pattern_dominates_interior(w, l, k, p.cells)) throw Error("internal: pattern fails to dominate the interior");
    return p;
}

// Size budgets: 6*|S_Z| <= w(l+1) + 72 for w <= 12, ceil(l/7)(w+2) for w >= 13.
inline bool pattern_within_budget(const CylinderPattern& p) {
    const long long s = static_cast<long long>(p.cells.size());
    if (p.w <= 12) return 6 * s <= static_cast<long long>(p.w) * (p.l + 1) + 72;
    return s <= static_cast<long long>((p.l + 6) / 7) * (p.w + 2);
}

}  // namespace surfdom
