#pragma once
// Cycle sidedness / separation / contractibility, shortest non-contractible cycles,
// and the orientation double cover.

#include <cstdint>
#include <optional>
#include <unordered_set>

#include "surface_map.hpp"

namespace surfdom {

struct CycleClass {
    bool one_sided = false;
    bool separating = false;
    bool contractible = false;
    bool operator==(const CycleClass&) const = default;
    std::string str() const {
        return std::string(one_sided ? "one-sided" : "two-sided") + ", " +
               (separating ? "separating" : "non-separating") + ", " +
               (contractible ? "contractible" : "non-contractible");
    }
};

inline void require_cycle(const Triangulation& G, const Cycle& C) {
    if (C.size() < 3) throw Error("not a cycle: fewer than 3 vertices");
    std::vector<char> seen(G.n(), 0);
    for (size_t i = 0; i < C.size(); ++i) {
        int v = C[i];
        if (v < 0 || v >= G.n()) throw Error("not a cycle: vertex out of range");
        if (seen[v]) throw Error("not a cycle: repeated vertex");
        seen[v] = 1;
        if (!G.adjacent(v, C[(i + 1) % C.size()])) throw Error("not a cycle: missing edge");
    }
}

inline int signature_product(const Triangulation& G, const Cycle& C) {
    int p = 1;
    for (size_t i = 0; i < C.size(); ++i) p *= G.sign(C[i], C[(i + 1) % C.size()]);
    return p;
}

// ---------------------------------------------------------------- raw cut

// Result of cutting along a cycle and capping each hole with an apex, before splitting
// into components. Copy 0 of C[i] keeps id C[i]; copy 1 is n+i; apexes follow.
struct RawCut {
    Triangulation graph;
    bool one_sided = false;
    int n_in = 0;
    Cycle cycle;
    std::vector<int> origin;  // raw vertex -> input vertex, -1 for apexes
    Cycle c1, c2;             // c2 empty when one-sided
    int v1 = -1, v2 = -1;
};

inline RawCut raw_cut(const Triangulation& G, const Cycle& C) {
    require_cycle(G, C);
    const int n = G.n(), m = static_cast<int>(C.size());
    std::vector<int> pos(n, -1);
    for (int i = 0; i < m; ++i) pos[C[i]] = i;
    std::vector<int> lam(m);
    lam[0] = 1;
    for (int i = 0; i + 1 < m; ++i) lam[i + 1] = lam[i] * G.sign(C[i], C[i + 1]);
    RawCut R;
    R.n_in = n;
    R.cycle = C;
    R.one_sided = lam[m - 1] * G.sign(C[m - 1], C[0]) < 0;
    std::vector<int> pn(m), pp(m);
    for (int i = 0; i < m; ++i) {
        pn[i] = G.slot(C[i], C[(i + 1) % m]);
        pp[i] = G.slot(C[i], C[(i + m - 1) % m]);
    }
    std::vector<std::vector<int>> polys, marked;
    for (const auto& f : G.faces()) {
        std::vector<int> p;
        for (size_t j = 0; j < f.verts.size(); ++j) {
            int v = f.verts[j], c = f.corners[j];
            int i = pos[v];
            if (i < 0) {
                p.push_back(v);
                continue;
            }
            int d = G.degree(v);
            bool left = lam[i] > 0 ? mod(c - pn[i], d) < mod(pp[i] - pn[i], d)
                                   : mod(pn[i] - 1 - c, d) < mod(pn[i] - pp[i], d);
            p.push_back(left ? v : n + i);
        }
        if (G.is_marked(f.verts)) marked.push_back(p);
        else polys.push_back(p);
    }
    R.v1 = n + m;
    for (int i = 0; i < m; ++i) R.c1.push_back(C[i]);
    if (R.one_sided) {
        for (int i = 0; i < m; ++i) R.c1.push_back(n + i);
    } else {
        R.v2 = n + m + 1;
        for (int i = 0; i < m; ++i) R.c2.push_back(n + i);
    }
    auto cap = [&](const Cycle& ring, int apex) {
        for (size_t i = 0; i < ring.size(); ++i) polys.push_back({apex, ring[i], ring[(i + 1) % ring.size()]});
    };
    cap(R.c1, R.v1);
    if (!R.one_sided) cap(R.c2, R.v2);
    const int total = n + m + (R.one_sided ? 1 : 2);
    R.origin.resize(total);
    for (int v = 0; v < n; ++v) R.origin[v] = v;
    for (int i = 0; i < m; ++i) R.origin[n + i] = C[i];
    for (int v = n + m; v < total; ++v) R.origin[v] = -1;
    R.graph = from_faces(total, polys, marked);
    return R;
}

// ---------------------------------------------------------------- flood classification

// Face adjacency of a triangulation, reused across many cycle tests.
class FaceIndex {
public:
    explicit FaceIndex(const Triangulation& G) : G_(&G) {
        faces_ = G.faces(&corner_face_);
        stamp_.assign(faces_.size(), 0);
        cidx_.assign(G.n(), -1);
    }
    const std::vector<TracedFace>& faces() const { return faces_; }
    int face_at(int v, int corner) const { return corner_face_[v][corner]; }

    // Decide separation and contractibility of a simple cycle by flooding both sides.
    CycleClass classify(const Cycle& C) {
        for (size_t i = 0; i < C.size(); ++i) cidx_[C[i]] = static_cast<int>(i);
        CycleClass cls = classify_marked(C);
        for (int v : C) cidx_[v] = -1;
        return cls;
    }

private:
    CycleClass classify_marked(const Cycle& C) {
        const auto& G = *G_;
        CycleClass cls;
        cls.one_sided = signature_product(G, C) < 0;
        const int m = static_cast<int>(C.size());
        auto is_cycle_edge = [&](int a, int b) {
            int ia = cidx_[a], ib = cidx_[b];
            if (ia < 0 || ib < 0) return false;
            return mod(ia - ib, m) == 1 || mod(ib - ia, m) == 1;
        };
        const int v0 = C[0], s = G.slot(v0, C[1]), d = G.degree(v0);
        const int fa = corner_face_[v0][s], fb = corner_face_[v0][mod(s - 1, d)];
        const int A = ++epoch_, B = ++epoch_;
        std::vector<int> qa{fa}, qb{fb};
        size_t ia = 0, ib = 0;
        stamp_[fa] = A;
        if (stamp_[fb] == A) {
            cls.separating = false;
            return cls;
        }
        stamp_[fb] = B;
        bool doneA = false, doneB = false;
        auto step = [&](std::vector<int>& q, size_t& idx, int me, int other) -> int {
            // returns 1 if flooding met the other side, 0 otherwise
            int f = q[idx++];
            const auto& F = faces_[f];
            for (size_t j = 0; j < F.verts.size(); ++j) {
                int v = F.verts[j], c = F.corners[j], dv = G.degree(v);
                for (int t : {c, mod(c + 1, dv)}) {
                    int u = G.rotation(v)[t].to;
                    if (is_cycle_edge(v, u)) continue;
                    int g1 = corner_face_[v][mod(t - 1, dv)], g2 = corner_face_[v][t];
                    int g = g1 == f ? g2 : g1;
                    if (stamp_[g] == me) continue;
                    if (stamp_[g] == other) return 1;
                    stamp_[g] = me;
                    q.push_back(g);
                }
            }
            return 0;
        };
        auto side_is_disk = [&](const std::vector<int>& q) {
            std::unordered_set<int> vs;
            std::unordered_set<long long> es;
            for (int f : q) {
                const auto& F = faces_[f];
                for (size_t j = 0; j < F.verts.size(); ++j) {
                    int a = F.verts[j], b = F.verts[(j + 1) % F.verts.size()];
                    vs.insert(a);
                    es.insert(static_cast<long long>(std::min(a, b)) * G.n() + std::max(a, b));
                }
            }
            long long chi = static_cast<long long>(vs.size()) - static_cast<long long>(es.size()) +
                            static_cast<long long>(q.size());
            return chi == 1;
        };
        while (!(doneA && doneB)) {
            if (!doneA) {
                if (ia == qa.size()) {
                    doneA = true;
                    if (side_is_disk(qa)) {
                        cls.separating = cls.contractible = true;
                        return cls;
                    }
                } else if (step(qa, ia, A, B)) {
                    cls.separating = false;
                    return cls;
                }
            }
            if (!doneB) {
                if (ib == qb.size()) {
                    doneB = true;
                    if (side_is_disk(qb)) {
                        cls.separating = cls.contractible = true;
                        return cls;
                    }
                } else if (step(qb, ib, B, A)) {
                    cls.separating = false;
                    return cls;
                }
            }
        }
        cls.separating = true;
        cls.contractible = false;
        return cls;
    }

    const Triangulation* G_;
    std::vector<TracedFace> faces_;
    std::vector<std::vector<int>> corner_face_;
    std::vector<int> stamp_;
    std::vector<int> cidx_;
    int epoch_ = 0;
};

// Classification by cutting a scratch copy and inspecting the capped pieces.
inline CycleClass classify_cycle(const Triangulation& G, const Cycle& C) {
    auto R = raw_cut(G, C);
    CycleClass cls;
    cls.one_sided = R.one_sided;
    int comps = 0;
    component_labels(R.graph, &comps);
    cls.separating = comps > 1;
    if (cls.separating) {
        for (const auto& p : split_components(R.graph))
            if (classify_surface(p.graph).sphere()) cls.contractible = true;
    }
    return cls;
}

inline CycleClass classify_cycle(const Triangulation& G, const Walk& W) {
    if (!W.closed) throw Error("not a cycle: walk is open");
    return classify_cycle(G, W.to_cycle());
}

// ---------------------------------------------------------------- Z2 homology

// Tree-cotree homology labels: class(e) as a bit vector of beta = 2 - chi bits.
struct HomologyBasis {
    int words = 1;
    int beta = 0;
    std::vector<std::vector<int>> edge_id;  // per vertex, per slot
    std::vector<std::vector<uint64_t>> h;   // per edge
};

inline HomologyBasis homology_basis(const Triangulation& G, const FaceIndex& FI) {
    HomologyBasis HB;
    const int n = G.n();
    HB.edge_id.resize(n);
    int E = 0;
    for (int v = 0; v < n; ++v) HB.edge_id[v].assign(G.degree(v), -1);
    for (int v = 0; v < n; ++v)
        for (int t = 0; t < G.degree(v); ++t) {
            int u = G.rotation(v)[t].to;
            if (u > v) {
                HB.edge_id[v][t] = E;
                HB.edge_id[u][G.slot(u, v)] = E;
                ++E;
            }
        }
    const auto& faces = FI.faces();
    const int F = static_cast<int>(faces.size());
    HB.beta = static_cast<int>(E - (n - 1) - (F - 1));
    HB.words = std::max(1, (HB.beta + 63) / 64);
    std::vector<char> kind(E, 0);  // 1 tree, 2 cotree, 3 leftover
    // primal BFS tree
    {
        std::vector<char> seen(n, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int t = 0; t < G.degree(v); ++t) {
                int u = G.rotation(v)[t].to;
                if (!seen[u]) {
                    seen[u] = 1;
                    kind[HB.edge_id[v][t]] = 1;
                    q.push(u);
                }
            }
        }
    }
    // face edges
    std::vector<std::vector<int>> fedges(F);
    for (int f = 0; f < F; ++f) {
        const auto& fc = faces[f];
        for (size_t j = 0; j < fc.verts.size(); ++j) {
            int v = fc.verts[j], u = fc.verts[(j + 1) % fc.verts.size()];
            fedges[f].push_back(HB.edge_id[v][G.slot(v, u)]);
        }
    }
    std::vector<std::vector<int>> efaces(E);
    for (int f = 0; f < F; ++f)
        for (int e : fedges[f]) efaces[e].push_back(f);
    // dual BFS tree over non-tree edges
    std::vector<int> order, parent_edge(F, -1);
    {
        std::vector<char> seen(F, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            order.push_back(f);
            for (int e : fedges[f]) {
                if (kind[e] == 1) continue;
                for (int g : efaces[e])
                    if (!seen[g]) {
                        seen[g] = 1;
                        kind[e] = 2;
                        parent_edge[g] = e;
                        q.push(g);
                    }
            }
        }
    }
    HB.h.assign(E, std::vector<uint64_t>(HB.words, 0));
    int b = 0;
    for (int e = 0; e < E; ++e)
        if (kind[e] == 0) {
            kind[e] = 3;
            HB.h[e][b / 64] |= uint64_t(1) << (b % 64);
            ++b;
        }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int f = *it, pe = parent_edge[f];
        if (pe < 0) continue;
        std::vector<uint64_t> acc(HB.words, 0);
        bool skipped = false;
        for (int e : fedges[f]) {
            if (e == pe && !skipped) {
                skipped = true;
                continue;
            }
            for (int w = 0; w < HB.words; ++w) acc[w] ^= HB.h[e][w];
        }
        HB.h[pe] = acc;
    }
    return HB;
}

// ---------------------------------------------------------------- shortest cycle

namespace detail {

// First strictly shorter candidate wins; scan order makes the choice deterministic.
struct BestCycle {
    Cycle canon;
    bool better(const Cycle& c) const { return canon.empty() || c.size() < canon.size(); }
    bool worth(size_t len) const { return canon.empty() || len < canon.size(); }
};

inline Cycle tree_cycle(const std::vector<int>& parent, const std::vector<int>& dist, int x, int y) {
    std::vector<int> px{x}, py{y};
    int a = x, b = y;
    while (dist[a] > dist[b]) px.push_back(a = parent[a]);
    while (dist[b] > dist[a]) py.push_back(b = parent[b]);
    while (a != b) {
        px.push_back(a = parent[a]);
        py.push_back(b = parent[b]);
    }
    py.pop_back();  // lca appears once
    Cycle c(px.rbegin(), px.rend());
    c.insert(c.end(), py.begin(), py.end());
    return c;
}

}  // namespace detail

inline std::optional<Cycle> shortest_noncontractible_cycle(const Triangulation& G) {
    auto sc = classify_surface(G);
    if (sc.sphere()) return std::nullopt;
    FaceIndex FI(G);
    auto HB = homology_basis(G, FI);
    const int n = G.n(), W = HB.words;
    detail::BestCycle best;
    std::vector<int> dist(n), parent(n), pslot(n);
    std::vector<uint64_t> H(static_cast<size_t>(n) * W);
    auto bfs = [&](int r) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[r] = 0;
        parent[r] = -1;
        std::fill(H.begin() + static_cast<long>(r) * W, H.begin() + static_cast<long>(r + 1) * W, 0);
        std::vector<int> q{r};
        for (size_t i = 0; i < q.size(); ++i) {
            int v = q[i];
            for (int t = 0; t < G.degree(v); ++t) {
                int u = G.rotation(v)[t].to;
                if (dist[u] >= 0) continue;
                dist[u] = dist[v] + 1;
                parent[u] = v;
                pslot[u] = t;
                const auto& he = HB.h[HB.edge_id[v][t]];
                for (int w = 0; w < W; ++w) H[static_cast<size_t>(u) * W + w] = H[static_cast<size_t>(v) * W + w] ^ he[w];
                q.push_back(u);
            }
        }
    };
    auto klass_zero = [&](int x, int t, int y) {
        const auto& he = HB.h[HB.edge_id[x][t]];
        for (int w = 0; w < W; ++w)
            if ((H[static_cast<size_t>(x) * W + w] ^ H[static_cast<size_t>(y) * W + w] ^ he[w]) != 0) return false;
        return true;
    };
    // pass 1: non-separating candidates
    for (int r = 0; r < n; ++r) {
        bfs(r);
        for (int x = 0; x < n; ++x)
            for (int t = 0; t < G.degree(x); ++t) {
                int y = G.rotation(x)[t].to;
                if (y < x || parent[y] == x || parent[x] == y) continue;
                if (!best.worth(dist[x] + dist[y] + 1)) continue;
                if (klass_zero(x, t, y)) continue;
                auto c = canonical_cycle(detail::tree_cycle(parent, dist, x, y));
                if (best.better(c)) best.canon = c;
            }
    }
    // pass 2: a separating non-contractible cycle needs genus on both sides, so S_g or N_g with g >= 2
    if (sc.genus >= 2) {
        std::set<Cycle> tested;
        for (int r = 0; r < n; ++r) {
            bfs(r);
            for (int x = 0; x < n; ++x)
                for (int t = 0; t < G.degree(x); ++t) {
                    int y = G.rotation(x)[t].to;
                    if (y < x || parent[y] == x || parent[x] == y) continue;
                    if (!best.worth(dist[x] + dist[y] + 1)) continue;
                    if (!klass_zero(x, t, y)) continue;
                    auto c = canonical_cycle(detail::tree_cycle(parent, dist, x, y));
                    if (!best.better(c) || !tested.insert(c).second) continue;
                    if (!FI.classify(c).contractible) best.canon = c;
                }
        }
    }
    return best.canon;
}

// ---------------------------------------------------------------- double cover

struct CoverMap {
    Triangulation cover;
    std::vector<int> projection;  // cover vertex -> base vertex
    std::vector<int> sheet;       // 0 or 1
};

inline CoverMap double_cover(const Triangulation& G) {
    if (is_orientable(G)) throw Error("orientable input");
    const int n = G.n();
    CoverMap cm;
    std::vector<Rotation> rot(2 * n);
    cm.projection.resize(2 * n);
    cm.sheet.resize(2 * n);
    for (int v = 0; v < n; ++v)
        for (int s = 0; s < 2; ++s) {
            int id = 2 * v + s;
            cm.projection[id] = v;
            cm.sheet[id] = s;
            Rotation r;
            for (const auto& d : G.rotation(v)) r.push_back({2 * d.to + (s ^ (d.sign < 0 ? 1 : 0)), +1});
            if (s == 1) std::reverse(r.begin(), r.end());
            rot[id] = std::move(r);
        }
    cm.cover = Triangulation(std::move(rot));
    return cm;
}

// Projection is a 2-to-1 local isomorphism: N[v] maps bijectively onto N[p(v)].
inline bool check_cover_map(const Triangulation& G, const CoverMap& cm) {
    const auto& H = cm.cover;
    if (H.n() != 2 * G.n()) return false;
    std::vector<int> count(G.n(), 0);
    for (int v = 0; v < H.n(); ++v) {
        int p = cm.projection[v];
        if (p < 0 || p >= G.n()) return false;
        ++count[p];
        if (H.degree(v) != G.degree(p)) return false;
        std::set<int> img{p};
        for (const auto& d : H.rotation(v)) img.insert(cm.projection[d.to]);
        std::set<int> nb{p};
        for (const auto& d : G.rotation(p)) nb.insert(d.to);
        if (img != nb || img.size() != static_cast<size_t>(H.degree(v)) + 1) return false;
    }
    for (int c : count)
        if (c != 2) return false;
    return true;
}

// Extract a non-contractible simple cycle from a non-contractible closed walk.
inline std::optional<Cycle> extract_noncontractible(const Triangulation& /*G*/, std::vector<int> walk, FaceIndex& FI) {
    while (true) {
        // drop immediate backtracks u v u
        bool changed = true;
        while (changed && walk.size() >= 3) {
            changed = false;
            for (size_t i = 0; i < walk.size(); ++i) {
                size_t m = walk.size();
                if (walk[i] == walk[(i + 2) % m]) {
                    size_t a = (i + 1) % m, b = (i + 2) % m;
                    if (a < b) {
                        walk.erase(walk.begin() + static_cast<long>(a), walk.begin() + static_cast<long>(b) + 1);
                    } else {
                        walk.erase(walk.begin() + static_cast<long>(a));
                        walk.erase(walk.begin());
                    }
                    changed = true;
                    break;
                }
            }
        }
        if (walk.size() < 3) return std::nullopt;
        std::map<int, size_t> first;
        size_t i = 0, j = 0;
        bool rep = false;
        for (j = 0; j < walk.size(); ++j) {
            auto it = first.find(walk[j]);
            if (it != first.end()) {
                i = it->second;
                rep = true;
                break;
            }
            first[walk[j]] = j;
        }
        if (!rep) {
            if (FI.classify(walk).contractible) return std::nullopt;
            return walk;
        }
        Cycle inner(walk.begin() + static_cast<long>(i), walk.begin() + static_cast<long>(j));
        if (inner.size() >= 3 && !FI.classify(inner).contractible) return inner;
        std::vector<int> outer(walk.begin(), walk.begin() + static_cast<long>(i));
        outer.insert(outer.end(), walk.begin() + static_cast<long>(j), walk.end());
        walk = std::move(outer);
    }
}

// Short non-contractible cycle on a non-orientable surface through the orientation cover.
inline Cycle short_cycle_nonorientable(const Triangulation& G) {
    if (is_orientable(G)) throw Error("orientable input");
    auto cm = double_cover(G);
    if (classify_surface(cm.cover).sphere()) {
        auto c = shortest_noncontractible_cycle(G);
        if (!c) throw Error("internal: projective plane without non-contractible cycle");
        return *c;
    }
    auto ch = shortest_noncontractible_cycle(cm.cover);
    if (!ch) throw Error("internal: cover has genus 0");
    std::vector<int> walk;
    for (int v : *ch) walk.push_back(cm.projection[v]);
    FaceIndex FI(G);
    auto c = extract_noncontractible(G, walk, FI);
    if (!c) throw Error("internal: projected walk has no non-contractible piece");
    return *c;
}

}  // namespace surfdom
