#pragma once
// Sphere domination: Steiner tree, cut-open disk, lattice map and pullback,
// hexagon radius, boundary-walk types, cylinder extraction, and the recursive driver.

#include <cmath>
#include <deque>
#include <map>
#include <memory>

#include "cylinder_tiles.hpp"
#include "domination.hpp"
#include "surgery.hpp"

namespace surfdom {

using Edge = std::pair<int, int>;

inline Edge edge_key(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

// ---------------------------------------------------------------- Steiner tree

struct SteinerTree {
    std::vector<int> vertices;  // sorted
    std::vector<Edge> edges;    // sorted, (min, max)
    bool exact = false;
    int size() const { return static_cast<int>(vertices.size()); }
};

namespace detail {

inline SteinerTree tree_from_edges(std::set<Edge> es, const std::vector<int>& single, bool exact) {
    SteinerTree t;
    t.exact = exact;
    std::set<int> vs(single.begin(), single.end());
    for (auto [a, b] : es) vs.insert(a), vs.insert(b);
    t.vertices.assign(vs.begin(), vs.end());
    t.edges.assign(es.begin(), es.end());
    return t;
}

// Dreyfus-Wagner on unit weights.
inline SteinerTree steiner_exact(const Triangulation& G, const std::vector<int>& term) {
    const int n = G.n(), t = static_cast<int>(term.size());
    const int full = (1 << t) - 1;
    constexpr int INF = std::numeric_limits<int>::max() / 4;
    std::vector<int> dp(static_cast<size_t>(full + 1) * n, INF);
    auto at = [&](int S) { return dp.data() + static_cast<size_t>(S) * n; };
    std::vector<int> order, q;
    order.reserve(n);
    q.reserve(n);
    std::vector<int> cnt;
    // multi-source relaxation with integer starting values
    auto relax = [&](int* d) {
        int mx = 0;
        for (int v = 0; v < n; ++v)
            if (d[v] < INF) mx = std::max(mx, d[v]);
        cnt.assign(mx + 2, 0);
        for (int v = 0; v < n; ++v)
            if (d[v] < INF) ++cnt[d[v] + 1];
        for (int i = 1; i < mx + 2; ++i) cnt[i] += cnt[i - 1];
        order.assign(cnt.back(), 0);
        for (int v = 0; v < n; ++v)
            if (d[v] < INF) order[cnt[d[v]]++] = v;
        q.clear();
        size_t oi = 0, qi = 0;
        while (oi < order.size() || qi < q.size()) {
            int v;
            if (qi >= q.size() || (oi < order.size() && d[order[oi]] <= d[q[qi]]))
                v = order[oi++];
            else
                v = q[qi++];
            for (const auto& e : G.rotation(v))
                if (d[e.to] > d[v] + 1) {
                    d[e.to] = d[v] + 1;
                    q.push_back(e.to);
                }
        }
    };
    for (int i = 0; i < t; ++i) {
        at(1 << i)[term[i]] = 0;
        relax(at(1 << i));
    }
    for (int S = 1; S <= full; ++S) {
        if ((S & (S - 1)) == 0) continue;
        int* d = at(S);
        const int low = S & -S;
        const int rest = S ^ low;
        for (int T = rest; ; T = (T - 1) & rest) {  // T' = low | T ranges over proper subsets containing low
            const int A = low | T;
            if (A != S) {
                const int* a = at(A);
                const int* b = at(S ^ A);
                for (int v = 0; v < n; ++v) d[v] = std::min(d[v], a[v] + b[v]);
            }
            if (T == 0) break;
        }
        relax(d);
    }
    std::set<Edge> es;
    std::vector<std::pair<int, int>> stack{{full, term[0]}};
    while (!stack.empty()) {
        auto [S, v] = stack.back();
        stack.pop_back();
        const int* d = at(S);
        if ((S & (S - 1)) == 0 && term[__builtin_ctz(S)] == v) continue;
        bool moved = false;
        for (const auto& e : G.rotation(v))
            if (d[e.to] == d[v] - 1) {
                es.insert(edge_key(v, e.to));
                stack.push_back({S, e.to});
                moved = true;
                break;
            }
        if (moved) continue;
        const int low = S & -S, rest = S ^ low;
        for (int T = rest; ; T = (T - 1) & rest) {
            const int A = low | T;
            if (A != S && at(A)[v] + at(S ^ A)[v] == d[v]) {
                stack.push_back({A, v});
                stack.push_back({S ^ A, v});
                moved = true;
                break;
            }
            if (T == 0) break;
        }
        if (!moved) throw Error("internal: Steiner reconstruction failed");
    }
    auto tr = tree_from_edges(std::move(es), {term[0]}, true);
    if (static_cast<int>(tr.edges.size()) != at(full)[term[0]]) throw Error("internal: Steiner tree size mismatch");
    return tr;
}

// Grow from the first terminal, always attaching the nearest remaining terminal; prune non-terminal leaves.
inline SteinerTree steiner_grow(const Triangulation& G, const std::vector<int>& term) {
    const int n = G.n();
    std::vector<char> inT(n, 0), isTerm(n, 0);
    for (int v : term) isTerm[v] = 1;
    std::set<Edge> es;
    inT[term[0]] = 1;
    int remaining = static_cast<int>(term.size()) - 1;
    std::vector<int> dist(n), par(n);
    while (remaining > 0) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<int> q;
        for (int v = 0; v < n; ++v)
            if (inT[v]) dist[v] = 0, par[v] = -1, q.push(v);
        int hit = -1;
        while (!q.empty() && hit < 0) {
            int v = q.front();
            q.pop();
            for (const auto& e : G.rotation(v))
                if (dist[e.to] < 0) {
                    dist[e.to] = dist[v] + 1;
                    par[e.to] = v;
                    q.push(e.to);
                }
            // settle the whole layer before choosing, so the lowest id wins among ties
            if (q.empty() || dist[q.front()] > dist[v]) {
                for (int u : term)
                    if (!inT[u] && dist[u] >= 0 && dist[u] <= dist[v] + 1 && (hit < 0 || dist[u] < dist[hit] ||
                                                                              (dist[u] == dist[hit] && u < hit)))
                        hit = u;
            }
        }
        if (hit < 0) throw Error("disconnected input");
        for (int v = hit; !inT[v]; v = par[v]) {
            inT[v] = 1;
            es.insert(edge_key(v, par[v]));
            if (isTerm[v]) --remaining;
        }
    }
    // prune non-terminal leaves
    std::map<int, int> deg;
    for (auto [a, b] : es) ++deg[a], ++deg[b];
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = es.begin(); it != es.end();) {
            auto [a, b] = *it;
            int leaf = (deg[a] == 1 && !isTerm[a]) ? a : (deg[b] == 1 && !isTerm[b]) ? b : -1;
            if (leaf >= 0) {
                --deg[a], --deg[b];
                it = es.erase(it);
                changed = true;
            } else {
                ++it;
            }
        }
    }
    return tree_from_edges(std::move(es), {term[0]}, false);
}

}  // namespace detail

// Exact when |terminals| <= exact_limit, otherwise the nearest-terminal heuristic.
inline SteinerTree steiner_tree(const Triangulation& G, std::vector<int> terminals, int exact_limit = 12) {
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    if (terminals.empty()) throw Error("Steiner tree needs at least one terminal");
    for (int v : terminals)
        if (v < 0 || v >= G.n()) throw Error("terminal out of range");
    auto d = bfs_distances(G, {terminals[0]});
    for (int v : terminals)
        if (d[v] < 0) throw Error("disconnected input");
    if (terminals.size() == 1) return detail::tree_from_edges({}, terminals, true);
    if (static_cast<int>(terminals.size()) <= exact_limit) return detail::steiner_exact(G, terminals);
    return detail::steiner_grow(G, terminals);
}

// ---------------------------------------------------------------- trees

struct Tree {
    std::vector<int> vertices;
    std::vector<Edge> edges;
};

inline bool is_tree_in(const Triangulation& G, const Tree& T) {
    if (T.vertices.empty() || T.edges.size() + 1 != T.vertices.size()) return false;
    std::map<int, std::vector<int>> adj;
    for (int v : T.vertices) adj[v];
    for (auto [a, b] : T.edges) {
        if (!adj.count(a) || !adj.count(b) || !G.adjacent(a, b)) return false;
        adj[a].push_back(b), adj[b].push_back(a);
    }
    std::set<int> seen{T.vertices[0]};
    std::vector<int> st{T.vertices[0]};
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int u : adj[v])
            if (seen.insert(u).second) st.push_back(u);
    }
    return seen.size() == T.vertices.size();
}

// BFS spanning tree of T0 together with G[U], rooted at the smallest U0 vertex.
inline Tree spanning_tree_with_u(const Triangulation& G, const SteinerTree& T0, const std::vector<int>& U) {
    std::set<int> verts(T0.vertices.begin(), T0.vertices.end());
    verts.insert(U.begin(), U.end());
    std::vector<char> inU(G.n(), 0);
    for (int u : U) inU[u] = 1;
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : T0.edges) adj[a].push_back(b), adj[b].push_back(a);
    for (int u : U)
        for (const auto& e : G.rotation(u))
            if (inU[e.to] && u < e.to) adj[u].push_back(e.to), adj[e.to].push_back(u);
    for (auto& [v, l] : adj) std::sort(l.begin(), l.end());
    Tree T;
    const int root = T0.vertices.empty() ? *verts.begin() : T0.vertices.front();
    std::set<int> seen{root};
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        T.vertices.push_back(v);
        for (int u : adj[v])
            if (seen.insert(u).second) {
                T.edges.push_back(edge_key(v, u));
                q.push(u);
            }
    }
    if (seen.size() != verts.size()) throw Error("U is not connected to U0 through T0");
    std::sort(T.vertices.begin(), T.vertices.end());
    std::sort(T.edges.begin(), T.edges.end());
    return T;
}

// A disk needs at least two tree edges; attach lowest-id leaves until it has them.
inline void ensure_two_edges(const Triangulation& G, Tree& T) {
    while (T.edges.size() < 2) {
        bool grown = false;
        for (int v : T.vertices) {
            for (int u : G.neighbors(v)) {
                if (std::binary_search(T.vertices.begin(), T.vertices.end(), u)) continue;
                T.vertices.insert(std::upper_bound(T.vertices.begin(), T.vertices.end(), u), u);
                T.edges.push_back(edge_key(v, u));
                std::sort(T.edges.begin(), T.edges.end());
                grown = true;
                break;
            }
            if (grown) break;
        }
        if (!grown) throw Error("cannot extend tree");
    }
}

// ---------------------------------------------------------------- cut-open disk

struct CutOpenDisk {
    Triangulation disk;           // outer face marked
    Cycle boundary;               // disk ids
    std::vector<int> origin;      // disk vertex -> G vertex
    std::vector<char> is_copy;    // disk vertex is a copy of a tree vertex
    std::vector<int> tree_vertices;
    int copies() const { return static_cast<int>(boundary.size()); }
};

inline CutOpenDisk build_cut_open_disk(const Triangulation& G, const Tree& T) {
    if (!is_tree_in(G, T)) throw Error("T is not a tree of G");
    if (T.edges.size() < 2) throw Error("T needs at least two edges to cut open a disk");
    const int n = G.n();
    std::vector<char> inT(n, 0);
    for (int v : T.vertices) inT[v] = 1;
    for (int v = 0; v < n; ++v)
        if (G.degree(v) != 6 && !inT[v]) throw Error("T misses a vertex of degree other than 6");
    const Triangulation Go = oriented(G);
    std::vector<std::vector<int>> tslots(n);
    for (auto [a, b] : T.edges) tslots[a].push_back(Go.slot(a, b)), tslots[b].push_back(Go.slot(b, a));
    CutOpenDisk out;
    out.tree_vertices = T.vertices;
    std::vector<int> id(n, -1), base(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v)
        if (!inT[v]) id[v] = next++, out.origin.push_back(v), out.is_copy.push_back(0);
    for (int v : T.vertices) {
        std::sort(tslots[v].begin(), tslots[v].end());
        base[v] = next;
        for (size_t j = 0; j < tslots[v].size(); ++j) out.origin.push_back(v), out.is_copy.push_back(1);
        next += static_cast<int>(tslots[v].size());
    }
    auto copy_at = [&](int v, int corner) {
        const auto& ts = tslots[v];
        auto it = std::upper_bound(ts.begin(), ts.end(), corner);  // largest tree slot <= corner
        int j = it == ts.begin() ? static_cast<int>(ts.size()) - 1 : static_cast<int>(it - ts.begin()) - 1;
        return base[v] + j;
    };
    std::vector<std::vector<int>> polys;
    std::map<Edge, int> ecount;
    for (const auto& f : Go.faces()) {
        if (f.verts.size() != 3) throw Error("input is not a triangulation");
        std::vector<int> p;
        for (size_t i = 0; i < 3; ++i) p.push_back(inT[f.verts[i]] ? copy_at(f.verts[i], f.corners[i]) : id[f.verts[i]]);
        for (size_t i = 0; i < 3; ++i) ++ecount[edge_key(p[i], p[(i + 1) % 3])];
        polys.push_back(p);
    }
    std::map<int, std::vector<int>> badj;
    for (auto [e, c] : ecount)
        if (c == 1) badj[e.first].push_back(e.second), badj[e.second].push_back(e.first);
    if (badj.empty()) throw Error("internal: disk has no boundary");
    for (auto& [v, l] : badj)
        if (l.size() != 2) throw Error("internal: boundary is not a cycle");
    int start = badj.begin()->first, prev = -1, cur = start;
    do {
        out.boundary.push_back(cur);
        const auto& l = badj[cur];
        int nx = (l[0] != prev) ? l[0] : l[1];
        prev = cur;
        cur = nx;
    } while (cur != start);
    if (out.boundary.size() != badj.size()) throw Error("internal: boundary has several components");
    if (static_cast<int>(out.boundary.size()) != 2 * static_cast<int>(T.edges.size()))
        throw Error("internal: copy count differs from 2|E(T)|");
    out.disk = from_faces(next, polys, {out.boundary});
    return out;
}

// ---------------------------------------------------------------- lattice map

using Lattice = std::pair<int, int>;

inline const std::array<Lattice, 6>& lattice_units() {
    static const std::array<Lattice, 6> u = {{{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};
    return u;
}
inline bool is_unit(int da, int db) {
    for (auto [a, b] : lattice_units())
        if (a == da && b == db) return true;
    return false;
}
inline bool in_d_infinity(int a, int b, int phase = 0) { return mod(2LL * a - b - phase, 7) == 0; }

// Every lattice point has exactly one code point in its closed neighbourhood, for every phase.
inline bool d_infinity_is_perfect() {
    for (int phase = 0; phase < 7; ++phase)
        for (int a = -7; a <= 7; ++a)
            for (int b = -7; b <= 7; ++b) {
                int hits = in_d_infinity(a, b, phase);
                for (auto [da, db] : lattice_units()) hits += in_d_infinity(a + da, b + db, phase);
                if (hits != 1) return false;
            }
    return true;
}

struct GridMap {
    std::vector<Lattice> coord;
    std::vector<char> interior;
};

namespace detail {

// Propagate lattice coordinates across triangles: the far vertex of a neighbour is the reflection.
// `allowed` restricts the face set (nullptr: all unmarked faces). Returns false on conflict.
inline bool propagate_lattice(const Triangulation& G, const std::vector<TracedFace>& faces,
                              const std::vector<char>& allowed, int seed_face, int seed_vertex,
                              std::vector<Lattice>& coord, std::vector<char>& has, std::string* why) {
    std::map<Edge, std::vector<int>> by_edge;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        if (!allowed[f]) continue;
        const auto& v = faces[f].verts;
        for (size_t i = 0; i < 3; ++i) by_edge[edge_key(v[i], v[(i + 1) % 3])].push_back(f);
    }
    coord.assign(G.n(), {0, 0});
    has.assign(G.n(), 0);
    auto sv = faces[seed_face].verts;
    std::rotate(sv.begin(), std::find(sv.begin(), sv.end(), seed_vertex), sv.end());
    coord[sv[0]] = {0, 0}, coord[sv[1]] = {1, 0}, coord[sv[2]] = {0, 1};
    has[sv[0]] = has[sv[1]] = has[sv[2]] = 1;
    std::vector<char> done(faces.size(), 0);
    std::queue<int> q;
    q.push(seed_face);
    done[seed_face] = 1;
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        const auto& v = faces[f].verts;
        for (size_t i = 0; i < 3; ++i) {
            int x = v[i], y = v[(i + 1) % 3], z = v[(i + 2) % 3];
            for (int g : by_edge[edge_key(x, y)]) {
                if (g == f || done[g]) continue;
                int w = -1;
                for (int u : faces[g].verts)
                    if (u != x && u != y) w = u;
                Lattice img{coord[x].first + coord[y].first - coord[z].first,
                            coord[x].second + coord[y].second - coord[z].second};
                if (has[w] && coord[w] != img) {
                    if (why) *why = "propagation conflict at vertex " + std::to_string(w);
                    return false;
                }
                coord[w] = img;
                has[w] = 1;
                done[g] = 1;
                q.push(g);
            }
        }
    }
    return true;
}

}  // namespace detail

// Map a triangulated disk whose interior vertices all have degree 6 into the triangular lattice.
inline GridMap grid_map(const Triangulation& disk) {
    const int n = disk.n();
    GridMap gm;
    gm.interior.assign(n, 1);
    for (const auto& f : disk.marked_faces())
        for (int v : f) gm.interior[v] = 0;
    for (int v = 0; v < n; ++v)
        if (gm.interior[v] && disk.degree(v) != 6)
            throw Error("precondition violated: interior vertex " + std::to_string(v) + " has degree " +
                        std::to_string(disk.degree(v)));
    auto faces = disk.faces();
    std::vector<char> allowed(faces.size(), 0);
    int seed = -1;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        if (disk.is_marked(faces[f].verts)) continue;
        if (faces[f].verts.size() != 3) throw Error("precondition violated: non-triangular face");
        allowed[f] = 1;
        if (seed < 0 && std::find(faces[f].verts.begin(), faces[f].verts.end(), 0) != faces[f].verts.end()) seed = f;
    }
    if (seed < 0) throw Error("precondition violated: empty disk");
    std::vector<char> has;
    std::string why;
    if (!detail::propagate_lattice(disk, faces, allowed, seed, 0, gm.coord, has, &why))
        throw Error("precondition violated: " + why);
    for (int v = 0; v < n; ++v)
        if (!has[v]) throw Error("precondition violated: disk is not face-connected");
    // verification
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        if (!allowed[f]) continue;
        const auto& v = faces[f].verts;
        for (size_t i = 0; i < 3; ++i) {
            auto a = gm.coord[v[i]], b = gm.coord[v[(i + 1) % 3]];
            if (!is_unit(b.first - a.first, b.second - a.second))
                throw Error("precondition violated: face not mapped to a lattice face");
        }
    }
    for (int v = 0; v < n; ++v) {
        if (!gm.interior[v]) continue;
        std::set<Lattice> img;
        for (int u : disk.neighbors(v)) {
            auto d = Lattice{gm.coord[u].first - gm.coord[v].first, gm.coord[u].second - gm.coord[v].second};
            if (!is_unit(d.first, d.second)) throw Error("precondition violated: edge not mapped to a lattice edge");
            img.insert(d);
        }
        if (img.size() != 6) throw Error("precondition violated: neighbourhood not mapped bijectively");
    }
    return gm;
}

// ---------------------------------------------------------------- pullback

struct GridPullback {
    std::vector<int> D;         // G ids, sorted; V(T) plus the lifted lattice code
    std::vector<int> Dprime;    // disk ids
    int phase = 0;
    int t_prime = 0;            // disk vertices of degree > 6
    long long overlap_sum = 0;  // sum over D' with t'_v >= 1 of (t'_v - 1)
    bool overlap_degree_ok = true;  // shared neighbours of two D' vertices have degree > 6
    bool overlap_sum_ok = true;     // overlap_sum <= 2t' - 3 when t' >= 2
};

inline GridPullback grid_pullback(const Triangulation& G, const CutOpenDisk& cd, const GridMap& gm) {
    const auto& disk = cd.disk;
    GridPullback best;
    bool first = true;
    for (int phase = 0; phase < 7; ++phase) {
        std::vector<int> Dp;
        std::vector<char> inD(G.n(), 0);
        for (int v : cd.tree_vertices) inD[v] = 1;
        for (int v = 0; v < disk.n(); ++v)
            if (!cd.is_copy[v] && in_d_infinity(gm.coord[v].first, gm.coord[v].second, phase)) {
                Dp.push_back(v);
                inD[cd.origin[v]] = 1;
            }
        std::vector<int> D;
        for (int v = 0; v < G.n(); ++v)
            if (inD[v]) D.push_back(v);
        if (first || D.size() < best.D.size()) {
            best.D = std::move(D);
            best.Dprime = std::move(Dp);
            best.phase = phase;
            first = false;
        }
    }
    std::vector<char> inDp(disk.n(), 0);
    for (int v : best.Dprime) inDp[v] = 1;
    for (int v = 0; v < disk.n(); ++v) best.t_prime += disk.degree(v) > 6;
    for (int v : best.Dprime) {
        int tv = disk.degree(v) > 6;
        for (int u : disk.neighbors(v)) tv += disk.degree(u) > 6;
        if (tv >= 1) best.overlap_sum += tv - 1;
    }
    for (int u = 0; u < disk.n(); ++u) {
        int c = inDp[u];
        for (int x : disk.neighbors(u)) c += inDp[x];
        if (c >= 2 && disk.degree(u) <= 6) best.overlap_degree_ok = false;
    }
    if (best.t_prime >= 2)
        best.overlap_sum_ok = best.overlap_sum <= 2LL * best.t_prime - 3;
    else
        best.overlap_sum_ok = best.overlap_sum == 0;
    if (!is_dominating(G, best.D).ok) throw Error("internal: lattice pullback does not dominate");
    return best;
}

// ---------------------------------------------------------------- hexagon radius

// G_i rooted-isomorphic to hexagon_disk(i)?
inline bool ball_is_hexagon(const Triangulation& G, const std::vector<TracedFace>& faces, const Layers& L, int x,
                            int i) {
    auto ball = L.ball(i);
    const long long want = 1 + 3LL * i * (i + 1);
    if (static_cast<long long>(ball.size()) != want) return false;
    if (static_cast<int>(L.layer.size()) <= i) return false;
    std::vector<char> allowed(faces.size(), 0);
    int seed = -1;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
        if (faces[f].verts.size() != 3) continue;
        bool in = true;
        for (int v : faces[f].verts) in &= L.dist[v] >= 0 && L.dist[v] <= i;
        if (!in) continue;
        allowed[f] = 1;
        if (seed < 0 && std::find(faces[f].verts.begin(), faces[f].verts.end(), x) != faces[f].verts.end()) seed = f;
    }
    if (seed < 0) return false;
    std::vector<Lattice> coord;
    std::vector<char> has;
    if (!detail::propagate_lattice(G, faces, allowed, seed, x, coord, has, nullptr)) return false;
    std::set<Lattice> img;
    for (int v : ball) {
        if (!has[v]) return false;
        if (hex_norm(coord[v].first, coord[v].second) != L.dist[v]) return false;
        img.insert(coord[v]);
    }
    if (static_cast<long long>(img.size()) != want) return false;
    long long edges = 0;
    for (int v : ball)
        for (int u : G.neighbors(v)) {
            if (L.dist[u] < 0 || L.dist[u] > i || u < v) continue;
            if (!is_unit(coord[u].first - coord[v].first, coord[u].second - coord[v].second)) return false;
            ++edges;
        }
    return edges == 9LL * i * i + 3LL * i;
}

// Smallest r with G_r not a triangulated hexagon around x.
inline int hexagon_radius(const Triangulation& G, int x) {
    auto L = bfs_layers(G, x);
    auto faces = G.faces();
    int r = 1;
    while (ball_is_hexagon(G, faces, L, x, r)) ++r;
    if (static_cast<long long>(G.n()) <= 3LL * (r - 1) * (r - 1)) throw Error("internal: n > 3(r-1)^2 fails");
    return r;
}

// ---------------------------------------------------------------- boundary walks

struct BoundaryWalk {
    Cycle vertices;         // v_0 .. v_{m-1}, closed implicitly
    std::vector<int> rdeg;  // edges strictly to the right at each vertex
    char type = '?';        // 'A'..'E', or 'X' for any other sequence
    int length() const { return static_cast<int>(vertices.size()); }
};

inline char walk_type(const std::vector<int>& d) {
    const int m = static_cast<int>(d.size());
    int c1 = 0, c3 = 0, c4 = 0, other = 0;
    for (int x : d) {
        if (x == 1) ++c1;
        else if (x == 3) ++c3;
        else if (x == 4) ++c4;
        else if (x != 2) ++other;
    }
    if (other) return 'X';
    if (c1 == 0 && c3 == 0 && c4 == 0) return 'A';
    if (c1 == 0 && c3 == 1 && c4 == 0) return 'B';
    if (c1 == 0 && c3 == 0 && c4 == 1) return 'C';
    if (c1 == 0 && c4 == 0 && c3 == 2) {
        for (int i = 0; i < m; ++i)
            if (d[i] == 3 && d[(i + 1) % m] == 3) return 'D';
        return 'X';
    }
    if (c1 == 1 && c3 == 1 && c4 == 0) return 'E';
    return 'X';
}

// Outer degree sequence: the left side is the interior.
inline BoundaryWalk outer_degree_walk(const Triangulation& G, const Cycle& W) {
    const int m = static_cast<int>(W.size());
    if (m < 3) throw Error("walk does not bound: fewer than three vertices");
    BoundaryWalk bw;
    bw.vertices = W;
    for (int i = 0; i < m; ++i) {
        int v = W[i], prev = W[mod(i - 1, m)], next = W[(i + 1) % m];
        int pp = G.slot(v, prev), pn = G.slot(v, next);
        if (pp < 0 || pn < 0) throw Error("walk does not bound: consecutive vertices are not adjacent");
        bw.rdeg.push_back(mod(pp - pn - 1, G.degree(v)));
    }
    bw.type = walk_type(bw.rdeg);
    return bw;
}

// Expected (length change, type) of the inner walk.
inline std::pair<int, char> inner_walk_rule(char type) {
    switch (type) {
        case 'A': return {0, 'A'};
        case 'B': return {-1, 'B'};
        case 'C': return {-3, 'C'};
        case 'D': return {-2, 'C'};
        case 'E': return {0, 'E'};
        default: throw Error("walk type has no inner-walk rule");
    }
}

// Interior neighbours of W, concatenated in order. G must be oriented.
inline BoundaryWalk derive_inner_walk(const Triangulation& G, const BoundaryWalk& bw) {
    if (bw.type < 'A' || bw.type > 'E') throw Error("walk type has no inner-walk rule");
    for (int v : bw.vertices)
        if (G.degree(v) != 6) throw Error("walk vertex " + std::to_string(v) + " has degree " + std::to_string(G.degree(v)));
    {
        auto s = bw.vertices;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw Error("walk is not a cycle");
    }
    BoundaryWalk W = bw;
    if (W.type == 'C') {  // drop the vertex with no interior edges; the rest is type D
        Cycle c;
        for (int i = 0; i < W.length(); ++i)
            if (W.rdeg[i] != 4) c.push_back(W.vertices[i]);
        W = outer_degree_walk(G, c);
        if (W.type != 'D') throw Error("internal: type C reduction did not give type D");
    }
    const int m = W.length();
    Cycle out;
    for (int i = 0; i < m; ++i) {
        int v = W.vertices[i];
        int pp = G.slot(v, W.vertices[mod(i - 1, m)]), pn = G.slot(v, W.vertices[(i + 1) % m]);
        const int d = G.degree(v);
        for (int s = mod(pp + 1, d); s != pn; s = mod(s + 1, d)) {
            int q = G.rotation(v)[s].to;
            if (out.empty() || out.back() != q) out.push_back(q);
        }
    }
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    auto res = outer_degree_walk(G, out);
    auto [dl, ty] = inner_walk_rule(bw.type);
    if (res.length() != bw.length() + dl || res.type != ty) throw Error("inner walk breaks the type table");
    return res;
}

// Closed walks of a given type through degree-6 vertices, built from rotation offsets:
// straight is 3, an rdeg-3 corner is 2, rdeg-4 is 1, rdeg-1 is 4. The first vertex is always straight,
// which loses nothing since every rotation of a cycle is tried.
inline std::vector<BoundaryWalk> find_typed_walks(const Triangulation& Go, char type, int max_len, int limit = 1000) {
    std::vector<int> turns;
    switch (type) {
        case 'A': break;
        case 'B': turns = {2}; break;
        case 'C': turns = {1}; break;
        case 'D': turns = {2, 2}; break;
        case 'E': turns = {2, 4}; break;
        default: throw Error("unknown walk type");
    }
    std::set<Cycle> seen;
    std::vector<BoundaryWalk> out;
    std::vector<int> path;
    std::vector<char> onpath(Go.n(), 0);
    std::function<void(std::vector<int>&, bool)> go = [&](std::vector<int>& left, bool must_two) {
        if (static_cast<int>(out.size()) >= limit) return;
        const int cur = path.back(), prev = path[path.size() - 2];
        const int pin = Go.slot(cur, prev);
        std::set<int> offs;
        if (!must_two) offs.insert(3);
        for (int t : left)
            if (!must_two || t == 2) offs.insert(t);
        for (int off : offs) {
            std::vector<int> rest = left;
            if (off != 3) rest.erase(std::find(rest.begin(), rest.end(), off));
            const bool next_two = type == 'D' && off == 2 && !rest.empty();
            const int nx = Go.rotation(cur)[mod(pin + off, 6)].to;
            if (nx == path[0]) {
                if (!rest.empty() || next_two) continue;
                if (Go.rotation(path[0])[mod(Go.slot(path[0], cur) + 3, 6)].to != path[1]) continue;
                Cycle c(path.begin(), path.end());
                if (!seen.insert(canonical_cycle(c)).second) continue;
                auto bw = outer_degree_walk(Go, c);
                if (bw.type == type) out.push_back(std::move(bw));
                continue;
            }
            if (static_cast<int>(path.size()) >= max_len || onpath[nx] || Go.degree(nx) != 6) continue;
            path.push_back(nx);
            onpath[nx] = 1;
            go(rest, next_two);
            onpath[nx] = 0;
            path.pop_back();
        }
    };
    for (int u = 0; u < Go.n() && static_cast<int>(out.size()) < limit; ++u) {
        if (Go.degree(u) != 6) continue;
        for (int v : Go.neighbors(u)) {
            if (Go.degree(v) != 6) continue;
            path = {u, v};
            onpath[u] = onpath[v] = 1;
            auto t = turns;
            go(t, false);
            onpath[u] = onpath[v] = 0;
        }
    }
    return out;
}

// ---------------------------------------------------------------- cylinders

struct CylinderHandle {
    int w = 0, l = 0, k = 0;
    std::vector<std::vector<int>> z;  // z[b][a]
    Cycle seed;
    char seed_type = '?';
    std::vector<int> interior() const {
        std::vector<int> out;
        for (int b = 1; b < l; ++b) out.insert(out.end(), z[b].begin(), z[b].end());
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<int> turn_columns() const {
        std::vector<int> t;
        for (int a = 0; a < k; ++a) t.push_back(a);
        return t;
    }
};

namespace detail {

inline bool rings_match(const Triangulation& G, const std::vector<int>& lo, const std::vector<int>& hi, int k) {
    const int w = static_cast<int>(lo.size());
    std::set<int> his(hi.begin(), hi.end());
    int between = 0;
    for (int v : lo)
        for (int u : G.neighbors(v)) between += his.count(u) > 0;
    if (between != 2 * w) return false;
    for (int a = 0; a < w; ++a) {
        if (!G.adjacent(lo[a], hi[a])) return false;
        if (a < k ? !G.adjacent(lo[a], hi[(a + 1) % w]) : !G.adjacent(lo[(a + 1) % w], hi[a])) return false;
    }
    return true;
}

inline std::vector<int> ring_reading(const Cycle& R, int dir, int off) {
    const int w = static_cast<int>(R.size());
    std::vector<int> out(w);
    for (int a = 0; a < w; ++a) out[a] = R[mod(off + dir * a, w)];
    return out;
}

}  // namespace detail

// Label consecutive rings as z_{a,b}; the smallest workable k is chosen, so k <= w/2.
inline bool label_cylinder(const Triangulation& G, const std::vector<Cycle>& rings, CylinderHandle& H) {
    const int w = static_cast<int>(rings[0].size());
    const int L = static_cast<int>(rings.size()) - 1;
    if (L < 1) return false;
    for (int k = 0; k < w; ++k)
        for (int dir : {+1, -1})
            for (int o0 = 0; o0 < (k == 0 ? 1 : w); ++o0) {
                std::vector<std::vector<int>> z{detail::ring_reading(rings[0], dir, o0)};
                bool ok = true;
                for (int b = 0; b < L && ok; ++b) {
                    ok = false;
                    for (int o = 0; o < w; ++o) {
                        auto hi = detail::ring_reading(rings[b + 1], dir, o);
                        if (detail::rings_match(G, z[b], hi, k)) {
                            z.push_back(hi);
                            ok = true;
                            break;
                        }
                    }
                }
                if (ok) {
                    H.w = w, H.l = L, H.k = k, H.z = std::move(z);
                    return true;
                }
            }
    return false;
}

namespace detail {

// Closed walks through N_r[x] of length 2r or 2r+1 that go straight (offset 3) at each vertex,
// or turn once each way (offsets 2 and 4).
inline std::vector<Cycle> seed_cycles(const Triangulation& G, const std::vector<int>& dist, int r,
                                      const std::vector<char>& ok) {
    std::set<Cycle> found;
    std::vector<Cycle> out;
    const int maxlen = 2 * r + 1;
    std::vector<int> path;
    std::function<void(int, int)> go = [&](int lt, int rt) {
        const int t = static_cast<int>(path.size()) - 1;
        const int cur = path[t], prev = path[t - 1];
        const int pin = G.slot(cur, prev);
        for (int off : {3, 2, 4}) {
            int nl = lt + (off == 2), nr = rt + (off == 4);
            if (nl > 1 || nr > 1) continue;
            int nx = G.rotation(cur)[mod(pin + off, 6)].to;
            if (nx == path[0]) {
                const int len = t + 1;
                if (len < 2 * r || len > maxlen) continue;
                int p0 = G.slot(path[0], cur);
                for (int off0 : {3, 2, 4}) {
                    int fl = nl + (off0 == 2), fr = nr + (off0 == 4);
                    if (fl > 1 || fr > 1 || fl != fr) continue;
                    if (G.rotation(path[0])[mod(p0 + off0, 6)].to != path[1]) continue;
                    Cycle c(path.begin(), path.end());
                    if (found.insert(canonical_cycle(c)).second) out.push_back(c);
                }
                continue;
            }
            if (t + 1 >= maxlen || !ok[nx] || dist[nx] < 0 || dist[nx] > r) continue;
            if (std::find(path.begin(), path.end(), nx) != path.end()) continue;
            path.push_back(nx);
            go(nl, nr);
            path.pop_back();
        }
    };
    for (int u = 0; u < G.n(); ++u) {
        if (!ok[u] || dist[u] < 0 || dist[u] > r) continue;
        for (int v : G.neighbors(u)) {
            if (!ok[v] || dist[v] < 0 || dist[v] > r) continue;
            path = {u, v};
            go(0, 0);
        }
    }
    return out;
}

}  // namespace detail

// Find a (w,l,k)-cylinder through N_r[x] with U-free rings, l maximal over the seeds found.
inline CylinderHandle extract_cylinder(const Triangulation& Go, int x, int r, const std::vector<char>& inU) {
    auto dist = bfs_distances(Go, {x});
    for (int v = 0; v < Go.n(); ++v)
        if (dist[v] >= 0 && dist[v] <= 3 * r + 1 && inU[v])
            throw Error("precondition violated: N_{3r+1}[x] meets U");
    std::vector<char> ok(Go.n(), 0);
    for (int v = 0; v < Go.n(); ++v) ok[v] = Go.degree(v) == 6 && !inU[v];
    auto seeds = detail::seed_cycles(Go, dist, r, ok);
    CylinderHandle best;
    bool have = false;
    for (const auto& s : seeds) {
        BoundaryWalk sw;
        try {
            sw = outer_degree_walk(Go, s);
        } catch (const Error&) {
            continue;
        }
        if (sw.type != 'A' && sw.type != 'E') continue;
        const int w = sw.length();
        std::set<int> used(s.begin(), s.end());
        auto grow = [&](Cycle start) {
            std::vector<Cycle> out;
            BoundaryWalk cur = outer_degree_walk(Go, start);
            for (;;) {
                BoundaryWalk nx;
                try {
                    nx = derive_inner_walk(Go, cur);
                } catch (const Error&) {
                    break;
                }
                if (nx.length() != w || nx.type != sw.type) break;
                bool fine = true;
                for (int v : nx.vertices) fine &= ok[v] && !used.count(v);
                if (!fine) break;
                for (int v : nx.vertices) used.insert(v);
                out.push_back(nx.vertices);
                cur = nx;
            }
            return out;
        };
        auto fwd = grow(s);
        Cycle rs(s.rbegin(), s.rend());
        auto bwd = grow(rs);
        std::vector<Cycle> rings;
        for (auto it = bwd.rbegin(); it != bwd.rend(); ++it) rings.emplace_back(it->rbegin(), it->rend());
        rings.push_back(s);
        rings.insert(rings.end(), fwd.begin(), fwd.end());
        const int L = static_cast<int>(rings.size()) - 1;
        if (L < 2 || (have && L <= best.l)) continue;
        CylinderHandle H;
        if (!label_cylinder(Go, rings, H)) continue;
        H.seed = s;
        H.seed_type = sw.type;
        best = std::move(H);
        have = true;
    }
    if (!have) throw Error("no type-A/E seed cycle found");
    return best;
}

struct GluedSphere {
    Triangulation graph;
    std::vector<int> to_new;  // host vertex -> glued vertex, -1 for removed interior
    Cycle cstar;              // glued ring, new ids, in column order
};

// Delete the cylinder interior and glue ring 0 to ring l column by column.
inline GluedSphere remove_and_glue(const Triangulation& Go, const CylinderHandle& H) {
    const int n = Go.n();
    std::vector<char> gone(n, 0);
    for (int v : H.interior()) gone[v] = 1;
    std::vector<int> cid(n, -1);
    int m = 0;
    for (int v = 0; v < n; ++v)
        if (!gone[v]) cid[v] = m++;
    std::vector<std::vector<int>> polys;
    for (const auto& f : Go.faces()) {
        bool keep = true;
        for (int v : f.verts) keep &= !gone[v];
        if (!keep) continue;
        std::vector<int> p;
        for (int v : f.verts) p.push_back(cid[v]);
        polys.push_back(p);
    }
    Cycle c1, c2;
    for (int a = 0; a < H.w; ++a) c1.push_back(cid[H.z[0][a]]), c2.push_back(cid[H.z[H.l][a]]);
    // faces spanning ring 0 to ring l would have survived: drop them only if they are the cylinder's own
    auto holes = from_faces(m, polys, {c1, c2});
    std::vector<int> corr(H.w);
    std::iota(corr.begin(), corr.end(), 0);
    auto idf = identify_boundary_pair(holes, c1, c2, corr);
    GluedSphere out;
    out.graph = std::move(idf.graph);
    out.to_new.assign(n, -1);
    for (int v = 0; v < n; ++v)
        if (cid[v] >= 0) out.to_new[v] = idf.new_id[cid[v]];
    for (int a = 0; a < H.w; ++a) out.cstar.push_back(out.to_new[H.z[0][a]]);
    return out;
}

// ---------------------------------------------------------------- driver

struct SphereOptions {
    int small_n = 48;
    int steiner_exact_limit = 12;
    ExactOptions exact;
    int max_depth = 64;
};

struct DominationReport {
    std::vector<int> D;
    std::string branch;          // exact-small-n | u0-single | case1 | case2 | fallback
    std::string cylinder_class;  // cylinder-small-w | cylinder-large-w (case2 only)
    std::string note;
    int n = 0, VT = 0, VT0 = 0, P0 = 0, x = -1, r = 0, w = 0, l = 0, k = 0;
    int U0 = 0, U0bar = 0, dU = 0;
    bool steiner_exact = false;
    bool exact_complete = true;
    // lattice pullback
    int grid_size = -1, grid_phase = -1, t_prime = 0;
    long long overlap_sum = 0;
    bool overlap_degree_ok = true, overlap_sum_ok = true;
    bool grid_bound6_ok = true;  // 6|D_A| <= n + 9|V(T)| - 7
    bool grid_bound7_applies = false, grid_bound7_ok = true;  // 7|D_A| <= n + 8|V(T)| - 2
    // recursion
    bool layer_property_ok = true;  // N_i(x) misses U for i < floor(|P0|/2) - d_U
    int pattern_size = 0;
    bool pattern_bound_ok = true;  // 6|S_Z| < w l + 30 w
    std::shared_ptr<DominationReport> child;
    // overall
    double lemma9_bound = 0;
    bool lemma9_applicable = false, lemma9_ok = true;
    std::string dispatch;  // for max degree <= 6 with U = defects
    int depth() const { return child ? 1 + child->depth() : 0; }
};

// 6|D| <= n + 18(|U0|-1)(2 sqrt(3n) + 2 d_U + 9) + 9|U0bar| + 2, exactly.
inline bool lemma9_holds(long long D, long long n, long long u0, long long u0bar, long long dU) {
    if (u0 < 1) u0 = 1;
    long long lhs = 6 * D - n - 18 * (u0 - 1) * (2 * dU + 9) - 9 * u0bar - 2;
    if (lhs <= 0) return true;
    __int128 L = lhs, R = static_cast<__int128>(36) * (u0 - 1);  // compare lhs <= R sqrt(3n)
    return L * L <= R * R * 3 * n;
}

inline double lemma9_value(double n, double u0, double u0bar, double dU) {
    return n / 6 + 3 * (std::max(u0, 1.0) - 1) * (2 * std::sqrt(3 * n) + 2 * dU + 9) + 1.5 * u0bar + 1.0 / 3;
}

struct PathChoice {
    std::vector<int> path;  // vertices of P0
    std::vector<int> u0prime;
};

// Longest maximal path of T0 with no interior vertex in U0' (U0 plus non-degree-2 tree vertices).
inline PathChoice longest_special_path(const SteinerTree& T0, const std::vector<int>& U0) {
    std::map<int, std::vector<int>> adj;
    for (auto [a, b] : T0.edges) adj[a].push_back(b), adj[b].push_back(a);
    for (auto& [v, l] : adj) std::sort(l.begin(), l.end());
    std::set<int> up(U0.begin(), U0.end());
    for (int v : T0.vertices)
        if (adj[v].size() != 2) up.insert(v);
    PathChoice pc;
    pc.u0prime.assign(up.begin(), up.end());
    for (int s : pc.u0prime)
        for (int first : adj[s]) {
            std::vector<int> p{s, first};
            while (!up.count(p.back())) {
                const auto& nb = adj[p.back()];
                p.push_back(nb[0] == p[p.size() - 2] ? nb[1] : nb[0]);
            }
            if (p.back() < s) continue;  // each path once, from its smaller end
            if (p.size() > pc.path.size()) pc.path = p;
        }
    return pc;
}

inline DominationReport dominate_sphere(const Triangulation& G, const USets& us, const SphereOptions& opt = {},
                                        int depth = 0);

namespace detail {

inline void finish_report(const Triangulation& G, const USets& us, DominationReport& rep) {
    auto cert = is_dominating(G, rep.D);
    if (!cert.ok) throw Error("internal: result does not dominate vertex " + std::to_string(cert.undominated));
    for (int u : us.U())
        if (!std::binary_search(rep.D.begin(), rep.D.end(), u)) throw Error("internal: result misses a U vertex");
    rep.lemma9_bound = lemma9_value(G.n(), static_cast<double>(us.U0.size()), static_cast<double>(us.U0bar.size()), us.dU);
    rep.lemma9_applicable = rep.lemma9_bound <= G.n();
    rep.lemma9_ok = lemma9_holds(static_cast<long long>(rep.D.size()), G.n(), static_cast<long long>(us.U0.size()),
                                 static_cast<long long>(us.U0bar.size()), us.dU);
}

}  // namespace detail

inline DominationReport dominate_sphere(const Triangulation& G, const USets& us_in, const SphereOptions& opt,
                                        int depth) {
    auto sc = classify_surface(G);
    if (!sc.sphere()) throw Error("dominate_sphere needs a sphere triangulation, got " + sc.name());
    USets us = us_in;
    us.normalize();
    {
        auto d = validate_usets(G, us);
        if (!d.empty()) throw Error("invalid U-sets: " + d.front());
    }
    const Triangulation Go = oriented(G);
    const int n = G.n();
    const auto U = us.U();
    std::vector<char> inU(n, 0);
    for (int u : U) inU[u] = 1;
    DominationReport rep;
    rep.n = n;
    rep.U0 = static_cast<int>(us.U0.size());
    rep.U0bar = static_cast<int>(us.U0bar.size());
    rep.dU = us.dU;
    const bool plain = Go.max_degree() <= 6 && us.U0bar.empty() && us.U0 == Go.defect_vertices();

    if (n <= opt.small_n) {
        ExactOptions eo = opt.exact;
        eo.override_limit = true;
        auto ex = exact_min_dominating_set(G, U, eo);
        rep.D = ex.set;
        rep.exact_complete = ex.complete;
        rep.branch = "exact-small-n";
        detail::finish_report(G, us, rep);
        return rep;
    }

    auto fallback = [&](const std::string& why) {
        rep.D = greedy_dominating_set(G, U);
        rep.branch = "fallback";
        rep.note = why;
        rep.child.reset();
        detail::finish_report(G, us, rep);
        return rep;
    };

    // Steiner tree, spanning tree with U, cut-open disk, lattice pullback
    SteinerTree T0;
    Tree T;
    GridPullback gp;
    try {
        T0 = steiner_tree(Go, us.U0.empty() ? U : us.U0, opt.steiner_exact_limit);
        rep.steiner_exact = T0.exact;
        rep.VT0 = T0.size();
        T = spanning_tree_with_u(Go, T0, U);
        ensure_two_edges(Go, T);
        rep.VT = static_cast<int>(T.vertices.size());
        auto cd = build_cut_open_disk(Go, T);
        auto gm = grid_map(cd.disk);
        gp = grid_pullback(Go, cd, gm);
    } catch (const Error& e) {
        return fallback(std::string("lattice step failed: ") + e.what());
    }
    rep.grid_size = static_cast<int>(gp.D.size());
    rep.grid_phase = gp.phase;
    rep.t_prime = gp.t_prime;
    rep.overlap_sum = gp.overlap_sum;
    rep.overlap_degree_ok = gp.overlap_degree_ok;
    rep.overlap_sum_ok = gp.overlap_sum_ok;
    rep.grid_bound6_ok = 6LL * rep.grid_size <= static_cast<long long>(n) + 9LL * rep.VT - 7;
    rep.grid_bound7_applies = plain;
    if (plain) rep.grid_bound7_ok = 7LL * rep.grid_size <= static_cast<long long>(n) + 8LL * rep.VT - 2;
    if (plain) {
        // dispatch: the lattice bound already beats n/6 + 1.05e7 at any feasible size
        rep.dispatch = 6LL * rep.grid_size <= static_cast<long long>(n) + 63'000'000LL ? "grid-bound" : "cylinder";
    }

    if (us.U0.size() <= 1) {
        rep.D = gp.D;
        rep.branch = "u0-single";
        detail::finish_report(G, us, rep);
        return rep;
    }

    auto pc = longest_special_path(T0, us.U0);
    rep.P0 = static_cast<int>(pc.path.size()) - 1;
    rep.x = pc.path[rep.P0 / 2];
    const long long A = rep.P0 - 2LL * us.dU - 9;
    const bool case1 = A < 0 || A * A < 12LL * n;
    {
        auto L = bfs_layers(Go, rep.x);
        const int lim = rep.P0 / 2 - us.dU;
        for (int i = 0; i < lim && i < static_cast<int>(L.layer.size()); ++i)
            for (int v : L.layer[i])
                if (inU[v]) rep.layer_property_ok = false;
    }
    if (case1 || depth >= opt.max_depth) {
        rep.D = gp.D;
        rep.branch = "case1";
        if (!case1) rep.note = "recursion depth limit";
        detail::finish_report(G, us, rep);
        return rep;
    }

    // Case 2: strip a long cylinder and recurse on the glued sphere
    CylinderHandle H;
    GluedSphere gs;
    try {
        rep.r = hexagon_radius(Go, rep.x);
        H = extract_cylinder(Go, rep.x, rep.r, inU);
        gs = remove_and_glue(Go, H);
    } catch (const Error& e) {
        return fallback(std::string("cylinder step failed: ") + e.what());
    }
    rep.w = H.w, rep.l = H.l, rep.k = H.k;
    rep.cylinder_class = H.w <= 12 ? "cylinder-small-w" : "cylinder-large-w";
    auto pat = cylinder_pattern(H.w, H.l, H.k);
    rep.pattern_size = static_cast<int>(pat.cells.size());
    rep.pattern_bound_ok = 6LL * rep.pattern_size < 1LL * H.w * H.l + 30LL * H.w;
    USets ustar;
    for (int u : us.U0) ustar.U0.push_back(gs.to_new[u]);
    for (int u : us.U0bar) ustar.U0bar.push_back(gs.to_new[u]);
    ustar.dU = us.dU;
    ustar.normalize();
    auto sub = std::make_shared<DominationReport>(dominate_sphere(gs.graph, ustar, opt, depth + 1));
    std::vector<int> back(gs.graph.n(), -1);
    for (int v = 0; v < n; ++v)
        if (gs.to_new[v] >= 0 && back[gs.to_new[v]] < 0) back[gs.to_new[v]] = v;
    std::vector<char> onC(gs.graph.n(), 0), inD(n, 0);
    for (int v : gs.cstar) onC[v] = 1;
    for (int v : sub->D)
        if (!onC[v]) inD[back[v]] = 1;
    for (auto [a, b] : pat.cells) inD[H.z[b][a]] = 1;
    for (int a = 0; a < H.w; ++a) inD[H.z[0][a]] = inD[H.z[H.l][a]] = 1;
    rep.D.clear();
    for (int v = 0; v < n; ++v)
        if (inD[v]) rep.D.push_back(v);
    rep.child = sub;
    rep.branch = "case2";
    detail::finish_report(G, us, rep);
    return rep;
}

// Convenience: U = U0 = vertices of degree other than 6.
inline DominationReport dominate_sphere(const Triangulation& G) { return dominate_sphere(G, USets::initial(G)); }

}  // namespace surfdom
