#pragma once
// Signed rotation systems for triangulations of closed surfaces.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace surfdom {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Dart {
    int to = -1;
    int sign = +1;
    bool operator==(const Dart&) const = default;
};

using Rotation = std::vector<Dart>;
using Cycle = std::vector<int>;  // closed, first vertex not repeated

struct Walk {
    std::vector<int> vertices;
    bool closed = false;

    static Walk from_cycle(const Cycle& c) {
        Walk w{c, true};
        if (!c.empty()) w.vertices.push_back(c.front());
        return w;
    }
    Cycle to_cycle() const {
        Cycle c = vertices;
        if (closed && c.size() > 1 && c.front() == c.back()) c.pop_back();
        return c;
    }
};

// One traced face: vertex sequence and the corner index used at each vertex.
// Corner c at v sits between rotation slots c and c+1.
struct TracedFace {
    std::vector<int> verts;
    std::vector<int> corners;
};

inline int mod(long long a, long long m) {
    long long r = a % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

// Rotate a cyclic sequence to its lexicographically smallest reading, both directions.
inline std::vector<int> canonical_cycle(std::vector<int> c) {
    if (c.empty()) return c;
    auto best_from = [](const std::vector<int>& s) {
        std::vector<int> best;
        const size_t m = s.size();
        size_t i0 = std::min_element(s.begin(), s.end()) - s.begin();
        for (size_t i = 0; i < m; ++i) {
            if (s[i] != s[i0]) continue;
            std::vector<int> r(m);
            for (size_t j = 0; j < m; ++j) r[j] = s[(i + j) % m];
            if (best.empty() || r < best) best = r;
        }
        return best;
    };
    auto a = best_from(c);
    std::reverse(c.begin(), c.end());
    auto b = best_from(c);
    return std::min(a, b);
}

class Triangulation {
public:
    Triangulation() = default;

    explicit Triangulation(std::vector<Rotation> rot, std::vector<std::vector<int>> marked = {})
        : rot_(std::move(rot)), marked_(std::move(marked)) {
        for (int v = 0; v < n(); ++v) canonicalize(rot_[v]);
        for (auto& f : marked_) f = canonical_cycle(f);
        std::sort(marked_.begin(), marked_.end());
    }

    int n() const { return static_cast<int>(rot_.size()); }
    const Rotation& rotation(int v) const { return rot_.at(v); }
    const std::vector<Rotation>& rotations() const { return rot_; }
    int degree(int v) const { return static_cast<int>(rot_[v].size()); }
    const std::vector<std::vector<int>>& marked_faces() const { return marked_; }

    int slot(int v, int u) const {
        const auto& r = rot_[v];
        for (size_t i = 0; i < r.size(); ++i)
            if (r[i].to == u) return static_cast<int>(i);
        return -1;
    }
    bool adjacent(int u, int v) const { return slot(u, v) >= 0; }
    int sign(int u, int v) const {
        int s = slot(u, v);
        if (s < 0) throw Error("not an edge");
        return rot_[u][s].sign;
    }
    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        for (const auto& d : rot_[v]) out.push_back(d.to);
        return out;
    }
    long long edge_count() const {
        long long s = 0;
        for (const auto& r : rot_) s += static_cast<long long>(r.size());
        return s / 2;
    }
    int max_degree() const {
        int m = 0;
        for (int v = 0; v < n(); ++v) m = std::max(m, degree(v));
        return m;
    }
    std::vector<int> defect_vertices() const {
        std::vector<int> out;
        for (int v = 0; v < n(); ++v)
            if (degree(v) != 6) out.push_back(v);
        return out;
    }
    bool is_marked(const std::vector<int>& face) const {
        if (marked_.empty()) return false;
        return std::binary_search(marked_.begin(), marked_.end(), canonical_cycle(face));
    }

    // Face tracing. corner_face (optional) receives, per vertex and corner, the face id.
    std::vector<TracedFace> faces(std::vector<std::vector<int>>* corner_face = nullptr) const {
        std::vector<std::vector<int>> cf(n());
        for (int v = 0; v < n(); ++v) cf[v].assign(rot_[v].size(), -1);
        std::vector<TracedFace> out;
        const size_t limit = 2 * static_cast<size_t>(edge_count()) + 2;
        for (int v0 = 0; v0 < n(); ++v0) {
            for (int c0 = 0; c0 < degree(v0); ++c0) {
                if (cf[v0][c0] >= 0) continue;
                TracedFace f;
                const int fid = static_cast<int>(out.size());
                int cur = v0, in = c0, lam = +1;
                while (true) {
                    const int d = degree(cur);
                    const int outs = mod(in + lam, d);
                    const int corner = lam > 0 ? in : outs;
                    if (cf[cur][corner] >= 0) break;  // malformed system; stop
                    cf[cur][corner] = fid;
                    f.verts.push_back(cur);
                    f.corners.push_back(corner);
                    const Dart& e = rot_[cur][outs];
                    const int next = e.to;
                    lam *= e.sign;
                    const int back = slot(next, cur);
                    if (back < 0 || f.verts.size() > limit) break;
                    cur = next;
                    in = back;
                    if (cur == v0 && in == c0 && lam == +1) break;
                }
                out.push_back(std::move(f));
            }
        }
        if (corner_face) *corner_face = std::move(cf);
        return out;
    }

    long long face_count() const { return static_cast<long long>(faces().size()); }

private:
    static void canonicalize(Rotation& r) {
        if (r.empty()) return;
        auto it = std::min_element(r.begin(), r.end(),
                                   [](const Dart& a, const Dart& b) { return a.to < b.to; });
        std::rotate(r.begin(), it, r.end());
    }

    std::vector<Rotation> rot_;
    std::vector<std::vector<int>> marked_;
};

// Build a signed rotation system from unoriented polygons. Every edge must lie in exactly
// two polygons and every vertex link must be a single cycle.
inline Triangulation from_faces(int n, const std::vector<std::vector<int>>& polys,
                                const std::vector<std::vector<int>>& marked = {}) {
    struct Wedge {
        int face, pred, succ;
    };
    std::vector<std::vector<Wedge>> wedges(n);
    std::map<std::pair<int, int>, int> edge_uses;
    auto all = polys;
    for (const auto& m : marked) all.push_back(m);
    for (int f = 0; f < static_cast<int>(all.size()); ++f) {
        const auto& p = all[f];
        const int k = static_cast<int>(p.size());
        if (k < 3) throw Error("degenerate face");
        for (int i = 0; i < k; ++i) {
            int a = p[mod(i - 1, k)], v = p[i], b = p[mod(i + 1, k)];
            if (v < 0 || v >= n) throw Error("vertex out of range");
            for (int j = i + 1; j < k; ++j)
                if (p[j] == v) throw Error("loop");
            wedges[v].push_back({f, a, b});
            edge_uses[{std::min(v, b), std::max(v, b)}]++;
        }
    }
    for (const auto& [e, c] : edge_uses)
        if (c != 2) throw Error(c > 2 ? "parallel edge" : "edge on a single face");

    // F[v][face]: +1 if the walk around v enters this face's wedge at its pred.
    std::vector<std::vector<std::pair<int, int>>> F(n);  // (face, +-1)
    std::vector<Rotation> rot(n);
    for (int v = 0; v < n; ++v) {
        auto& W = wedges[v];
        if (W.empty()) throw Error("isolated vertex");
        std::vector<char> used(W.size(), 0);
        // index wedges by neighbour
        std::map<int, std::vector<int>> by_nb;
        for (int i = 0; i < static_cast<int>(W.size()); ++i) {
            by_nb[W[i].pred].push_back(i);
            by_nb[W[i].succ].push_back(i);
        }
        int cur = 0;
        int entry = W[0].pred;
        std::vector<int> seq;
        for (size_t step = 0; step < W.size(); ++step) {
            if (used[cur]) throw Error("non-manifold vertex link");
            used[cur] = 1;
            const bool fwd = W[cur].pred == entry;
            F[v].push_back({W[cur].face, fwd ? +1 : -1});
            seq.push_back(entry);
            const int exit = fwd ? W[cur].succ : W[cur].pred;
            const auto& cand = by_nb[exit];
            int nxt = -1;
            for (int c : cand)
                if (c != cur) nxt = c;
            if (nxt < 0) throw Error("non-manifold vertex link");
            entry = exit;
            cur = nxt;
        }
        if (cur != 0 || entry != W[0].pred) throw Error("non-manifold vertex link");
        for (size_t i = 0; i < used.size(); ++i)
            if (!used[i]) throw Error("non-manifold vertex link");
        for (int u : seq) rot[v].push_back({u, +1});
    }
    auto Fval = [&](int v, int face) {
        for (auto [f, s] : F[v])
            if (f == face) return s;
        throw Error("internal: face missing at vertex");
    };
    for (int f = 0; f < static_cast<int>(all.size()); ++f) {
        const auto& p = all[f];
        const int k = static_cast<int>(p.size());
        for (int i = 0; i < k; ++i) {
            int u = p[i], v = p[(i + 1) % k];
            int s = Fval(u, f) * Fval(v, f);
            for (auto& d : rot[u])
                if (d.to == v) d.sign = s;
            for (auto& d : rot[v])
                if (d.to == u) d.sign = s;
        }
    }
    return Triangulation(std::move(rot), marked);
}

// ---------------------------------------------------------------- validation

inline std::vector<std::string> validate(const Triangulation& G,
                                         std::optional<int> expected_euler = std::nullopt) {
    std::vector<std::string> diag;
    const int n = G.n();
    bool structural_ok = true;
    for (int v = 0; v < n; ++v) {
        std::set<int> seen;
        for (const auto& d : G.rotation(v)) {
            if (d.to < 0 || d.to >= n) {
                diag.push_back("vertex " + std::to_string(v) + ": neighbor out of range");
                structural_ok = false;
                continue;
            }
            if (d.to == v) {
                diag.push_back("vertex " + std::to_string(v) + ": loop");
                structural_ok = false;
            }
            if (d.sign != 1 && d.sign != -1) {
                diag.push_back("vertex " + std::to_string(v) + ": bad signature");
                structural_ok = false;
            }
            if (!seen.insert(d.to).second) {
                diag.push_back("duplicate neighbor " + std::to_string(d.to) + " at vertex " +
                               std::to_string(v));
                structural_ok = false;
            }
        }
        if (G.degree(v) == 0) {
            diag.push_back("vertex " + std::to_string(v) + ": isolated");
            structural_ok = false;
        }
    }
    if (!structural_ok) return diag;
    for (int v = 0; v < n; ++v)
        for (const auto& d : G.rotation(v)) {
            int s = G.slot(d.to, v);
            if (s < 0) {
                diag.push_back("asymmetric adjacency at edge " + std::to_string(v) + "-" +
                               std::to_string(d.to));
                structural_ok = false;
            } else if (G.rotation(d.to)[s].sign != d.sign) {
                diag.push_back("signature mismatch at edge " + std::to_string(v) + "-" +
                               std::to_string(d.to));
                structural_ok = false;
            }
        }
    if (!structural_ok) return diag;
    auto fs = G.faces();
    std::set<std::vector<int>> traced_marked;
    for (size_t i = 0; i < fs.size(); ++i) {
        const auto& f = fs[i];
        std::set<int> distinct(f.verts.begin(), f.verts.end());
        if (G.is_marked(f.verts) && distinct.size() == f.verts.size()) {
            traced_marked.insert(canonical_cycle(f.verts));
            continue;
        }
        if (f.verts.size() != 3) {
            std::string s = "non-triangular face (length " + std::to_string(f.verts.size()) + "):";
            for (int v : f.verts) s += " " + std::to_string(v);
            diag.push_back(s);
        }
    }
    for (const auto& m : G.marked_faces())
        if (!traced_marked.count(m)) {
            std::string s = "marked face not traced:";
            for (int v : m) s += " " + std::to_string(v);
            diag.push_back(s);
        }
    if (expected_euler) {
        long long chi = n - G.edge_count() + static_cast<long long>(fs.size());
        if (chi != *expected_euler)
            diag.push_back("euler characteristic " + std::to_string(chi) + " != declared " +
                           std::to_string(*expected_euler));
    }
    return diag;
}

// ---------------------------------------------------------------- invariants

inline int euler_characteristic(const Triangulation& G) {
    return static_cast<int>(G.n() - G.edge_count() + G.face_count());
}

inline std::vector<int> component_labels(const Triangulation& G, int* count = nullptr) {
    std::vector<int> lab(G.n(), -1);
    int c = 0;
    for (int s = 0; s < G.n(); ++s) {
        if (lab[s] >= 0) continue;
        std::vector<int> st{s};
        lab[s] = c;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (const auto& d : G.rotation(v))
                if (lab[d.to] < 0) {
                    lab[d.to] = c;
                    st.push_back(d.to);
                }
        }
        ++c;
    }
    if (count) *count = c;
    return lab;
}

inline bool is_connected(const Triangulation& G) {
    int c = 0;
    component_labels(G, &c);
    return c <= 1;
}

// Local flips from a BFS tree rooted at the lowest vertex of each component.
// Returns the flip vector and whether every edge became consistent.
inline std::pair<std::vector<int>, bool> orientation_flips(const Triangulation& G) {
    std::vector<int> flip(G.n(), 0);
    bool ok = true;
    for (int s = 0; s < G.n(); ++s) {
        if (flip[s]) continue;
        flip[s] = 1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const auto& d : G.rotation(v)) {
                int want = flip[v] * d.sign;
                if (!flip[d.to]) {
                    flip[d.to] = want;
                    q.push(d.to);
                } else if (flip[d.to] != want) {
                    ok = false;
                }
            }
        }
    }
    return {flip, ok};
}

inline bool is_orientable(const Triangulation& G) { return orientation_flips(G).second; }

// Apply the BFS-tree gauge: tree edges become +1. For orientable input all signs become +1.
inline Triangulation gauge_fixed(const Triangulation& G) {
    auto [flip, ok] = orientation_flips(G);
    (void)ok;
    std::vector<Rotation> rot(G.n());
    for (int v = 0; v < G.n(); ++v) {
        Rotation r = G.rotation(v);
        for (auto& d : r) d.sign = flip[v] * flip[d.to] * d.sign;
        if (flip[v] < 0) std::reverse(r.begin(), r.end());
        rot[v] = std::move(r);
    }
    return Triangulation(std::move(rot), G.marked_faces());
}

inline Triangulation oriented(const Triangulation& G) {
    if (!is_orientable(G)) throw Error("non-orientable input");
    return gauge_fixed(G);
}

struct SurfaceClass {
    bool orientable = true;
    int genus = 0;
    int euler = 2;
    bool sphere() const { return orientable && genus == 0; }
    std::string name() const {
        return (orientable ? "S_" : "N_") + std::to_string(genus);
    }
    int euler_genus() const { return orientable ? 2 * genus : genus; }
};

inline SurfaceClass classify_surface(const Triangulation& G) {
    if (!is_connected(G)) throw Error("disconnected input");
    SurfaceClass s;
    s.euler = euler_characteristic(G);
    s.orientable = is_orientable(G);
    if (s.orientable) {
        if ((2 - s.euler) % 2 != 0 || s.euler > 2) throw Error("inconsistent euler characteristic");
        s.genus = (2 - s.euler) / 2;
    } else {
        if (s.euler > 1) throw Error("inconsistent euler characteristic");
        s.genus = 2 - s.euler;
    }
    return s;
}

// ---------------------------------------------------------------- distances

inline std::vector<int> bfs_distances(const Triangulation& G, const std::vector<int>& sources,
                                      int max_depth = -1) {
    std::vector<int> dist(G.n(), -1);
    std::queue<int> q;
    for (int s : sources) {
        if (s < 0 || s >= G.n()) throw Error("vertex out of range");
        if (dist[s] < 0) {
            dist[s] = 0;
            q.push(s);
        }
    }
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        if (max_depth >= 0 && dist[v] >= max_depth) continue;
        for (const auto& d : G.rotation(v))
            if (dist[d.to] < 0) {
                dist[d.to] = dist[v] + 1;
                q.push(d.to);
            }
    }
    return dist;
}

struct Layers {
    std::vector<int> dist;                // -1 if unreachable
    std::vector<std::vector<int>> layer;  // layer[i] = N_i(x), in discovery order
    std::vector<int> ball(int i) const {
        std::vector<int> out;
        for (int j = 0; j <= i && j < static_cast<int>(layer.size()); ++j)
            out.insert(out.end(), layer[j].begin(), layer[j].end());
        return out;
    }
};

inline Layers bfs_layers(const Triangulation& G, int x) {
    if (x < 0 || x >= G.n()) throw Error("vertex out of range");
    Layers L;
    L.dist.assign(G.n(), -1);
    L.dist[x] = 0;
    L.layer.push_back({x});
    std::queue<int> q;
    q.push(x);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (const auto& d : G.rotation(v))  // rotations start at the lowest-id neighbour
            if (L.dist[d.to] < 0) {
                L.dist[d.to] = L.dist[v] + 1;
                if (static_cast<int>(L.layer.size()) <= L.dist[d.to]) L.layer.emplace_back();
                L.layer[L.dist[d.to]].push_back(d.to);
                q.push(d.to);
            }
    }
    return L;
}

// ---------------------------------------------------------------- components

struct Piece {
    Triangulation graph;
    std::vector<int> origin;  // piece vertex -> source vertex
};

// Induced sub-rotation systems of each connected component, renumbered by increasing id.
inline std::vector<Piece> split_components(const Triangulation& G) {
    int c = 0;
    auto lab = component_labels(G, &c);
    std::vector<Piece> out(c);
    std::vector<int> local(G.n());
    for (int v = 0; v < G.n(); ++v) {
        local[v] = static_cast<int>(out[lab[v]].origin.size());
        out[lab[v]].origin.push_back(v);
    }
    for (int i = 0; i < c; ++i) {
        std::vector<Rotation> rot;
        for (int v : out[i].origin) {
            Rotation r = G.rotation(v);
            for (auto& d : r) d.to = local[d.to];
            rot.push_back(std::move(r));
        }
        std::vector<std::vector<int>> mk;
        for (const auto& f : G.marked_faces())
            if (lab[f[0]] == i) {
                std::vector<int> g;
                for (int v : f) g.push_back(local[v]);
                mk.push_back(g);
            }
        out[i].graph = Triangulation(std::move(rot), std::move(mk));
    }
    return out;
}

// ---------------------------------------------------------------- TRI format

inline std::string serialize_tri(const Triangulation& G) {
    std::ostringstream os;
    os << "tri 1\n";
    os << "vertices " << G.n() << "\n";
    if (!G.marked_faces().empty()) {
        os << "marked-faces";
        for (const auto& f : G.marked_faces()) {
            os << ' ';
            for (size_t i = 0; i < f.size(); ++i) os << (i ? "-" : "") << f[i];
        }
        os << "\n";
    }
    for (int v = 0; v < G.n(); ++v) {
        os << 'v' << v << ':';
        for (const auto& d : G.rotation(v)) os << ' ' << d.to << ':' << (d.sign > 0 ? '+' : '-');
        os << "\n";
    }
    return os.str();
}

inline Triangulation parse_tri(const std::string& text) {
    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            auto h = line.find('#');
            if (h != std::string::npos) line.resize(h);
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
                line.pop_back();
            size_t b = line.find_first_not_of(" \t");
            if (b == std::string::npos) continue;
            lines.push_back(line.substr(b));
        }
    }
    if (lines.size() < 2 || lines[0] != "tri 1") throw Error("malformed header");
    int n = -1;
    {
        std::istringstream is(lines[1]);
        std::string kw;
        if (!(is >> kw >> n) || kw != "vertices" || n < 0) throw Error("malformed header");
    }
    size_t li = 2;
    std::vector<std::vector<int>> marked;
    if (li < lines.size() && lines[li].rfind("marked-faces", 0) == 0) {
        std::istringstream is(lines[li].substr(12));
        std::string tok;
        while (is >> tok) {
            std::vector<int> f;
            std::istringstream ts(tok);
            std::string num;
            while (std::getline(ts, num, '-')) {
                try {
                    f.push_back(std::stoi(num));
                } catch (...) {
                    throw Error("malformed marked face");
                }
            }
            if (f.size() < 3) throw Error("malformed marked face");
            for (int v : f)
                if (v < 0 || v >= n) throw Error("malformed marked face");
            marked.push_back(f);
        }
        ++li;
    }
    if (lines.size() - li != static_cast<size_t>(n)) throw Error("malformed vertex lines");
    std::vector<Rotation> rot(n);
    for (int v = 0; v < n; ++v, ++li) {
        std::istringstream is(lines[li]);
        std::string head;
        is >> head;
        if (head != "v" + std::to_string(v) + ":") throw Error("malformed vertex line " + std::to_string(v));
        std::string tok;
        std::set<int> seen;
        while (is >> tok) {
            auto c = tok.find(':');
            if (c == std::string::npos || c + 2 != tok.size() || (tok[c + 1] != '+' && tok[c + 1] != '-'))
                throw Error("malformed rotation entry at vertex " + std::to_string(v));
            int u;
            try {
                u = std::stoi(tok.substr(0, c));
            } catch (...) {
                throw Error("malformed rotation entry at vertex " + std::to_string(v));
            }
            if (u < 0 || u >= n || u == v) throw Error("bad neighbor at vertex " + std::to_string(v));
            if (!seen.insert(u).second) throw Error("duplicate neighbor at vertex " + std::to_string(v));
            rot[v].push_back({u, tok[c + 1] == '+' ? +1 : -1});
        }
    }
    for (int v = 0; v < n; ++v)
        for (const auto& d : rot[v]) {
            const Dart* back = nullptr;
            for (const auto& e : rot[d.to])
                if (e.to == v) back = &e;
            if (!back) throw Error("asymmetric adjacency at edge " + std::to_string(v) + "-" + std::to_string(d.to));
            if (back->sign != d.sign)
                throw Error("signature mismatch at edge " + std::to_string(v) + "-" + std::to_string(d.to));
        }
    Triangulation G(std::move(rot), std::move(marked));
    auto diag = validate(G);
    if (!diag.empty()) throw Error("invalid triangulation: " + diag.front());
    return G;
}

// Relabel vertices by a permutation perm[old] = new.
inline Triangulation relabel(const Triangulation& G, const std::vector<int>& perm) {
    std::vector<Rotation> rot(G.n());
    for (int v = 0; v < G.n(); ++v) {
        Rotation r = G.rotation(v);
        for (auto& d : r) d.to = perm[d.to];
        rot[perm[v]] = std::move(r);
    }
    std::vector<std::vector<int>> mk;
    for (auto f : G.marked_faces()) {
        for (auto& v : f) v = perm[v];
        mk.push_back(f);
    }
    return Triangulation(std::move(rot), std::move(mk));
}

// Reverse every rotation (mirror image).
inline Triangulation mirrored(const Triangulation& G) {
    std::vector<Rotation> rot = G.rotations();
    for (auto& r : rot) std::reverse(r.begin(), r.end());
    return Triangulation(std::move(rot), G.marked_faces());
}

// Triangle faces as sorted triples (marked faces excluded).
inline std::set<std::array<int, 3>> triangle_set(const Triangulation& G) {
    std::set<std::array<int, 3>> out;
    for (const auto& f : G.faces()) {
        if (f.verts.size() != 3 || G.is_marked(f.verts)) continue;
        std::array<int, 3> t{f.verts[0], f.verts[1], f.verts[2]};
        std::sort(t.begin(), t.end());
        out.insert(t);
    }
    return out;
}

}  // namespace surfdom
