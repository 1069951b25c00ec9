#pragma once
// Deterministic triangulation families.

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "surface_map.hpp"

namespace surfdom {

struct Generated {
    std::string family;
    Triangulation graph;
    std::vector<Cycle> boundary;  // designated boundary / ring cycles
    std::vector<int> apexes;
    std::vector<int> defects;     // vertices of degree != 6
};

inline Generated finish(std::string fam, Triangulation G, std::vector<Cycle> bnd = {},
                        std::vector<int> apex = {}) {
    if (is_orientable(G)) G = gauge_fixed(G);  // all signatures +1
    Generated g{std::move(fam), std::move(G), std::move(bnd), std::move(apex), {}};
    g.defects = g.graph.defect_vertices();
    return g;
}

inline Generated tetrahedron() {
    return finish("tetrahedron", from_faces(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
}

// 0:+x 1:-x 2:+y 3:-y 4:+z 5:-z
inline Generated octahedron() {
    std::vector<std::vector<int>> f;
    for (int a : {0, 1})
        for (int b : {2, 3})
            for (int c : {4, 5}) f.push_back({a, b, c});
    return finish("octahedron", from_faces(6, f));
}

namespace detail {

struct Ico {
    std::vector<std::array<double, 3>> pts;
    std::vector<std::array<int, 3>> faces;
    std::vector<int> antipode;
};

inline const Ico& ico_data() {
    static const Ico data = [] {
        Ico I;
        const double p = (1.0 + std::sqrt(5.0)) / 2.0;
        for (int s1 : {1, -1})
            for (int s2 : {1, -1}) {
                I.pts.push_back({0, double(s1), s2 * p});
                I.pts.push_back({double(s1), s2 * p, 0});
                I.pts.push_back({s1 * p, 0, double(s2)});
            }
        auto d2 = [&](int i, int j) {
            double s = 0;
            for (int c = 0; c < 3; ++c) s += (I.pts[i][c] - I.pts[j][c]) * (I.pts[i][c] - I.pts[j][c]);
            return s;
        };
        auto adj = [&](int i, int j) { return std::abs(d2(i, j) - 4.0) < 1e-9; };
        for (int i = 0; i < 12; ++i)
            for (int j = i + 1; j < 12; ++j)
                for (int k = j + 1; k < 12; ++k)
                    if (adj(i, j) && adj(j, k) && adj(i, k)) I.faces.push_back({i, j, k});
        I.antipode.assign(12, -1);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
                if (std::abs(d2(i, j) - 4.0 * (p * p + 1)) < 1e-9) I.antipode[i] = j;
        return I;
    }();
    return data;
}

using BaryKey = std::vector<std::pair<int, int>>;  // (icosahedron vertex, weight), sorted

inline BaryKey bary_key(const std::array<int, 3>& f, int wa, int wb, int wc) {
    BaryKey k;
    if (wa) k.push_back({f[0], wa});
    if (wb) k.push_back({f[1], wb});
    if (wc) k.push_back({f[2], wc});
    std::sort(k.begin(), k.end());
    return k;
}

struct Subdivision {
    std::vector<BaryKey> keys;
    std::vector<std::array<int, 3>> tris;
};

// Each face of a polyhedron cut into k^2 triangles; shared edge points are keyed by barycentric weights.
inline Subdivision subdivide_faces(const std::vector<std::array<int, 3>>& faces, int k) {
    Subdivision S;
    std::map<BaryKey, int> id;
    auto get = [&](const std::array<int, 3>& f, int i, int j) {
        auto key = bary_key(f, k - i - j, i, j);
        auto [it, fresh] = id.emplace(key, static_cast<int>(S.keys.size()));
        if (fresh) S.keys.push_back(key);
        return it->second;
    };
    for (const auto& f : faces)
        for (int i = 0; i < k; ++i)
            for (int j = 0; i + j < k; ++j) {
                S.tris.push_back({get(f, i, j), get(f, i + 1, j), get(f, i, j + 1)});
                if (i + j + 2 <= k) S.tris.push_back({get(f, i + 1, j), get(f, i + 1, j + 1), get(f, i, j + 1)});
            }
    return S;
}

inline Subdivision subdivide_icosahedron(int k) { return subdivide_faces(ico_data().faces, k); }

}  // namespace detail

inline Generated icosahedron() {
    std::vector<std::vector<int>> f;
    for (const auto& t : detail::ico_data().faces) f.push_back({t[0], t[1], t[2]});
    return finish("icosahedron", from_faces(12, f));
}

// Octahedron with each face cut into k^2 triangles: six degree-4 vertices, n = 4k^2 + 2.
inline Generated geodesic_octahedron(int k) {
    if (k < 1) throw Error("parameter violation: k >= 1");
    std::vector<std::array<int, 3>> faces;
    for (int a : {0, 1})
        for (int b : {2, 3})
            for (int c : {4, 5}) faces.push_back({a, b, c});
    auto S = detail::subdivide_faces(faces, k);
    std::vector<std::vector<int>> f;
    for (const auto& t : S.tris) f.push_back({t[0], t[1], t[2]});
    return finish("geodesic_octahedron", from_faces(static_cast<int>(S.keys.size()), f));
}

// Triangular bipyramid with each face cut into k^2 triangles: poles of degree 3, equator corners of degree 4.
inline Generated geodesic_bipyramid(int k) {
    if (k < 1) throw Error("parameter violation: k >= 1");
    std::vector<std::array<int, 3>> faces;
    for (int i = 0; i < 3; ++i) faces.push_back({3, i, (i + 1) % 3}), faces.push_back({4, i, (i + 1) % 3});
    auto S = detail::subdivide_faces(faces, k);
    std::vector<std::vector<int>> f;
    for (const auto& t : S.tris) f.push_back({t[0], t[1], t[2]});
    return finish("geodesic_bipyramid", from_faces(static_cast<int>(S.keys.size()), f));
}

// Class-I geodesic sphere: each icosahedron face cut into k^2 triangles. n = 10k^2 + 2.
inline Generated geodesic_sphere(int k) {
    if (k < 1) throw Error("parameter violation: k >= 1");
    auto S = detail::subdivide_icosahedron(k);
    std::vector<std::vector<int>> f;
    for (const auto& t : S.tris) f.push_back({t[0], t[1], t[2]});
    return finish("geodesic_sphere", from_faces(static_cast<int>(S.keys.size()), f));
}

// Antipodal quotient of the subdivided icosahedron. n = 5k^2 + 1, 15k^2 edges, 10k^2 faces.
inline Generated projective_quotient(int k) {
    if (k < 1) throw Error("parameter violation: k >= 1");
    const auto& I = detail::ico_data();
    auto S = detail::subdivide_icosahedron(k);
    std::map<detail::BaryKey, int> idx;
    for (int i = 0; i < static_cast<int>(S.keys.size()); ++i) idx[S.keys[i]] = i;
    const int N = static_cast<int>(S.keys.size());
    std::vector<int> cls(N, -1);
    int m = 0;
    for (int v = 0; v < N; ++v) {
        detail::BaryKey a;
        for (auto [o, w] : S.keys[v]) a.push_back({I.antipode[o], w});
        std::sort(a.begin(), a.end());
        int u = idx.at(a);
        if (u > v) cls[v] = m++;
        else if (u < v) cls[v] = cls[u];
        else throw Error("internal: fixed point of the antipodal map");
    }
    std::set<std::array<int, 3>> seen;
    std::vector<std::vector<int>> f;
    for (const auto& t : S.tris) {
        std::array<int, 3> c{cls[t[0]], cls[t[1]], cls[t[2]]};
        std::array<int, 3> s = c;
        std::sort(s.begin(), s.end());
        if (seen.insert(s).second) f.push_back({c[0], c[1], c[2]});
    }
    return finish("projective_quotient", from_faces(m, f));
}

inline int cylinder_id(int w, int a, int b) { return b * w + mod(a, w); }

// Faces of the (w,l,k)-cylinder on ids b*w+a, without the two boundary faces.
inline std::vector<std::vector<int>> cylinder_faces(int w, int l, int k) {
    std::vector<std::vector<int>> f;
    for (int b = 0; b < l; ++b)
        for (int a = 0; a < w; ++a) {
            int p = cylinder_id(w, a, b), q = cylinder_id(w, a + 1, b);
            int r = cylinder_id(w, a, b + 1), s = cylinder_id(w, a + 1, b + 1);
            if (a < k) {
                f.push_back({p, q, s});
                f.push_back({p, s, r});
            } else {
                f.push_back({p, q, r});
                f.push_back({q, s, r});
            }
        }
    return f;
}

inline Cycle cylinder_ring(int w, int b) {
    Cycle c;
    for (int a = 0; a < w; ++a) c.push_back(cylinder_id(w, a, b));
    return c;
}

inline void check_cylinder_params(int w, int l, int k) {
    if (w < 3 || l < 1 || k < 0 || k >= w) throw Error("parameter violation: need w>=3, l>=1, 0<=k<w");
}

inline Generated cylinder(int w, int l, int k) {
    check_cylinder_params(w, l, k);
    auto r0 = cylinder_ring(w, 0), rl = cylinder_ring(w, l);
    auto G = from_faces(w * (l + 1), cylinder_faces(w, l, k), {r0, rl});
    return finish("cylinder", std::move(G), {r0, rl});
}

// Permutation realising the (w,l,k) ~ (w,l,w-k) relabelling z_{a,b} -> z_{w-a,b}.
inline std::vector<int> cylinder_reflection(int w, int l) {
    std::vector<int> perm(w * (l + 1));
    for (int b = 0; b <= l; ++b)
        for (int a = 0; a < w; ++a) perm[cylinder_id(w, a, b)] = cylinder_id(w, w - a, b);
    return perm;
}

// Cylinder closed by one apex on each boundary ring: a sphere triangulation.
inline Generated capped_cylinder(int w, int l, int k) {
    check_cylinder_params(w, l, k);
    const int n0 = w * (l + 1);
    auto f = cylinder_faces(w, l, k);
    for (int a = 0; a < w; ++a) {
        f.push_back({n0, cylinder_id(w, a, 0), cylinder_id(w, a + 1, 0)});
        f.push_back({n0 + 1, cylinder_id(w, a, l), cylinder_id(w, a + 1, l)});
    }
    std::vector<Cycle> rings;
    for (int b = 0; b <= l; ++b) rings.push_back(cylinder_ring(w, b));
    return finish("capped_cylinder", from_faces(n0 + 2, f), rings, {n0, n0 + 1});
}

// p x q grid on the torus; the vertical wrap shifts by s columns.
inline Generated torus_grid(int p, int q, int s = 0) {
    if (p < 3 || q < 3) throw Error("parameter violation: p,q >= 3");
    auto id = [&](int x, int y) {
        int c = static_cast<int>(std::floor(double(y) / q));
        return mod(y, q) * p + mod(x + static_cast<long long>(c) * s, p);
    };
    std::vector<std::vector<int>> f;
    for (int y = 0; y < q; ++y)
        for (int x = 0; x < p; ++x) {
            f.push_back({id(x, y), id(x + 1, y), id(x, y + 1)});
            f.push_back({id(x + 1, y), id(x + 1, y + 1), id(x, y + 1)});
        }
    return finish("torus_grid", from_faces(p * q, f));
}

// p x q grid on the Klein bottle. Columns wrap mod p; the row y = q is glued to row 0 by
// the lattice glide (x, y) -> (-x - (y - q), y - q), a reflection that preserves the six
// lattice directions.
inline Generated klein_grid(int p, int q) {
    if (p < 3 || q < 3) throw Error("parameter violation: p,q >= 3");
    auto id = [&](int x, int y) {
        if (y >= q) {
            x = -x - (y - q);
            y -= q;
        }
        return y * p + mod(x, p);
    };
    std::vector<std::vector<int>> f;
    for (int y = 0; y < q; ++y)
        for (int x = 0; x < p; ++x) {
            f.push_back({id(x, y), id(x + 1, y), id(x, y + 1)});
            f.push_back({id(x + 1, y), id(x + 1, y + 1), id(x, y + 1)});
        }
    return finish("klein_grid", from_faces(p * q, f));
}

inline int hex_norm(int a, int b) { return std::max({std::abs(a), std::abs(b), std::abs(a + b)}); }

// Triangulated hexagon of radius r around vertex 0; 1 + 3r(r+1) vertices, outer face marked.
inline Generated hexagon_disk(int r) {
    if (r < 1) throw Error("parameter violation: r >= 1");
    std::map<std::pair<int, int>, int> id;
    // ring order keeps the centre at id 0
    for (int d = 0; d <= r; ++d)
        for (int a = -r; a <= r; ++a)
            for (int b = -r; b <= r; ++b)
                if (hex_norm(a, b) == d) id.emplace(std::make_pair(a, b), static_cast<int>(id.size()));
    auto in = [&](int a, int b) { return hex_norm(a, b) <= r; };
    std::vector<std::vector<int>> f;
    for (int a = -r; a <= r; ++a)
        for (int b = -r; b <= r; ++b) {
            if (in(a, b) && in(a + 1, b) && in(a, b + 1))
                f.push_back({id[{a, b}], id[{a + 1, b}], id[{a, b + 1}]});
            if (in(a + 1, b) && in(a, b + 1) && in(a + 1, b + 1))
                f.push_back({id[{a + 1, b}], id[{a + 1, b + 1}], id[{a, b + 1}]});
        }
    Cycle outer;
    const int steps[6][2] = {{-1, 1}, {-1, 0}, {0, -1}, {1, -1}, {1, 0}, {0, 1}};
    int a = r, b = 0;
    for (const auto& st : steps)
        for (int i = 0; i < r; ++i) {
            outer.push_back(id[{a, b}]);
            a += st[0];
            b += st[1];
        }
    auto G = from_faces(static_cast<int>(id.size()), f, {outer});
    return finish("hexagon_disk", std::move(G), {outer});
}

// Two copies of a lattice triangle of side t with corners truncated by c, glued along the boundary.
// The six corners get degree 4 and sit in close pairs, so walks around one pair carry curvature 4.
inline Generated pillow(int t, int c) {
    if (c < 1 || t < 3 * c + 1) throw Error("parameter violation: c >= 1, t >= 3c + 1");
    auto inside = [&](int i, int j) { return i >= 0 && j >= 0 && i + j <= t && i <= t - c && j <= t - c && i + j >= c; };
    auto boundary = [&](int i, int j) { return i == 0 || j == 0 || i + j == t || i == t - c || j == t - c || i + j == c; };
    std::map<std::pair<int, int>, int> top, bot;
    int n = 0;
    for (int i = 0; i <= t; ++i)
        for (int j = 0; j <= t; ++j)
            if (inside(i, j)) top[{i, j}] = n++;
    for (auto& [p, id] : top) bot[p] = boundary(p.first, p.second) ? id : n++;
    std::vector<std::vector<int>> f;
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) {
            if (inside(i, j) && inside(i + 1, j) && inside(i, j + 1)) {
                f.push_back({top[{i, j}], top[{i + 1, j}], top[{i, j + 1}]});
                f.push_back({bot[{i, j}], bot[{i, j + 1}], bot[{i + 1, j}]});
            }
            if (inside(i + 1, j) && inside(i + 1, j + 1) && inside(i, j + 1)) {
                f.push_back({top[{i + 1, j}], top[{i + 1, j + 1}], top[{i, j + 1}]});
                f.push_back({bot[{i + 1, j}], bot[{i, j + 1}], bot[{i + 1, j + 1}]});
            }
        }
    return finish("pillow", from_faces(n, f));
}

struct FamilySpec {
    std::string family;
    std::vector<int> params;
};

inline Generated generate(const FamilySpec& s) {
    auto need = [&](size_t k) {
        if (s.params.size() != k)
            throw Error("parameter violation: " + s.family + " takes " + std::to_string(k) + " parameters");
    };
    const auto& p = s.params;
    if (s.family == "octahedron") return need(0), octahedron();
    if (s.family == "icosahedron") return need(0), icosahedron();
    if (s.family == "tetrahedron") return need(0), tetrahedron();
    if (s.family == "cylinder") return need(3), cylinder(p[0], p[1], p[2]);
    if (s.family == "capped_cylinder") return need(3), capped_cylinder(p[0], p[1], p[2]);
    if (s.family == "geodesic_sphere") return need(1), geodesic_sphere(p[0]);
    if (s.family == "geodesic_octahedron") return need(1), geodesic_octahedron(p[0]);
    if (s.family == "geodesic_bipyramid") return need(1), geodesic_bipyramid(p[0]);
    if (s.family == "projective_quotient") return need(1), projective_quotient(p[0]);
    if (s.family == "torus_grid") {
        if (p.size() == 2) return torus_grid(p[0], p[1], 0);
        return need(3), torus_grid(p[0], p[1], p[2]);
    }
    if (s.family == "klein_grid") return need(2), klein_grid(p[0], p[1]);
    if (s.family == "hexagon_disk") return need(1), hexagon_disk(p[0]);
    if (s.family == "pillow") return need(2), pillow(p[0], p[1]);
    throw Error("unknown family: " + s.family);
}

}  // namespace surfdom
