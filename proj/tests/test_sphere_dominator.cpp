#include <gtest/gtest.h>

#include <cmath>

#include "surfdom/surfdom.hpp"

using namespace surfdom;

namespace {

// Oracle: fewest vertices of a connected induced subgraph containing the terminals, by subset search.
int steiner_oracle(const Triangulation& G, const std::vector<int>& term) {
    const int n = G.n();
    uint32_t must = 0;
    for (int t : term) must |= 1u << t;
    int best = n;
    for (uint32_t S = 0; S < (1u << n); ++S) {
        if ((S & must) != must) continue;
        const int c = __builtin_popcount(S);
        if (c >= best) continue;
        uint32_t seen = 1u << __builtin_ctz(S), frontier = seen;
        while (frontier) {
            uint32_t next = 0;
            for (uint32_t f = frontier; f; f &= f - 1)
                for (int u : G.neighbors(__builtin_ctz(f)))
                    if ((S >> u & 1) && !(seen >> u & 1)) next |= 1u << u;
            seen |= next;
            frontier = next;
        }
        if (seen == S) best = c;
    }
    return best;
}

bool tree_spans(const Triangulation& G, const SteinerTree& T, const std::vector<int>& term) {
    Tree t{T.vertices, T.edges};
    if (!is_tree_in(G, t)) return false;
    for (int v : term)
        if (!std::binary_search(T.vertices.begin(), T.vertices.end(), v)) return false;
    return true;
}

std::vector<char> mask(int n, const std::vector<int>& v) {
    std::vector<char> m(n, 0);
    for (int x : v) m[x] = 1;
    return m;
}

// Independent transition table for interior walks: (length change, resulting type).
const std::map<char, std::pair<int, char>> kTransitions = {
    {'A', {0, 'A'}}, {'B', {-1, 'B'}}, {'C', {-3, 'C'}}, {'D', {-2, 'C'}}, {'E', {0, 'E'}}};

// Sum of (rdeg - 2) for each type, fixed by the turning count.
const std::map<char, int> kTurning = {{'A', 0}, {'B', 1}, {'C', 2}, {'D', 2}, {'E', 0}};

}  // namespace

TEST(Steiner, ExactMatchesSubsetOracle) {
    std::vector<Triangulation> graphs = {octahedron().graph, icosahedron().graph, geodesic_bipyramid(2).graph,
                                         torus_grid(4, 4, 0).graph, klein_grid(3, 5).graph};
    uint32_t seed = 7;
    for (const auto& G : graphs)
        for (int trial = 0; trial < 6; ++trial) {
            std::vector<int> term;
            for (int i = 0; i < 2 + trial % 4; ++i) {
                seed = seed * 1103515245u + 12345u;
                term.push_back(static_cast<int>((seed >> 8) % G.n()));
            }
            std::sort(term.begin(), term.end());
            term.erase(std::unique(term.begin(), term.end()), term.end());
            auto T = steiner_tree(G, term);
            EXPECT_TRUE(T.exact);
            EXPECT_TRUE(tree_spans(G, T, term));
            EXPECT_EQ(T.size(), steiner_oracle(G, term));
            auto H = steiner_tree(G, term, 0);  // heuristic
            if (term.size() > 1) {
                EXPECT_FALSE(H.exact);
            }
            EXPECT_TRUE(tree_spans(G, H, term));
            EXPECT_GE(H.size(), T.size());
        }
}

TEST(Steiner, Errors) {
    auto G = octahedron().graph;
    EXPECT_THROW(steiner_tree(G, {}), Error);
    EXPECT_THROW(steiner_tree(G, {0, 17}), Error);
    EXPECT_EQ(steiner_tree(G, {3}).size(), 1);
}

TEST(CutOpenDisk, CopiesAndCounts) {
    for (auto G : {geodesic_sphere(3).graph, capped_cylinder(6, 8, 0).graph, pillow(8, 2).graph}) {
        auto U = G.defect_vertices();
        auto T0 = steiner_tree(G, U);
        auto T = spanning_tree_with_u(G, T0, U);
        ensure_two_edges(G, T);
        auto cd = build_cut_open_disk(G, T);
        const int e = static_cast<int>(T.edges.size());
        EXPECT_EQ(cd.copies(), 2 * e);
        EXPECT_EQ(cd.disk.n(), G.n() - static_cast<int>(T.vertices.size()) + 2 * e);
        EXPECT_TRUE(classify_surface(cd.disk).sphere());
        ASSERT_EQ(cd.disk.marked_faces().size(), 1u);
        EXPECT_TRUE(validate(cd.disk).empty());
        // every tree vertex v appears deg_T(v) times on the boundary, other vertices keep their degree
        std::map<int, int> tdeg, seen;
        for (auto [a, b] : T.edges) ++tdeg[a], ++tdeg[b];
        for (int v = 0; v < cd.disk.n(); ++v) {
            if (cd.is_copy[v])
                ++seen[cd.origin[v]];
            else
                EXPECT_EQ(cd.disk.degree(v), G.degree(cd.origin[v]));
        }
        EXPECT_EQ(seen, tdeg);
    }
}

TEST(CutOpenDisk, Preconditions) {
    auto G = geodesic_sphere(2).graph;
    Tree one{{0}, {}};
    EXPECT_THROW(build_cut_open_disk(G, one), Error);
    Tree bogus{{0, 1, 2}, {{0, 1}}};
    EXPECT_THROW(build_cut_open_disk(G, bogus), Error);
    auto nb = G.neighbors(20);
    Tree small{{20, nb[0], nb[1]}, {edge_key(20, nb[0]), edge_key(20, nb[1])}};
    std::sort(small.vertices.begin(), small.vertices.end());
    std::sort(small.edges.begin(), small.edges.end());
    EXPECT_THROW(build_cut_open_disk(G, small), Error);  // misses the degree-5 vertices
}

TEST(Lattice, PerfectCodeByCounting) {
    EXPECT_TRUE(d_infinity_is_perfect());
    // independent count: each residue class of 2a - b mod 7 has 7 points in a 7x7 block
    for (int phase = 0; phase < 7; ++phase) {
        int c = 0;
        for (int a = 0; a < 7; ++a)
            for (int b = 0; b < 7; ++b) c += in_d_infinity(a, b, phase);
        EXPECT_EQ(c, 7);
    }
    EXPECT_EQ(lattice_units().size(), 6u);
    for (auto [a, b] : lattice_units()) EXPECT_TRUE(is_unit(a, b));
    EXPECT_FALSE(is_unit(1, 1));
    EXPECT_FALSE(is_unit(0, 0));
}

TEST(GridMap, EdgesBecomeLatticeUnits) {
    auto hd = hexagon_disk(5).graph;
    auto gm = grid_map(hd);
    EXPECT_EQ(gm.coord[0], (Lattice{0, 0}));
    for (int v = 0; v < hd.n(); ++v)
        for (int u : hd.neighbors(v)) {
            if (!gm.interior[v] && !gm.interior[u]) continue;
            EXPECT_TRUE(is_unit(gm.coord[u].first - gm.coord[v].first, gm.coord[u].second - gm.coord[v].second));
        }
    // the map is injective on a hexagon
    std::set<Lattice> img(gm.coord.begin(), gm.coord.end());
    EXPECT_EQ(static_cast<int>(img.size()), hd.n());
}

TEST(GridPullback, DominatesAndBoundsOverlap) {
    for (int k : {3, 5}) {
        auto G = oriented(geodesic_sphere(k).graph);
        auto U = G.defect_vertices();
        auto T = spanning_tree_with_u(G, steiner_tree(G, U), U);
        ensure_two_edges(G, T);
        auto cd = build_cut_open_disk(G, T);
        auto gm = grid_map(cd.disk);
        auto gp = grid_pullback(G, cd, gm);
        EXPECT_TRUE(dominates(G, gp.D)) << k;
        for (int v : T.vertices) EXPECT_TRUE(std::binary_search(gp.D.begin(), gp.D.end(), v));
        EXPECT_TRUE(gp.overlap_degree_ok);
        if (gp.t_prime >= 2) {
            EXPECT_LE(gp.overlap_sum, 2LL * gp.t_prime - 3);
        }
        const long long n = G.n(), vt = static_cast<long long>(T.vertices.size());
        EXPECT_LE(6 * static_cast<long long>(gp.D.size()), n + 9 * vt - 7);
    }
}

TEST(HexagonRadius, DistanceToDefectPlusOne) {
    for (int k : {4, 6}) {
        auto G = oriented(geodesic_sphere(k).graph);
        auto d = bfs_distances(G, G.defect_vertices());
        for (int x = 0; x < G.n(); x += 11) EXPECT_EQ(hexagon_radius(G, x), d[x] + 1) << "k=" << k << " x=" << x;
    }
    for (int R = 1; R <= 5; ++R) EXPECT_EQ(hexagon_radius(hexagon_disk(R).graph, 0), R + 1);
}

TEST(Walks, TypeClassifier) {
    EXPECT_EQ(walk_type({2, 2, 2, 2}), 'A');
    EXPECT_EQ(walk_type({2, 3, 2, 2}), 'B');
    EXPECT_EQ(walk_type({2, 2, 4, 2}), 'C');
    EXPECT_EQ(walk_type({2, 3, 3, 2}), 'D');
    EXPECT_EQ(walk_type({3, 2, 3, 2}), 'X');  // two rdeg-3 corners must be consecutive
    EXPECT_EQ(walk_type({1, 2, 3, 2}), 'E');
    EXPECT_EQ(walk_type({2, 5, 2}), 'X');
}

TEST(Walks, InnerWalkTransitions) {
    struct Case {
        char type;
        Triangulation host;
        int max_len;
    };
    std::vector<Case> cases = {{'A', geodesic_sphere(6).graph, 30},
                               {'B', geodesic_bipyramid(6).graph, 24},
                               {'C', pillow(20, 3).graph, 40},
                               {'D', pillow(20, 3).graph, 40},
                               {'E', capped_cylinder(8, 20, 3).graph, 12}};
    for (auto& c : cases) {
        auto Go = oriented(c.host);
        auto walks = find_typed_walks(Go, c.type, c.max_len, 40);
        ASSERT_FALSE(walks.empty()) << c.type;
        const auto [dl, next] = kTransitions.at(c.type);
        for (const auto& w : walks) {
            EXPECT_EQ(w.type, c.type);
            int turning = 0;
            for (int r : w.rdeg) turning += r - 2;
            EXPECT_EQ(turning, kTurning.at(c.type));
            auto in = derive_inner_walk(Go, w);
            EXPECT_EQ(in.length(), w.length() + dl) << c.type;
            EXPECT_EQ(in.type, next) << c.type;
            // the inner walk lies one step inside: every vertex is adjacent to the outer walk
            std::set<int> outer(w.vertices.begin(), w.vertices.end());
            for (int v : in.vertices) {
                EXPECT_FALSE(outer.count(v));
                bool touch = false;
                for (int u : Go.neighbors(v)) touch = touch || outer.count(u);
                EXPECT_TRUE(touch);
            }
        }
    }
}

TEST(Walks, CylinderRingsAreTypeE) {
    auto Go = oriented(cylinder(8, 6, 3).graph);
    for (int b = 1; b < 6; ++b) {
        auto bw = outer_degree_walk(Go, cylinder_ring(8, b));
        Cycle rev(bw.vertices.rbegin(), bw.vertices.rend());
        auto bw2 = outer_degree_walk(Go, rev);
        EXPECT_TRUE(bw.type == 'E' || bw2.type == 'E');
    }
    EXPECT_THROW(outer_degree_walk(Go, Cycle{0, 1}), Error);
}

TEST(Cylinder, ExtractFromCappedCylinders) {
    struct Case {
        int w, l, k;
    };
    for (auto c : {Case{10, 40, 0}, Case{9, 40, 3}}) {
        auto Go = oriented(capped_cylinder(c.w, c.l, c.k).graph);
        auto inU = mask(Go.n(), Go.defect_vertices());
        const int x = cylinder_id(c.w, 0, c.l / 2);
        const int r = hexagon_radius(Go, x);
        EXPECT_LE(r, bfs_distances(Go, Go.defect_vertices())[x] + 1);  // the ball wraps before it meets a defect
        auto H = extract_cylinder(Go, x, r, inU);
        EXPECT_EQ(H.w, c.w);
        EXPECT_EQ(std::min(H.k, H.w - H.k), c.k);
        EXPECT_EQ(H.l, c.l - 2);  // rings 0 and l carry the degree-5 vertices
        // rings are disjoint cycles, consecutive rings joined column by column
        std::set<int> all;
        for (int b = 0; b <= H.l; ++b) {
            ASSERT_EQ(static_cast<int>(H.z[b].size()), H.w);
            for (int a = 0; a < H.w; ++a) {
                EXPECT_TRUE(all.insert(H.z[b][a]).second);
                EXPECT_TRUE(Go.adjacent(H.z[b][a], H.z[b][(a + 1) % H.w]));
                if (b < H.l) {
                    EXPECT_TRUE(Go.adjacent(H.z[b][a], H.z[b + 1][a]));
                }
            }
        }
        auto glued = remove_and_glue(Go, H);
        EXPECT_EQ(glued.graph.n(), Go.n() - static_cast<int>(H.interior().size()) - H.w);
        EXPECT_TRUE(classify_surface(glued.graph).sphere());
        EXPECT_TRUE(validate(glued.graph).empty());
        EXPECT_EQ(static_cast<int>(glued.cstar.size()), H.w);
    }
}

TEST(Cylinder, ExtractPreconditions) {
    auto Go = oriented(capped_cylinder(10, 40, 0).graph);
    auto inU = mask(Go.n(), Go.defect_vertices());
    const int x = cylinder_id(10, 0, 3);
    EXPECT_THROW(extract_cylinder(Go, x, 5, inU), Error);
}

TEST(DominateSphere, OutputsDominateAndContainU) {
    std::vector<std::pair<std::string, Triangulation>> cases = {
        {"octahedron", octahedron().graph},        {"icosahedron", icosahedron().graph},
        {"geo3", geodesic_sphere(3).graph},        {"geo5", geodesic_sphere(5).graph},
        {"geooct6", geodesic_octahedron(6).graph}, {"bipyr5", geodesic_bipyramid(5).graph},
        {"pillow", pillow(12, 2).graph},           {"cap10_120_0", capped_cylinder(10, 120, 0).graph},
        {"cap8_90_3", capped_cylinder(8, 90, 3).graph}};
    for (const auto& [name, G] : cases) {
        auto us = USets::initial(G);
        auto rep = dominate_sphere(G, us);
        EXPECT_TRUE(dominates(G, rep.D)) << name;
        for (int u : us.U()) EXPECT_TRUE(std::binary_search(rep.D.begin(), rep.D.end(), u)) << name;
        EXPECT_TRUE(rep.layer_property_ok) << name;
        EXPECT_TRUE(rep.overlap_degree_ok && rep.overlap_sum_ok) << name;
        if (rep.lemma9_applicable) {
            // direct floating evaluation of the bound with a small slack
            const double n = G.n(), u0 = std::max<double>(1.0, static_cast<double>(us.U0.size()));
            const double bound = n / 6 + 3 * (u0 - 1) * (2 * std::sqrt(3 * n) + 2 * us.dU + 9) + 1.5 * us.U0bar.size() + 1.0 / 3;
            EXPECT_LE(static_cast<double>(rep.D.size()), bound + 1e-9) << name;
            EXPECT_TRUE(rep.lemma9_ok) << name;
        }
        if (G.n() <= 40) {
            auto ex = exact_min_dominating_set(G, us.U());
            EXPECT_GE(rep.D.size(), ex.set.size()) << name;
        }
    }
}

TEST(DominateSphere, BranchesOnLongCylinders) {
    auto rep = dominate_sphere(capped_cylinder(10, 200, 0).graph);
    EXPECT_EQ(rep.branch, "case2");
    EXPECT_EQ(rep.w, 10);
    EXPECT_EQ(rep.k, 0);
    EXPECT_TRUE(rep.pattern_bound_ok);
    ASSERT_TRUE(rep.child);
    EXPECT_LT(rep.child->n, rep.n);
    auto geo = dominate_sphere(geodesic_sphere(5).graph);
    EXPECT_EQ(geo.branch, "case1");
    EXPECT_TRUE(geo.grid_bound6_ok);
    if (geo.grid_bound7_applies) {
        EXPECT_TRUE(geo.grid_bound7_ok);
    }
}

TEST(DominateSphere, RespectsExtraUSets) {
    auto G = geodesic_sphere(4).graph;
    USets us = USets::initial(G);
    for (int v : G.neighbors(us.U0[0])) us.U0bar.push_back(v);
    us.dU = 1;
    us.normalize();
    auto rep = dominate_sphere(G, us);
    EXPECT_TRUE(dominates(G, rep.D));
    for (int u : us.U()) EXPECT_TRUE(std::binary_search(rep.D.begin(), rep.D.end(), u));
    EXPECT_THROW(dominate_sphere(torus_grid(5, 5, 0).graph), Error);
    USets far = USets::initial(G);
    far.U0bar = {G.n() / 2};  // nowhere near U0 with d_U = 0
    EXPECT_THROW(dominate_sphere(G, far), Error);
}

TEST(SphereBound, ExactIntegerFormMatchesFloating) {
    for (long long n : {50LL, 400LL, 5000LL})
        for (long long u0 : {1LL, 3LL, 12LL})
            for (long long D = n / 7; D <= n; D += n / 13) {
                const bool exact = lemma9_holds(D, n, u0, 2, 1);
                const double v = lemma9_value(static_cast<double>(n), static_cast<double>(u0), 2, 1);
                if (std::abs(static_cast<double>(D) - v) > 1e-6) {
                    EXPECT_EQ(exact, static_cast<double>(D) <= v) << n << " " << u0 << " " << D;
                }
            }
}
