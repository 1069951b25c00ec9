#include <gtest/gtest.h>

#include <cmath>

#include "surfdom/surfdom.hpp"

using namespace surfdom;

namespace {

// Oracle: enumerate simple cycles of length <= maxlen, classify each by cutting.
int brute_shortest_noncontractible(const Triangulation& G, int maxlen) {
    int best = maxlen + 1;
    std::vector<int> path;
    std::vector<char> on(G.n(), 0);
    std::function<void(int)> dfs = [&](int start) {
        const int v = path.back();
        for (int u : G.neighbors(v)) {
            if (u == start && path.size() >= 3 && static_cast<int>(path.size()) < best && path[1] < path.back()) {
                if (!classify_cycle(G, Cycle(path)).contractible) best = static_cast<int>(path.size());
            }
            if (u <= start || on[u] || static_cast<int>(path.size()) + 1 >= best) continue;
            on[u] = 1;
            path.push_back(u);
            dfs(start);
            path.pop_back();
            on[u] = 0;
        }
    };
    for (int s = 0; s < G.n(); ++s) {
        path = {s};
        on[s] = 1;
        dfs(s);
        on[s] = 0;
    }
    return best;
}

bool is_simple_cycle(const Triangulation& G, const Cycle& c) {
    std::set<int> s(c.begin(), c.end());
    if (s.size() != c.size() || c.size() < 3) return false;
    for (size_t i = 0; i < c.size(); ++i)
        if (!G.adjacent(c[i], c[(i + 1) % c.size()])) return false;
    return true;
}

}  // namespace

TEST(Topology, VertexLinkIsContractible) {
    auto G = torus_grid(6, 6, 0).graph;
    auto link = G.neighbors(7);
    auto cls = classify_cycle(G, link);
    EXPECT_TRUE(cls.contractible);
    EXPECT_TRUE(cls.separating);
    EXPECT_FALSE(cls.one_sided);
}

TEST(Topology, TorusRowIsEssential) {
    auto G = torus_grid(6, 5, 0).graph;
    auto c = shortest_noncontractible_cycle(G);
    ASSERT_TRUE(c);
    EXPECT_TRUE(is_simple_cycle(G, *c));
    auto cls = classify_cycle(G, *c);
    EXPECT_FALSE(cls.contractible);
    EXPECT_FALSE(cls.separating);
    EXPECT_FALSE(cls.one_sided);
}

TEST(Topology, SphereHasNoNoncontractibleCycle) {
    EXPECT_FALSE(shortest_noncontractible_cycle(icosahedron().graph).has_value());
    EXPECT_FALSE(shortest_noncontractible_cycle(geodesic_sphere(2).graph).has_value());
}

TEST(Topology, ShortestCycleMatchesBruteForce) {
    std::vector<std::pair<std::string, Triangulation>> cases = {
        {"torus4x4", torus_grid(4, 4, 0).graph}, {"torus3x5s1", torus_grid(3, 5, 1).graph},
        {"torus5x4s2", torus_grid(5, 4, 2).graph}, {"klein4x4", klein_grid(4, 4).graph},
        {"klein3x5", klein_grid(3, 5).graph},    {"pq1", projective_quotient(1).graph},
        {"pq2", projective_quotient(2).graph}};
    for (const auto& [name, G] : cases) {
        auto c = shortest_noncontractible_cycle(G);
        ASSERT_TRUE(c) << name;
        EXPECT_TRUE(is_simple_cycle(G, *c)) << name;
        EXPECT_FALSE(classify_cycle(G, *c).contractible) << name;
        EXPECT_EQ(static_cast<int>(c->size()), brute_shortest_noncontractible(G, static_cast<int>(c->size()))) << name;
    }
}

TEST(Topology, ProjectivePlaneCyclesAreOneSided) {
    for (int k = 1; k <= 4; ++k) {
        auto G = projective_quotient(k).graph;
        auto c = shortest_noncontractible_cycle(G);
        ASSERT_TRUE(c);
        auto cls = classify_cycle(G, *c);
        EXPECT_TRUE(cls.one_sided);
        // on N_1 every essential cycle is one-sided, so its signature product is -1
        EXPECT_EQ(signature_product(G, *c), -1);
        // Euler-consistent size bound: |C| <= 2 sqrt(n) - 1, compared on integers
        const long long L = static_cast<long long>(c->size()) + 1;
        EXPECT_LE(L * L, 4LL * G.n());
    }
}

TEST(Topology, DoubleCoverProperties) {
    std::vector<Triangulation> cases = {projective_quotient(1).graph, projective_quotient(3).graph,
                                        klein_grid(4, 4).graph, klein_grid(5, 7).graph};
    for (const auto& G : cases) {
        auto cm = double_cover(G);
        EXPECT_EQ(cm.cover.n(), 2 * G.n());
        EXPECT_TRUE(is_orientable(cm.cover));
        EXPECT_EQ(euler_characteristic(cm.cover), 2 * euler_characteristic(G));
        EXPECT_TRUE(check_cover_map(G, cm));
        // independent check: edges project onto edges, each base edge has exactly two lifts
        std::map<std::pair<int, int>, int> lifts;
        for (int v = 0; v < cm.cover.n(); ++v)
            for (int u : cm.cover.neighbors(v))
                if (v < u) {
                    int a = cm.projection[v], b = cm.projection[u];
                    ASSERT_TRUE(G.adjacent(a, b));
                    ++lifts[{std::min(a, b), std::max(a, b)}];
                }
        EXPECT_EQ(static_cast<long long>(lifts.size()), G.edge_count());
        for (auto& [e, c] : lifts) EXPECT_EQ(c, 2);
    }
    EXPECT_THROW(double_cover(torus_grid(4, 4, 0).graph), Error);
}

TEST(Topology, CoverRouteOnKleinGrids) {
    for (int p = 4; p <= 8; p += 2)
        for (int q = 4; q <= 8; q += 2) {
            auto G = klein_grid(p, q).graph;
            auto c = short_cycle_nonorientable(G);
            EXPECT_TRUE(is_simple_cycle(G, c));
            EXPECT_FALSE(classify_cycle(G, c).contractible);
            const long long L = static_cast<long long>(c.size());
            EXPECT_LE(L * L, 4LL * G.n()) << p << "x" << q;
        }
}

TEST(Topology, RejectsNonCycles) {
    auto G = torus_grid(5, 5, 0).graph;
    EXPECT_THROW(classify_cycle(G, Cycle{0, 1}), Error);
    EXPECT_THROW(classify_cycle(G, Cycle{0, 12, 24}), Error);
    EXPECT_THROW(classify_cycle(G, Walk{{0, 1, 2}, false}), Error);
}
