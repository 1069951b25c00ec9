#include <gtest/gtest.h>

#include <cmath>

#include "surfdom/surfdom.hpp"

using namespace surfdom;

namespace {

// Oracle: plain floor(sqrt) by counting up.
long long slow_isqrt(long long x) {
    long long r = 0;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

void check_run(const std::string& name, const Triangulation& G, int cuts_expected_min) {
    auto r = dominate_surface(G);
    const auto& tr = r.trace;
    SCOPED_TRACE(name);
    EXPECT_TRUE(dominates(G, r.D));
    for (int u : G.defect_vertices()) EXPECT_TRUE(std::binary_search(r.D.begin(), r.D.end(), u));
    EXPECT_GE(static_cast<int>(tr.records.size()), cuts_expected_min);
    // recount tallies and |V(G*)| from the records
    int g0 = 0, g1 = 0, g2 = 0;
    long long sumC = 0;
    for (const auto& rec : tr.records) {
        sumC += static_cast<long long>(rec.cycle.size());
        if (rec.one_sided)
            ++g1;
        else if (rec.pieces.size() == 2)
            ++g0;
        else
            ++g2;
    }
    EXPECT_EQ(g0, tr.g0);
    EXPECT_EQ(g1, tr.g1);
    EXPECT_EQ(g2, tr.g2);
    EXPECT_EQ(sumC, tr.sum_C);
    long long nstar = 0;
    for (int leaf : tr.leaves()) {
        const auto& nd = tr.nodes[leaf];
        EXPECT_TRUE(nd.surface.sphere());
        EXPECT_TRUE(validate_usets(nd.graph, nd.us).empty());
        nstar += nd.graph.n();
    }
    EXPECT_EQ(nstar, tr.n_star);
    EXPECT_EQ(nstar, G.n() + sumC + 2 * g0 + g1 + 2 * g2);
    const auto s = classify_surface(G);
    EXPECT_EQ(s.euler_genus(), g1 + 2 * g2);
    EXPECT_EQ(r.D_star - static_cast<long long>(r.D.size()), tr.n_star - G.n());
    EXPECT_TRUE(r.pullback_identity_ok);
    EXPECT_TRUE(tr.vertex_identity_ok && tr.tallies_ok && tr.usets_ok && tr.dU_ok && tr.u0_ok);
    for (const auto& rep : r.reports) EXPECT_TRUE(rep.layer_property_ok);
}

}  // namespace

TEST(Constants, SphereCase) {
    auto k = bound_constants(true, 0, 1, 0.1L);
    EXPECT_EQ(k.a, 0.0L);
    EXPECT_NEAR(static_cast<double>(k.b), 1.0 / 3, 1e-15);
    EXPECT_EQ(k.surface, "S_0");
    auto k5 = bound_constants(true, 0, 5, 0.1L);
    EXPECT_NEAR(static_cast<double>(k5.a), 6 * std::sqrt(3.0) * 4, 1e-12);
    EXPECT_NEAR(static_cast<double>(k5.b), 27 * 4 + 1.0 / 3, 1e-12);
}

TEST(Constants, HandEvaluatedFormulas) {
    const double eps = 0.05;
    for (int g = 1; g <= 4; ++g)
        for (int t : {0, 3, 10}) {
            const double G = g, T = t, r = std::sqrt(3 * G), s2 = std::sqrt(2.0);
            const double ao = s2 / 6 * (2 * G - 1) + 6 * r * (T + 3 * G - 2) + 2 * s2 * (2 * G - 1);
            const double bo = 3 * (T + 3 * G - 2) * (2 * r * (2 * G - 1) + 4 * G + 7) + 2 * s2 * (2 * G - 1) * (G - 1) +
                              2.0 / 3 * G * G + 7.0 / 3 * G - 1.0 / 3;
            auto ko = bound_constants(true, g, t, eps);
            EXPECT_NEAR(static_cast<double>(ko.a), ao, 1e-9 * ao);
            EXPECT_NEAR(static_cast<double>(ko.b), bo, 1e-9 * bo);
            EXPECT_NEAR(static_cast<double>(ko.c), ao * ao / (4 * eps) + bo, 1e-9 * (ao * ao / eps));
            const double an = (2 * G - 1) / 3 + 6 * r * (T + 2 * G - 2) + 2 * (2 * G - 1);
            const double bn = 3 * (T + 2 * G - 2) * (2 * r * (2 * G - 1) + 4 * G + 7) + 4 * (2 * G - 1) * (G - 1) +
                              2.0 / 3 * G * G - 2.0 / 3 * G + 0.5;
            auto kn = bound_constants(false, g, t, eps);
            EXPECT_NEAR(static_cast<double>(kn.a), an, 1e-9 * std::abs(an) + 1e-12);
            EXPECT_NEAR(static_cast<double>(kn.b), bn, 1e-9 * std::abs(bn) + 1e-12);
        }
    EXPECT_NEAR(static_cast<double>(bound_constants(true, 1, 0, 0.08L).a), 13.4564, 1e-4);
}

TEST(Constants, Errors) {
    EXPECT_THROW(bound_constants(true, 1, 0, 0.0L), Error);
    EXPECT_THROW(bound_constants(true, -1, 0, 0.1L), Error);
    EXPECT_THROW(bound_constants(true, 1, -2, 0.1L), Error);
    EXPECT_THROW(bound_constants(false, 0, 0, 0.1L), Error);
}

TEST(Constants, GrowthRatiosStayBounded) {
    auto small = bound_growth_check(16, 64);
    auto large = bound_growth_check(64, 256);
    EXPECT_LT(large.max_a_ratio, 40);
    EXPECT_LT(large.max_c_ratio, 300);
    // more samples cannot lower a maximum, and the ratios do not blow up with range
    EXPECT_GE(large.max_a_ratio, small.max_a_ratio);
    EXPECT_LT(large.max_c_ratio, 2 * small.max_c_ratio + 1);
}

TEST(Iterates, StepsAndBounds) {
    for (long long x = 0; x < 5000; ++x) EXPECT_EQ(isqrt_ll(x), slow_isqrt(x));
    EXPECT_EQ(f_step(100), 116);
    EXPECT_EQ(F_step(100), 121);
    EXPECT_EQ(F_iter(100, 3), 169);  // (sqrt(n) + i)^2 is exact for square n
    for (long long n : {100LL, 10'000LL, 1'000'000LL})
        for (int i = 1; i <= 50; ++i) {
            auto r = iterate_bounds(n, i);
            EXPECT_TRUE(r.f_ok && r.F_ok && r.f_le_F) << n << " " << i;
            EXPECT_LE(static_cast<long double>(r.f_exact), r.f_bound + 1e-6L);
            EXPECT_LE(static_cast<long double>(r.F_exact), r.F_bound + 1e-6L);
        }
    EXPECT_THROW(iterate_bounds(2, 1), Error);
}

TEST(LargeSphereConstant, Arithmetic) {
    auto t = theorem2_constant_check();
    EXPECT_EQ(t.left, 1755758592LL);
    EXPECT_EQ(t.right, 1761548400LL);
    EXPECT_TRUE(t.ok());
    EXPECT_FALSE(theorem2_constant_check(5'250'000).discriminant_ok);
    // the smallest c that works, by direct search around the crossing point
    long long c = 10'400'000;
    while (!theorem2_constant_check(c).ok()) ++c;
    EXPECT_LE(c, 10'500'000);
    EXPECT_GT(c, 10'400'000);
}

TEST(Pipeline, TorusAndKleinAndProjective) {
    check_run("torus12", torus_grid(12, 12, 0).graph, 1);
    check_run("torus9x11s4", torus_grid(9, 11, 4).graph, 1);
    check_run("klein10x12", klein_grid(10, 12).graph, 1);
    check_run("pq4", projective_quotient(4).graph, 1);
    check_run("icosahedron", icosahedron().graph, 0);
}

TEST(Pipeline, TorusCutIsTwoSidedNonSeparating) {
    auto r = dominate_surface(torus_grid(12, 12, 0).graph);
    EXPECT_EQ(r.trace.g2, 1);
    EXPECT_EQ(r.trace.g1, 0);
    EXPECT_EQ(r.trace.g0, 0);
    auto p = dominate_surface(projective_quotient(4).graph);
    EXPECT_EQ(p.trace.g1, 1);
}

TEST(Pipeline, ReportedBoundsArePrintedValues) {
    auto r = dominate_surface(torus_grid(12, 12, 0).graph);
    const auto& k = r.constants;
    EXPECT_EQ(k.surface, "S_1");
    EXPECT_NEAR(static_cast<double>(r.theorem_value), static_cast<double>(144 * (1.0L / 6 + k.epsilon) + k.c), 1e-6);
    EXPECT_GT(r.run_bound, 0);
}
