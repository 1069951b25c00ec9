#pragma once
// End-to-end driver: cut every positive-genus component down to spheres, dominate the
// spheres, pull back through the cuts. Also the bound arithmetic used by the argument.

#include <cmath>
#include <future>

#include "sphere_dominator.hpp"
#include "topology.hpp"

namespace surfdom {

// ---------------------------------------------------------------- constants

struct BoundConstants {
    std::string surface;  // S_g or N_g
    bool orientable = true;
    int g = 0, t = 0;
    long double epsilon = 0, a = 0, b = 0, c = 0;
    std::string a_expr, b_expr;
    // n(1/6 + eps) + c
    long double theorem_value(long double n) const { return n * (1.0L / 6 + epsilon) + c; }
};

inline BoundConstants bound_constants(bool orientable, int g, int t, long double eps) {
    if (!(eps > 0)) throw Error("epsilon must be positive");
    if (g < 0) throw Error("genus must be non-negative");
    if (t < 0) throw Error("t must be non-negative");
    if (!orientable && g < 1) throw Error("non-orientable genus is at least 1");
    BoundConstants k;
    k.orientable = orientable;
    k.g = g, k.t = t, k.epsilon = eps;
    k.surface = (orientable ? "S_" : "N_") + std::to_string(g);
    const long double G = g, T = t, r3g = std::sqrt(3.0L * G), s2 = std::sqrt(2.0L);
    if (orientable && g == 0) {
        const long double t1 = std::max(T - 1, 0.0L);  // the sphere lemma needs |U0| >= 1
        k.a = 6 * std::sqrt(3.0L) * t1;
        k.b = 27 * t1 + 1.0L / 3;
        k.a_expr = "6*sqrt(3)*(t-1)";
        k.b_expr = "27*(t-1) + 1/3";
    } else if (orientable) {
        k.a = s2 / 6 * (2 * G - 1) + 6 * r3g * (T + 3 * G - 2) + 2 * s2 * (2 * G - 1);
        k.b = 3 * (T + 3 * G - 2) * (2 * r3g * (2 * G - 1) + 4 * G + 7) + 2 * s2 * (2 * G - 1) * (G - 1) +
              2.0L / 3 * G * G + 7.0L / 3 * G - 1.0L / 3;
        k.a_expr = "sqrt(2)/6*(2g-1) + 6*sqrt(3g)*(t+3g-2) + 2*sqrt(2)*(2g-1)";
        k.b_expr = "3(t+3g-2)(2*sqrt(3g)(2g-1)+4g+7) + 2*sqrt(2)(2g-1)(g-1) + 2/3 g^2 + 7/3 g - 1/3";
    } else {
        k.a = (2 * G - 1) / 3 + 6 * r3g * (T + 2 * G - 2) + 2 * (2 * G - 1);
        k.b = 3 * (T + 2 * G - 2) * (2 * r3g * (2 * G - 1) + 4 * G + 7) + 4 * (2 * G - 1) * (G - 1) +
              2.0L / 3 * G * G - 2.0L / 3 * G + 0.5L;
        k.a_expr = "(2g-1)/3 + 6*sqrt(3g)*(t+2g-2) + 2(2g-1)";
        k.b_expr = "3(t+2g-2)(2*sqrt(3g)(2g-1)+4g+7) + 4(2g-1)(g-1) + 2/3 g^2 - 2/3 g + 1/2";
    }
    k.c = k.a * k.a / (4 * eps) + k.b;
    return k;
}

inline BoundConstants bound_constants(const SurfaceClass& s, int t, long double eps) {
    return bound_constants(s.orientable, s.genus, t, eps);
}

struct GrowthCheck {
    long double max_a_ratio = 0;  // a / (sqrt(g)(g+t))
    long double max_c_ratio = 0;  // c eps / (g^3 + g t^2)
};

// Sampled sanity check of a = O(sqrt(g)(g+t)) and c = O((g^3 + g t^2)/eps), g >= 1.
inline GrowthCheck bound_growth_check(int gmax = 64, int tmax = 256, long double eps = 0.08L) {
    GrowthCheck gc;
    for (bool orient : {true, false})
        for (int g = 1; g <= gmax; g *= 2)
            for (int t = 0; t <= tmax; t = t ? t * 2 : 1) {
                auto k = bound_constants(orient, g, t, eps);
                const long double G = g, T = t;
                gc.max_a_ratio = std::max(gc.max_a_ratio, k.a / (std::sqrt(G) * (G + T)));
                gc.max_c_ratio = std::max(gc.max_c_ratio, k.c * eps / (G * G * G + G * T * T));
            }
    return gc;
}

// ---------------------------------------------------------------- iterates

struct IterateBounds {
    long long f_exact = 0, F_exact = 0;
    long double f_bound = 0, F_bound = 0;
    bool f_ok = false, F_ok = false, f_le_F = false;
};

inline long long isqrt_ll(long long x) {
    long long r = static_cast<long long>(std::sqrt(static_cast<long double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

// floor(m + sqrt(2m) + 2) and floor((sqrt(m) + 1)^2), in integers.
inline long long f_step(long long m) { return m + 2 + isqrt_ll(2 * m); }
inline long long F_step(long long m) { return m + 1 + isqrt_ll(4 * m); }

inline long long f_iter(long long n, int i) {
    for (int j = 0; j < i; ++j) n = f_step(n);
    return n;
}
inline long long F_iter(long long n, int i) {
    for (int j = 0; j < i; ++j) n = F_step(n);
    return n;
}

inline IterateBounds iterate_bounds(long long n, int i) {
    if (n < 3) throw Error("iterate_bounds needs n >= 3");
    if (i < 0) throw Error("iterate_bounds needs i >= 0");
    IterateBounds r;
    r.f_exact = f_iter(n, i);
    r.F_exact = F_iter(n, i);
    const long double N = n, I = i;
    r.f_bound = N + I * std::sqrt(2 * N) + I * I + 3 * I - 2;
    r.F_bound = (std::sqrt(N) + I) * (std::sqrt(N) + I);
    // exact: f <= n + i sqrt(2n) + i^2 + 3i - 2  and  F <= n + 2 i sqrt(n) + i^2
    __int128 L = static_cast<__int128>(r.f_exact) - n - 1LL * i * i - 3LL * i + 2;
    r.f_ok = L <= 0 || L * L <= static_cast<__int128>(2) * n * i * i;
    __int128 M = static_cast<__int128>(r.F_exact) - n - 1LL * i * i;
    r.F_ok = M <= 0 || M * M <= static_cast<__int128>(4) * n * i * i;
    r.f_le_F = r.f_exact <= r.F_exact;
    return r;
}

// ---------------------------------------------------------------- c = 1.05e7 arithmetic

struct Theorem2Check {
    long long left = 0, right = 0;  // (1008 * 24 sqrt 3)^2 versus 4(42c - 36 - 1008*608)
    bool discriminant_ok = false;
    bool p0_ok = false;  // (42c - 36)/1008 > 42e4
    bool ok() const { return discriminant_ok && p0_ok; }
};

inline Theorem2Check theorem2_constant_check(long long c = 10'500'000) {
    Theorem2Check r;
    r.left = 1008LL * 1008 * 24 * 24 * 3;
    r.right = 4 * (42 * c - 36 - 1008LL * 608);
    r.discriminant_ok = r.left < r.right;
    r.p0_ok = 42 * c - 36 > 1008LL * 420000;
    return r;
}

// ---------------------------------------------------------------- reduction

struct ComponentNode {
    Triangulation graph;
    USets us;
    SurfaceClass surface;
    int parent_record = -1, piece = -1;
    int cut_record = -1;  // record that cut this node, -1 for a leaf
    std::string failure;  // non-empty when cutting failed and the node is dominated directly
};

struct ReductionTrace {
    std::vector<SurgeryRecord> records;
    std::vector<int> record_node;           // node cut by each record
    std::vector<std::vector<USets>> stage_usets;  // per record, U-sets of its pieces
    std::vector<ComponentNode> nodes;
    int g0 = 0, g1 = 0, g2 = 0;
    long long sum_C = 0;
    long long n = 0, n_star = 0;
    int t = 0;
    SurfaceClass surface;
    // invariants
    std::vector<std::string> diagnostics;
    bool vertex_identity_ok = true;  // |V(G*)| = n + sum|C| + 2g0 + g1 + 2g2
    bool tallies_ok = true;          // g2 = g, g1 = 0 on S_g; g1 + 2g2 = g on N_g; g0 <= g - 1
    bool dU_ok = true;               // d_U* <= 2g - 1
    bool u0_ok = true;               // |U0*| <= t + 2g0 + g1 + 2g2
    bool usets_ok = true;
    long double sum_C_bound = 0;
    bool sum_C_within = true;  // flagged, not failed
    int u0_star = 0, max_dU = 0;
    std::vector<int> leaves() const {
        std::vector<int> l;
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
            if (nodes[i].cut_record < 0) l.push_back(i);
        return l;
    }
};

struct PipelineOptions {
    long double epsilon = 0.08L;
    SphereOptions sphere;
    int exact_cycle_limit = 50'000;  // above this, non-orientable components use the cover route
    bool parallel = true;
};

struct SurfaceResult {
    std::vector<int> D;
    ReductionTrace trace;
    std::vector<int> leaf_nodes;
    std::vector<DominationReport> reports;  // per leaf
    long long D_star = 0;                   // sum of leaf set sizes
    bool pullback_identity_ok = false;      // |D*| - |D| = |V(G*)| - |V(G)|
    BoundConstants constants;
    long double theorem_value = 0;  // n(1/6 + eps) + c, printed only
    long double run_bound = 0;      // the pre-substitution bound with this run's tallies
};

namespace detail {

inline Cycle choose_cycle(const Triangulation& G, const SurfaceClass& s, const PipelineOptions& opt) {
    if (!s.orientable && G.n() > opt.exact_cycle_limit) return short_cycle_nonorientable(G);
    auto c = shortest_noncontractible_cycle(G);
    if (!c) throw Error("internal: no non-contractible cycle on a positive-genus component");
    return *c;
}

inline int pick_component(const std::vector<ComponentNode>& nodes) {
    int best = -1;
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
        const auto& nd = nodes[i];
        if (nd.cut_record >= 0 || !nd.failure.empty() || nd.surface.euler_genus() == 0) continue;
        if (best < 0 || nd.surface.euler_genus() > nodes[best].surface.euler_genus()) best = i;
    }
    return best;
}

inline DominationReport dominate_leaf(const ComponentNode& nd, const SphereOptions& so) {
    if (nd.failure.empty() && nd.surface.sphere()) {
        try {
            return dominate_sphere(nd.graph, nd.us, so);
        } catch (const Error& e) {
            DominationReport r;
            r.n = nd.graph.n();
            r.D = greedy_dominating_set(nd.graph, nd.us.U());
            r.branch = "fallback";
            r.note = e.what();
            return r;
        }
    }
    DominationReport r;
    r.n = nd.graph.n();
    r.D = greedy_dominating_set(nd.graph, nd.us.U());
    r.branch = "fallback";
    r.note = nd.failure.empty() ? "component is not a sphere" : nd.failure;
    return r;
}

}  // namespace detail

inline ReductionTrace reduce_to_spheres(const Triangulation& G, const USets& us0, const PipelineOptions& opt = {}) {
    ReductionTrace tr;
    tr.surface = classify_surface(G);
    tr.n = G.n();
    tr.t = static_cast<int>(us0.U0.size());
    {
        ComponentNode root;
        root.graph = G;
        root.us = us0;
        root.us.normalize();
        root.surface = tr.surface;
        auto d = validate_usets(G, root.us);
        if (!d.empty()) throw Error("invalid U-sets: " + d.front());
        tr.nodes.push_back(std::move(root));
    }
    for (int i; (i = detail::pick_component(tr.nodes)) >= 0;) {
        SurgeryRecord rec;
        std::vector<USets> pus;
        try {
            auto C = detail::choose_cycle(tr.nodes[i].graph, tr.nodes[i].surface, opt);
            rec = cut_along_cycle(tr.nodes[i].graph, C);
            for (auto& m : check_cut_counts(rec)) tr.diagnostics.push_back("cut " + std::to_string(tr.records.size()) + ": " + m);
            pus = update_usets(tr.nodes[i].us, rec);
        } catch (const Error& e) {
            tr.nodes[i].failure = e.what();
            tr.diagnostics.push_back("component " + std::to_string(i) + " degraded to fallback: " + e.what());
            continue;
        }
        const int r = static_cast<int>(tr.records.size());
        tr.nodes[i].cut_record = r;
        if (rec.one_sided)
            ++tr.g1;
        else if (rec.pieces.size() == 2)
            ++tr.g0;
        else
            ++tr.g2;
        tr.sum_C += static_cast<long long>(rec.cycle.size());
        for (int p = 0; p < static_cast<int>(rec.pieces.size()); ++p) {
            ComponentNode nd;
            nd.graph = rec.pieces[p].graph;
            nd.us = pus[p];
            nd.surface = rec.piece_surfaces[p];
            nd.parent_record = r;
            nd.piece = p;
            auto d = validate_usets(nd.graph, nd.us);
            if (!d.empty()) {
                tr.usets_ok = false;
                tr.diagnostics.push_back("U-sets invalid after cut " + std::to_string(r) + ": " + d.front());
            }
            tr.nodes.push_back(std::move(nd));
        }
        tr.records.push_back(std::move(rec));
        tr.record_node.push_back(i);
        tr.stage_usets.push_back(std::move(pus));
    }
    // invariants over the leaves
    const int g = tr.surface.genus;
    for (int l : tr.leaves()) {
        tr.n_star += tr.nodes[l].graph.n();
        tr.u0_star += static_cast<int>(tr.nodes[l].us.U0.size());
        tr.max_dU = std::max(tr.max_dU, tr.nodes[l].us.dU);
    }
    bool degraded = false;
    for (const auto& nd : tr.nodes) degraded |= !nd.failure.empty();
    tr.vertex_identity_ok = tr.n_star == tr.n + tr.sum_C + 2LL * tr.g0 + tr.g1 + 2LL * tr.g2;
    if (!degraded) {
        if (tr.surface.orientable)
            tr.tallies_ok = tr.g2 == g && tr.g1 == 0;
        else
            tr.tallies_ok = tr.g1 + 2 * tr.g2 == g;
        if (g >= 1) tr.tallies_ok = tr.tallies_ok && tr.g0 <= g - 1;
    }
    tr.dU_ok = g == 0 ? tr.max_dU == 0 : tr.max_dU <= 2 * g - 1;
    tr.u0_ok = tr.u0_star <= tr.t + 2 * tr.g0 + tr.g1 + 2 * tr.g2;
    if (g >= 1) {
        if (tr.surface.orientable)
            tr.sum_C_bound = (2.0L * g - 1) * std::sqrt(2.0L * f_iter(tr.n < 3 ? 3 : tr.n, g - 1));
        else
            tr.sum_C_bound = (2.0L * g - 1) * 2 * std::sqrt(static_cast<long double>(F_iter(tr.n < 3 ? 3 : tr.n, g - 1)));
        tr.sum_C_within = tr.sum_C <= tr.sum_C_bound;
    }
    if (!tr.vertex_identity_ok) tr.diagnostics.push_back("|V(G*)| identity fails");
    if (!tr.tallies_ok) tr.diagnostics.push_back("cut tallies inconsistent with the surface");
    if (!tr.sum_C_within) tr.diagnostics.push_back("sum|C| above the measured bound (flagged only)");
    return tr;
}

inline SurfaceResult dominate_surface(const Triangulation& G, const PipelineOptions& opt = {}) {
    if (!(opt.epsilon > 0)) throw Error("epsilon must be positive");
    SurfaceResult res;
    res.trace = reduce_to_spheres(G, USets::initial(G), opt);
    auto& tr = res.trace;
    res.leaf_nodes = tr.leaves();
    // leaves are independent
    std::vector<std::future<DominationReport>> fut;
    for (int l : res.leaf_nodes)
        fut.push_back(std::async(opt.parallel && res.leaf_nodes.size() > 1 ? std::launch::async : std::launch::deferred,
                                 [&tr, l, &opt] { return detail::dominate_leaf(tr.nodes[l], opt.sphere); }));
    std::vector<std::vector<int>> Dn(tr.nodes.size());
    for (size_t j = 0; j < fut.size(); ++j) {
        res.reports.push_back(fut[j].get());
        Dn[res.leaf_nodes[j]] = res.reports.back().D;
        res.D_star += static_cast<long long>(res.reports.back().D.size());
    }
    for (int r = static_cast<int>(tr.records.size()) - 1; r >= 0; --r) {
        const int i = tr.record_node[r];
        std::vector<std::vector<int>> Dp(tr.records[r].pieces.size());
        for (int c = 0; c < static_cast<int>(tr.nodes.size()); ++c)
            if (tr.nodes[c].parent_record == r) Dp[tr.nodes[c].piece] = Dn[c];
        Dn[i] = pullback_dominating_set(tr.records[r], Dp);
    }
    res.D = Dn[0];
    auto cert = is_dominating(G, res.D);
    if (!cert.ok) throw Error("internal: pulled-back set misses vertex " + std::to_string(cert.undominated));
    for (int u : G.defect_vertices())
        if (!std::binary_search(res.D.begin(), res.D.end(), u)) throw Error("internal: result misses a defect vertex");
    res.pullback_identity_ok = res.D_star - static_cast<long long>(res.D.size()) == tr.n_star - tr.n;
    res.constants = bound_constants(tr.surface, tr.t, opt.epsilon);
    res.theorem_value = res.constants.theorem_value(tr.n);
    {
        const long double g = tr.surface.genus, Vs = tr.n_star;
        res.run_bound = Vs / 6 +
                        3 * (tr.t + g + tr.g1 + 2 * tr.g2 - 2) * (2 * std::sqrt(3 * g * Vs) + 4 * g + 7) +
                        2.0L * tr.sum_C - tr.g1 - 2 * tr.g2 + 1.0L / 3;
    }
    return res;
}

}  // namespace surfdom
