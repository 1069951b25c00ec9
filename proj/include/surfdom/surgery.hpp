#pragma once
// Cutting along non-contractible cycles, U-set bookkeeping, pullback, and boundary identification.

#include <memory>
#include <numeric>

#include "generators.hpp"
#include "topology.hpp"

namespace surfdom {

struct USets {
    std::vector<int> U0;
    std::vector<int> U0bar;
    int dU = 0;

    std::vector<int> U() const {
        std::vector<int> u = U0;
        u.insert(u.end(), U0bar.begin(), U0bar.end());
        std::sort(u.begin(), u.end());
        return u;
    }
    void normalize() {
        std::sort(U0.begin(), U0.end());
        U0.erase(std::unique(U0.begin(), U0.end()), U0.end());
        std::sort(U0bar.begin(), U0bar.end());
        U0bar.erase(std::unique(U0bar.begin(), U0bar.end()), U0bar.end());
    }
    // U = U0 = {deg != 6}, no U0bar, d_U = 0.
    static USets initial(const Triangulation& G) {
        USets u;
        u.U0 = G.defect_vertices();
        return u;
    }
};

inline std::vector<std::string> validate_usets(const Triangulation& G, const USets& us) {
    std::vector<std::string> diag;
    const int n = G.n();
    std::vector<int> tag(n, 0);  // 1 = U0, 2 = U0bar
    for (int v : us.U0) {
        if (v < 0 || v >= n) {
            diag.push_back("U0 vertex out of range");
            return diag;
        }
        tag[v] = 1;
    }
    for (int v : us.U0bar) {
        if (v < 0 || v >= n) {
            diag.push_back("U0bar vertex out of range");
            return diag;
        }
        if (tag[v] == 1) diag.push_back("U0 and U0bar intersect at " + std::to_string(v));
        tag[v] = 2;
    }
    if (us.dU < 0) diag.push_back("negative d_U");
    for (int v = 0; v < n; ++v)
        if (G.degree(v) != 6 && !tag[v]) diag.push_back("degree-" + std::to_string(G.degree(v)) + " vertex " + std::to_string(v) + " not in U");
    // every component of G[U] meets U0
    std::vector<char> seen(n, 0);
    for (int s = 0; s < n; ++s) {
        if (!tag[s] || seen[s]) continue;
        bool has0 = false;
        std::vector<int> st{s};
        seen[s] = 1;
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            has0 |= tag[v] == 1;
            for (const auto& d : G.rotation(v))
                if (tag[d.to] && !seen[d.to]) {
                    seen[d.to] = 1;
                    st.push_back(d.to);
                }
        }
        if (!has0) diag.push_back("component of G[U] at " + std::to_string(s) + " has no U0 vertex");
    }
    if (!us.U0bar.empty()) {
        if (us.U0.empty()) {
            diag.push_back("U0bar nonempty but U0 empty");
        } else {
            auto dist = bfs_distances(G, us.U0, us.dU);
            for (int v : us.U0bar)
                if (dist[v] < 0 || dist[v] > us.dU) diag.push_back("U0bar vertex " + std::to_string(v) + " farther than d_U from U0");
        }
    }
    return diag;
}

struct SurgeryRecord {
    std::shared_ptr<const Triangulation> input;
    Cycle cycle;
    bool one_sided = false;
    int table_case = 0;
    SurfaceClass input_surface;
    RawCut raw;
    std::vector<Piece> pieces;  // origin maps piece vertex -> raw vertex
    std::vector<SurfaceClass> piece_surfaces;
    std::vector<std::pair<int, int>> raw_to_piece;  // raw vertex -> (piece, local)
};

// Cut case from input and output surfaces.
inline int table_case(const SurfaceClass& in, bool one_sided, const std::vector<SurfaceClass>& out) {
    if (in.orientable) {
        if (one_sided) return 0;
        if (out.size() == 1) return 1;
        return 2;
    }
    if (one_sided) return out[0].orientable ? 4 : 3;
    if (out.size() == 1) return out[0].orientable ? 6 : 5;
    int s = 0;
    for (const auto& o : out) s += o.orientable;
    return s == 0 ? 7 : 8;
}

// Checks the genus relation expected for each case; empty string when consistent.
inline std::string table_case_violation(const SurgeryRecord& r) {
    const auto& in = r.input_surface;
    const auto& out = r.piece_surfaces;
    auto fail = [&](const std::string& m) { return "case " + std::to_string(r.table_case) + ": " + m; };
    switch (r.table_case) {
        case 1:
            if (!(out[0].orientable && out[0].genus == in.genus - 1)) return fail("expected S_{g-1}");
            break;
        case 2:
            if (!(out[0].orientable && out[1].orientable && out[0].genus + out[1].genus == in.genus &&
                  out[0].genus > 0 && out[1].genus > 0))
                return fail("expected S_{g1} + S_{g2}, g1+g2=g");
            break;
        case 3:
            if (out[0].genus != in.genus - 1) return fail("expected N_{g-1}");
            break;
        case 4:
            if (2 * out[0].genus != in.genus - 1) return fail("expected S_{(g-1)/2}");
            break;
        case 5:
            if (out[0].genus != in.genus - 2) return fail("expected N_{g-2}");
            break;
        case 6:
            if (2 * out[0].genus != in.genus - 2) return fail("expected S_{(g-2)/2}");
            break;
        case 7:
            if (out[0].genus + out[1].genus != in.genus) return fail("expected N_{g1} + N_{g2}");
            break;
        case 8: {
            int e = 0;
            for (const auto& o : out) e += o.euler_genus();
            if (e != in.genus) return fail("expected S_{g1} + N_{g2}, 2g1+g2=g");
            break;
        }
        default:
            return fail("impossible case");
    }
    int chi = 0;
    for (const auto& o : out) chi += o.euler;
    if (chi != in.euler + (r.one_sided ? 1 : 2)) return fail("euler characteristic sum mismatch");
    return {};
}

inline SurgeryRecord cut_along_cycle(const Triangulation& G, const Cycle& C) {
    SurgeryRecord rec;
    rec.input = std::make_shared<const Triangulation>(G);
    rec.cycle = C;
    rec.input_surface = classify_surface(G);
    rec.raw = raw_cut(G, C);
    rec.one_sided = rec.raw.one_sided;
    rec.pieces = split_components(rec.raw.graph);
    if (rec.pieces.size() > 2) throw Error("internal: cut produced more than two components");
    for (const auto& p : rec.pieces) rec.piece_surfaces.push_back(classify_surface(p.graph));
    if (rec.pieces.size() == 2)
        for (const auto& s : rec.piece_surfaces)
            if (s.sphere()) throw Error("contractible cycle");
    rec.raw_to_piece.assign(rec.raw.graph.n(), {-1, -1});
    for (int i = 0; i < static_cast<int>(rec.pieces.size()); ++i)
        for (int j = 0; j < static_cast<int>(rec.pieces[i].origin.size()); ++j)
            rec.raw_to_piece[rec.pieces[i].origin[j]] = {i, j};
    rec.table_case = table_case(rec.input_surface, rec.one_sided, rec.piece_surfaces);
    auto bad = table_case_violation(rec);
    if (!bad.empty()) throw Error("internal: " + bad);
    return rec;
}

// Count identities for one cut; empty when all hold.
inline std::vector<std::string> check_cut_counts(const SurgeryRecord& rec) {
    std::vector<std::string> d;
    const auto& G = *rec.input;
    const long long m = static_cast<long long>(rec.cycle.size());
    long long V = 0, E = 0, F = 0;
    for (const auto& p : rec.pieces) {
        V += p.graph.n();
        E += p.graph.edge_count();
        F += p.graph.face_count();
    }
    const long long V0 = G.n(), E0 = G.edge_count(), F0 = G.face_count();
    if (rec.one_sided) {
        if (V != V0 + m + 1) d.push_back("|V'| != |V|+|C|+1");
        if (E != E0 + 3 * m) d.push_back("|E'| != |E|+3|C|");
        if (F != F0 + 2 * m) d.push_back("|F'| != |F|+2|C|");
        if (static_cast<long long>(rec.raw.c1.size()) != 2 * m) d.push_back("|C1| != 2|C|");
    } else {
        if (V != V0 + m + 2) d.push_back("|V'| != |V|+|C|+2");
        if (E != E0 + 3 * m) d.push_back("|E'| != |E|+3|C|");
        if (F != F0 + 2 * m) d.push_back("|F'| != |F|+2|C|");
        if (static_cast<long long>(rec.raw.c1.size()) != m || static_cast<long long>(rec.raw.c2.size()) != m)
            d.push_back("|C1|,|C2| != |C|");
    }
    for (const auto& p : rec.pieces) {
        auto v = validate(p.graph);
        if (!v.empty()) d.push_back("piece invalid: " + v.front());
    }
    return d;
}

// Transform of the U-sets, restricted to each output piece.
inline std::vector<USets> update_usets(const USets& us, const SurgeryRecord& rec) {
    const auto& G = *rec.input;
    {
        auto d = validate_usets(G, us);
        if (!d.empty()) throw Error("invariant violation on input U-sets: " + d.front());
    }
    const auto& R = rec.raw;
    std::vector<char> onC(G.n(), 0);
    for (int v : rec.cycle) onC[v] = 1;
    std::vector<int> U0r, U0bar_r;
    for (int v : us.U0)
        if (!onC[v]) U0r.push_back(v);
    for (int v : us.U0bar)
        if (!onC[v]) U0bar_r.push_back(v);
    U0r.push_back(R.v1);
    if (!rec.one_sided) U0r.push_back(R.v2);
    for (int v : R.c1) U0bar_r.push_back(v);
    for (int v : R.c2) U0bar_r.push_back(v);
    std::vector<USets> out(rec.pieces.size());
    for (auto& o : out) o.dU = us.dU + 1;
    for (int v : U0r) {
        auto [p, j] = rec.raw_to_piece[v];
        out[p].U0.push_back(j);
    }
    for (int v : U0bar_r) {
        auto [p, j] = rec.raw_to_piece[v];
        out[p].U0bar.push_back(j);
    }
    for (size_t i = 0; i < out.size(); ++i) {
        out[i].normalize();
        auto d = validate_usets(rec.pieces[i].graph, out[i]);
        if (!d.empty()) throw Error("U-set transform broke an invariant: " + d.front());
    }
    return out;
}

// D' given per piece (local ids). Returns D on the input graph.
inline std::vector<int> pullback_dominating_set(const SurgeryRecord& rec, const std::vector<std::vector<int>>& Dp) {
    if (Dp.size() != rec.pieces.size()) throw Error("pullback: piece count mismatch");
    const auto& R = rec.raw;
    std::vector<char> inD(R.graph.n(), 0);
    for (size_t i = 0; i < Dp.size(); ++i)
        for (int v : Dp[i]) {
            if (v < 0 || v >= rec.pieces[i].graph.n()) throw Error("pullback: vertex out of range");
            inD[rec.pieces[i].origin[v]] = 1;
        }
    auto need = [&](int v) {
        if (!inD[v]) throw Error("pullback precondition: D' misses copy or apex " + std::to_string(v));
    };
    for (int v : R.c1) need(v);
    for (int v : R.c2) need(v);
    need(R.v1);
    if (R.v2 >= 0) need(R.v2);
    std::vector<char> out(rec.input->n(), 0);
    for (int v = 0; v < R.graph.n(); ++v)
        if (inD[v] && R.origin[v] >= 0) out[R.origin[v]] = 1;
    for (int v : rec.cycle) out[v] = 1;
    std::vector<int> D;
    for (int v = 0; v < rec.input->n(); ++v)
        if (out[v]) D.push_back(v);
    return D;
}

// ---------------------------------------------------------------- identification

struct Identified {
    Triangulation graph;
    std::vector<int> new_id;  // input vertex -> output vertex
    std::vector<std::string> diagnostics;
};

// Glue marked boundary faces C1 and C2 of G: C2[corr[i]] becomes C1[i].
inline Identified identify_boundary_pair(const Triangulation& G, const Cycle& C1, const Cycle& C2,
                                         const std::vector<int>& corr) {
    const size_t w = C1.size();
    if (C2.size() != w || corr.size() != w) throw Error("identify: length mismatch");
    if (!G.is_marked(C1) || !G.is_marked(C2)) throw Error("identify: boundary cycles must be marked faces");
    std::vector<int> to(G.n());
    std::iota(to.begin(), to.end(), 0);
    for (size_t i = 0; i < w; ++i) to[C2[corr[i]]] = C1[i];
    // corr must carry consecutive C1 vertices to consecutive C2 vertices
    for (size_t i = 0; i < w; ++i) {
        int d = mod(corr[(i + 1) % w] - corr[i], static_cast<long long>(w));
        if (d != 1 && d != static_cast<int>(w) - 1) throw Error("identify: correspondence does not preserve the cycle");
    }
    Identified out;
    out.new_id.assign(G.n(), -1);
    int next = 0;
    for (int v = 0; v < G.n(); ++v)
        if (to[v] == v) out.new_id[v] = next++;
    for (int v = 0; v < G.n(); ++v) out.new_id[v] = out.new_id[to[v]];
    std::vector<std::vector<int>> polys, marked;
    for (const auto& f : G.faces()) {
        if (G.is_marked(f.verts)) {
            auto c = canonical_cycle(f.verts);
            if (c == canonical_cycle(C1) || c == canonical_cycle(C2)) continue;
            std::vector<int> p;
            for (int v : f.verts) p.push_back(out.new_id[v]);
            marked.push_back(p);
            continue;
        }
        std::vector<int> p;
        for (int v : f.verts) p.push_back(out.new_id[v]);
        polys.push_back(p);
    }
    try {
        out.graph = from_faces(next, polys, marked);
    } catch (const Error& e) {
        std::string m = e.what();
        if (m == "loop") throw Error("identification creates a loop");
        if (m == "parallel edge") throw Error("identification creates a parallel edge");
        throw;
    }
    for (int v : C1) {
        int id = out.new_id[v];
        if (out.graph.degree(id) != 6)
            out.diagnostics.push_back("identified vertex " + std::to_string(id) + " has degree " +
                                      std::to_string(out.graph.degree(id)));
    }
    return out;
}

}  // namespace surfdom
