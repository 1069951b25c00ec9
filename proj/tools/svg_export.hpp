#pragma once
// SVG drawings: Tutte layouts of disks and spheres, and cylinder patterns.

#include <cmath>
#include <sstream>

#include "surfdom/surfdom.hpp"

namespace surfdom::svg {

struct Layout {
    std::vector<double> x, y;
};

// Barycentric (Tutte) layout: an outer cycle pinned to the unit circle, everything else averaged.
inline Layout tutte_layout(const Triangulation& G, int iterations = 4000) {
    auto sc = classify_surface(G);
    if (!sc.sphere()) throw Error("export-svg draws disks and spheres only, got " + sc.name());
    Cycle outer;
    if (!G.marked_faces().empty()) {
        outer = G.marked_faces().front();
    } else {
        auto f = oriented(G).faces();
        outer = f.front().verts;
    }
    const int n = G.n();
    Layout L;
    L.x.assign(n, 0), L.y.assign(n, 0);
    std::vector<char> pinned(n, 0);
    const double pi = std::acos(-1.0);
    for (size_t i = 0; i < outer.size(); ++i) {
        const double t = 2 * pi * static_cast<double>(i) / static_cast<double>(outer.size());
        L.x[outer[i]] = std::cos(t), L.y[outer[i]] = std::sin(t);
        pinned[outer[i]] = 1;
    }
    for (int it = 0; it < iterations; ++it) {
        double moved = 0;
        for (int v = 0; v < n; ++v) {
            if (pinned[v]) continue;
            double sx = 0, sy = 0;
            for (int u : G.neighbors(v)) sx += L.x[u], sy += L.y[u];
            sx /= G.degree(v), sy /= G.degree(v);
            moved = std::max(moved, std::abs(sx - L.x[v]) + std::abs(sy - L.y[v]));
            L.x[v] = sx, L.y[v] = sy;
        }
        if (moved < 1e-10) break;
    }
    return L;
}

inline std::string header(double w, double h) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w
       << ' ' << h << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return os.str();
}

// Graph drawing with an optional highlighted vertex set.
inline std::string draw_graph(const Triangulation& G, const std::vector<int>& highlight = {}, double size = 800) {
    auto L = tutte_layout(G);
    std::vector<char> hi(G.n(), 0);
    for (int v : highlight) hi.at(v) = 1;
    auto px = [&](int v) { return size / 2 + (size / 2 - 20) * L.x[v]; };
    auto py = [&](int v) { return size / 2 - (size / 2 - 20) * L.y[v]; };
    std::ostringstream os;
    os << header(size, size);
    for (int v = 0; v < G.n(); ++v)
        for (int u : G.neighbors(v))
            if (v < u)
                os << "<line x1=\"" << px(v) << "\" y1=\"" << py(v) << "\" x2=\"" << px(u) << "\" y2=\"" << py(u)
                   << "\" stroke=\"#999\" stroke-width=\"0.6\"/>\n";
    const double r = std::max(1.5, std::min(6.0, 300.0 / std::sqrt(static_cast<double>(G.n()))));
    for (int v = 0; v < G.n(); ++v)
        os << "<circle cx=\"" << px(v) << "\" cy=\"" << py(v) << "\" r=\"" << (hi[v] ? 1.6 * r : r) << "\" fill=\""
           << (hi[v] ? "#c0392b" : (G.degree(v) != 6 ? "#2471a3" : "#444")) << "\"/>\n";
    os << "</svg>\n";
    return os.str();
}

// Cylinder coordinates: ring b is a row, column a a position; rows shear by half a cell.
inline std::string draw_pattern(const CylinderPattern& p, double cell = 18) {
    const int w = p.w, l = p.l;
    std::set<Cell> in(p.cells.begin(), p.cells.end());
    const double W = cell * (w + 1.5) + 20, H = cell * (l + 1) + 20;
    auto cx = [&](int a, int b) { return 10 + cell * (a + 0.5 + 0.5 * (b % 2)); };
    auto cy = [&](int b) { return H - 10 - cell * (b + 0.5); };
    std::ostringstream os;
    os << header(W, H);
    for (int b = 0; b <= l; ++b)
        for (int a = 0; a < w; ++a) {
            const bool turn = a < p.k;
            const bool boundary = b == 0 || b == l;
            os << "<circle cx=\"" << cx(a, b) << "\" cy=\"" << cy(b) << "\" r=\"" << cell * 0.3 << "\" fill=\""
               << (in.count({a, b}) ? "#c0392b" : "white") << "\" stroke=\""
               << (turn ? "#2471a3" : boundary ? "#999" : "#444") << "\"/>\n";
        }
    os << "</svg>\n";
    return os.str();
}

}  // namespace surfdom::svg
