#ifndef WITNESS_RENDER_HPP
#define WITNESS_RENDER_HPP

#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "witness/crossings.hpp"
#include "witness/orbital.hpp"
#include "witness/style.hpp"

namespace witness {

/// Straight segment or circular arc. Arcs use screen angles (see
/// polar_point) and run from `start` by `sweep` radians.
struct CurvePiece {
    bool arc = false;
    Point a, b;  // segment endpoints, or arc endpoints for convenience
    Point center;
    double radius = 0.0;
    double start = 0.0;
    double sweep = 0.0;

    static CurvePiece segment(Point p, Point q) { return {false, p, q, {}, 0.0, 0.0, 0.0}; }
    static CurvePiece circle_arc(Point c, double r, double start, double sweep) {
        return {true, polar_point(c, r, start), polar_point(c, r, start + sweep), c, r, start, sweep};
    }
};

using Curve = std::vector<CurvePiece>;

struct Disk {
    BagIndex bag = 0;
    Point center;
    double radius = 1.0;
};

struct VertexPoint {
    BagIndex bag = 0;
    Vertex vertex = 0;
    Point at;
};

struct EdgeCurve {
    BagIndex bag = 0;
    Edge edge;
    Curve curve;
};

struct TrackCurve {
    Vertex vertex = 0;
    BagIndex from = 0;  // parent
    BagIndex to = 0;    // child
    Curve curve;
};

struct Layout {
    Variant variant = Variant::L2;
    std::vector<Disk> disks;
    std::vector<VertexPoint> vertex_points;
    std::vector<EdgeCurve> edge_curves;
    std::vector<TrackCurve> track_curves;
    std::map<Vertex, std::string> palette;
    std::vector<std::pair<BagIndex, BagIndex>> tree_edges;  // parent, child
    double vertex_circle = 0.0;                              // O style only
};

// ---------------------------------------------------------------------------
// Palette

inline std::string hex_color(int r, int g, int b) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
    return buf;
}

inline std::string rotate_hue(const std::string& hex, double degrees) {
    int ri = 0, gi = 0, bi = 0;
    std::sscanf(hex.c_str(), "#%02x%02x%02x", &ri, &gi, &bi);
    double r = ri / 255.0, g = gi / 255.0, b = bi / 255.0;
    double mx = std::max({r, g, b}), mn = std::min({r, g, b});
    double l = (mx + mn) / 2, h = 0, s = 0;
    if (mx != mn) {
        double d = mx - mn;
        s = l > 0.5 ? d / (2 - mx - mn) : d / (mx + mn);
        if (mx == r)
            h = (g - b) / d + (g < b ? 6 : 0);
        else if (mx == g)
            h = (b - r) / d + 2;
        else
            h = (r - g) / d + 4;
        h *= 60;
    }
    h = std::fmod(h + degrees, 360.0);
    auto f = [&](double n) {
        double k = std::fmod(n + h / 30.0, 12.0);
        double a = s * std::min(l, 1 - l);
        return l - a * std::max(-1.0, std::min({k - 3, 9 - k, 1.0}));
    };
    return hex_color(static_cast<int>(std::lround(f(0) * 255)), static_cast<int>(std::lround(f(8) * 255)),
                     static_cast<int>(std::lround(f(4) * 255)));
}

inline const std::vector<std::string>& base_palette() {
    static const std::vector<std::string> colors = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                                    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#e7969c"};
    return colors;
}

// Past the base cycle, hue-rotated copies; a rotation can repeat an earlier
// color (grey has no hue), so repeats are skipped.
inline std::string palette_color(int index) {
    const auto& base = base_palette();
    const auto n = static_cast<int>(base.size());
    if (index < n) return base[static_cast<std::size_t>(index)];
    std::set<std::string> seen(base.begin(), base.end());
    std::string c;
    for (int m = n, found = n - 1; found < index; ++m) {
        c = rotate_hue(base[static_cast<std::size_t>(m % n)], 29.0 * (m / n));
        if (seen.insert(c).second) ++found;
    }
    return c;
}

/// Greedy coloring of the graph joining vertices that share a bag.
inline std::map<Vertex, std::string> co_bag_palette(const Decomposition& t, int n) {
    std::vector<std::set<Vertex>> conflicts(static_cast<std::size_t>(n));
    for (const auto& bag : t.bags)
        for (auto u : bag)
            for (auto v : bag)
                if (u != v) conflicts[static_cast<std::size_t>(u)].insert(v);
    std::vector<int> color(static_cast<std::size_t>(n), -1);
    std::map<Vertex, std::string> out;
    for (int v = 0; v < n; ++v) {
        std::set<int> used;
        for (auto u : conflicts[static_cast<std::size_t>(v)])
            if (color[static_cast<std::size_t>(u)] >= 0) used.insert(color[static_cast<std::size_t>(u)]);
        int c = 0;
        while (used.count(c)) ++c;
        color[static_cast<std::size_t>(v)] = c;
        out[v] = palette_color(c);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Realization

namespace detail {

inline Curve reversed(Curve c) {
    std::reverse(c.begin(), c.end());
    for (auto& p : c) {
        std::swap(p.a, p.b);
        if (p.arc) {
            p.start += p.sweep;
            p.sweep = -p.sweep;
        }
    }
    return c;
}

// Orbital route of one track inside its disk, from the vertex outwards.
inline Curve orbital_route(Point center, double vertex_radius, const OrbitalTrack& t, const GeometryConfig& cfg, int w_plus) {
    Curve c;
    const double r = cfg.orbit_radius(t.orbit, w_plus);
    c.push_back(CurvePiece::segment(polar_point(center, vertex_radius, t.span.start), polar_point(center, r, t.span.start)));
    if (std::abs(t.span.sweep) > 0) c.push_back(CurvePiece::circle_arc(center, r, t.span.start, t.span.sweep));
    c.push_back(CurvePiece::segment(polar_point(center, r, t.exit_angle), orbital_exit_point(center, t, cfg)));
    return c;
}

}  // namespace detail

inline Layout realize(const Instance& inst, const WitnessDrawing& d, const GeometryConfig& cfg = {}) {
    cfg.check();
    if (static_cast<int>(d.per_bag.size()) != inst.bag_count())
        throw Error(ErrorCode::InvalidArgument, "drawing does not cover every bag");
    Layout L;
    const auto variant = d.style.variant;
    L.variant = variant;
    L.palette = co_bag_palette(inst.decomposition, inst.graph.vertex_count());
    const double R = cfg.disk_radius;
    auto centers = bag_centers(inst, d, cfg);
    std::vector<std::map<Vertex, Point>> where(static_cast<std::size_t>(inst.bag_count()));
    for (int i = 0; i < inst.bag_count(); ++i) {
        const auto& bd = d.per_bag[static_cast<std::size_t>(i)];
        const Point c = centers[static_cast<std::size_t>(i)];
        L.disks.push_back({i, c, R});
        where[static_cast<std::size_t>(i)] = vertex_position_map(bd, variant, cfg, inst.w_plus, c);
        for (auto v : bd.order) L.vertex_points.push_back({i, v, where[static_cast<std::size_t>(i)][v]});
        const auto& bg = inst.bag_graph(i);
        for (std::size_t j = 0; j < bg.edges.size(); ++j) {
            const auto& e = bg.edges[j];
            Point p = where[static_cast<std::size_t>(i)][e.u], q = where[static_cast<std::size_t>(i)][e.v];
            Curve curve;
            if (d.style.linear()) {
                if (p.y > q.y) std::swap(p, q);
                Point mid = 0.5 * (p + q);
                double r = (q.y - p.y) / 2.0;
                bool right = !bd.pages.empty() && bd.pages[j] == static_cast<std::uint8_t>(Page::Right);
                curve.push_back(CurvePiece::circle_arc(mid, r, 0.0, right ? -std::numbers::pi : std::numbers::pi));
            } else {
                curve.push_back(CurvePiece::segment(p, q));
            }
            L.edge_curves.push_back({i, e, curve});
        }
    }
    std::vector<OrbitalRouting> routes;
    if (variant == Variant::O) {
        L.vertex_circle = cfg.vertex_circle_radius();
        for (int i = 0; i < inst.bag_count(); ++i)
            routes.push_back(route_orbital(inst.context(i), inst.bag_graph(i), d.per_bag[static_cast<std::size_t>(i)], cfg, inst.w_plus));
    }
    for (auto p : inst.tree.top_down) {
        const auto& ctx = inst.context(p);
        const auto& bd = d.per_bag[static_cast<std::size_t>(p)];
        const Point pc = centers[static_cast<std::size_t>(p)];
        const auto m = bd.order.size();
        const double spacing = m > 1 ? 2.0 * cfg.spine_ratio * R / static_cast<double>(m - 1) : R;
        for (std::size_t j = 0; j < ctx.children.size(); ++j) {
            const int c = ctx.children[j];
            const Point cc = centers[static_cast<std::size_t>(c)];
            L.tree_edges.emplace_back(p, c);
            double fan = 0.0;
            if (ctx.child_count() == 2) {
                bool upper = (static_cast<int>(j) + 1 == kFirstChildSlot) != bd.flipped;
                fan = (upper ? -1.0 : 1.0) * spacing / 4.0;
            }
            for (auto v : ctx.shared_with_child[j]) {
                Point a = where[static_cast<std::size_t>(p)][v], b = where[static_cast<std::size_t>(c)][v];
                Curve curve;
                if (d.style.linear()) {
                    // Out of the spine past every arc, then across. Tracks of one
                    // vertex to both children part right at the vertex.
                    Point k1{pc.x + 0.85 * R, a.y}, k2{pc.x + R, a.y + fan}, k3{cc.x - R, b.y};
                    if (fan == 0.0) curve.push_back(CurvePiece::segment(a, k1));
                    curve.push_back(CurvePiece::segment(fan == 0.0 ? k1 : a, k2));
                    curve.push_back(CurvePiece::segment(k2, k3));
                    curve.push_back(CurvePiece::segment(k3, b));
                } else if (variant == Variant::C) {
                    curve.push_back(CurvePiece::segment(a, b));
                } else {
                    const auto& rp = routes[static_cast<std::size_t>(p)];
                    const auto& rc = routes[static_cast<std::size_t>(c)];
                    const auto* tp = rp.find(inst.bag_graph(p).local_index(v), static_cast<int>(j) + 1);
                    const auto* tc = rc.find(inst.bag_graph(c).local_index(v), kParentSlot);
                    curve = detail::orbital_route(pc, cfg.vertex_circle_radius(), *tp, cfg, inst.w_plus);
                    curve.push_back(CurvePiece::segment(orbital_exit_point(pc, *tp, cfg), orbital_exit_point(cc, *tc, cfg)));
                    auto back = detail::reversed(detail::orbital_route(cc, cfg.vertex_circle_radius(), *tc, cfg, inst.w_plus));
                    curve.insert(curve.end(), back.begin(), back.end());
                }
                L.track_curves.push_back({v, p, c, curve});
            }
        }
    }
    return L;
}

// ---------------------------------------------------------------------------
// SVG

struct SvgOptions {
    bool labels = true;
    bool show_tree_edges = true;
    double scale = 60.0;  // pixels per unit
};

inline std::string fmt_num(double x, int decimals = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    std::string s = buf;
    if (s.find_first_not_of("-0.") == std::string::npos) return decimals > 0 ? "0." + std::string(static_cast<std::size_t>(decimals), '0') : "0";
    return s;
}

inline std::string svg_path(const Curve& c, double k, Point shift) {
    std::ostringstream out;
    auto P = [&](Point p) { return fmt_num((p.x + shift.x) * k) + "," + fmt_num((p.y + shift.y) * k); };
    bool first = true;
    Point last;
    for (const auto& piece : c) {
        if (first || distance(piece.a, last) > 1e-9) out << (first ? "M" : " M") << P(piece.a);
        first = false;
        if (piece.arc) {
            // Screen-ccw sweeps are counterclockwise on screen, i.e. SVG sweep-flag 0.
            int large = std::abs(piece.sweep) > std::numbers::pi + 1e-12 ? 1 : 0;
            int sweep = piece.sweep > 0 ? 0 : 1;
            out << " A" << fmt_num(piece.radius * k) << "," << fmt_num(piece.radius * k) << " 0 " << large << " " << sweep << " " << P(piece.b);
        } else {
            out << " L" << P(piece.b);
        }
        last = piece.b;
    }
    return out.str();
}

inline std::string to_svg(const Layout& L, const SvgOptions& opt = {}) {
    const double k = opt.scale;
    double minx = 0, miny = 0, maxx = 0, maxy = 0;
    bool any = false;
    for (const auto& d : L.disks) {
        if (!any) {
            minx = d.center.x - d.radius;
            maxx = d.center.x + d.radius;
            miny = d.center.y - d.radius;
            maxy = d.center.y + d.radius;
            any = true;
        }
        minx = std::min(minx, d.center.x - d.radius);
        maxx = std::max(maxx, d.center.x + d.radius);
        miny = std::min(miny, d.center.y - d.radius);
        maxy = std::max(maxy, d.center.y + d.radius);
    }
    const double margin = 0.5;
    Point shift{-minx + margin, -miny + margin};
    const double W = any ? (maxx - minx + 2 * margin) * k : 1.0, H = any ? (maxy - miny + 2 * margin) * k : 1.0;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt_num(W) << "\" height=\"" << fmt_num(H)
        << "\" viewBox=\"0 0 " << fmt_num(W) << " " << fmt_num(H) << "\">\n";
    auto X = [&](double x) { return fmt_num((x + shift.x) * k); };
    auto Y = [&](double y) { return fmt_num((y + shift.y) * k); };
    std::map<BagIndex, Disk> disk_of;
    for (const auto& d : L.disks) disk_of[d.bag] = d;
    if (opt.show_tree_edges) {
        for (auto [p, c] : L.tree_edges) {
            const auto& a = disk_of[p];
            const auto& b = disk_of[c];
            Point dir = b.center - a.center;
            double len = norm(dir);
            if (len <= a.radius + b.radius) continue;
            Point u = (1.0 / len) * dir;
            Point s = a.center + a.radius * u, e = b.center - b.radius * u;
            out << "<line x1=\"" << X(s.x) << "\" y1=\"" << Y(s.y) << "\" x2=\"" << X(e.x) << "\" y2=\"" << Y(e.y)
                << "\" stroke=\"#d0d0d0\" stroke-width=\"6\"/>\n";
        }
    }
    for (const auto& d : L.disks) {
        out << "<circle cx=\"" << X(d.center.x) << "\" cy=\"" << Y(d.center.y) << "\" r=\"" << fmt_num(d.radius * k)
            << "\" fill=\"#f7f7f7\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
        if (L.variant == Variant::O)
            out << "<circle cx=\"" << X(d.center.x) << "\" cy=\"" << Y(d.center.y) << "\" r=\"" << fmt_num(L.vertex_circle * k)
                << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"0.5\" stroke-dasharray=\"2,2\"/>\n";
    }
    for (const auto& t : L.track_curves) {
        auto it = L.palette.find(t.vertex);
        out << "<path d=\"" << svg_path(t.curve, k, shift) << "\" fill=\"none\" stroke=\"" << (it != L.palette.end() ? it->second : "#000000")
            << "\" stroke-width=\"2\"/>\n";
    }
    for (const auto& e : L.edge_curves)
        out << "<path d=\"" << svg_path(e.curve, k, shift) << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n";
    std::map<BagIndex, int> bag_sizes;
    for (const auto& vp : L.vertex_points) ++bag_sizes[vp.bag];
    for (const auto& vp : L.vertex_points) {
        auto it = L.palette.find(vp.vertex);
        out << "<rect x=\"" << fmt_num((vp.at.x + shift.x) * k - 4) << "\" y=\"" << fmt_num((vp.at.y + shift.y) * k - 4)
            << "\" width=\"8\" height=\"8\" rx=\"4\" fill=\""
            << (it != L.palette.end() ? it->second : "#000000") << "\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
        if (opt.labels && bag_sizes[vp.bag] <= 30) {
            const auto& d = disk_of[vp.bag];
            Point at = vp.at;
            if (L.variant == Variant::L1 || L.variant == Variant::L2) {
                at.x += 0.08;
            } else {
                Point dir = vp.at - d.center;
                double len = norm(dir);
                if (len > 0) at = vp.at + (0.12 / len) * dir;
            }
            out << "<text x=\"" << X(at.x) << "\" y=\"" << Y(at.y) << "\" font-family=\"sans-serif\" font-size=\"10\">" << vp.vertex + 1
                << "</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace witness

#endif
