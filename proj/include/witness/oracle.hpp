#ifndef WITNESS_ORACLE_HPP
#define WITNESS_ORACLE_HPP

#include <cmath>
#include <map>
#include <vector>

#include "witness/render.hpp"

namespace witness {

/// Polyline through a curve, arcs split into steps of at most `max_step`.
inline std::vector<Point> flatten(const Curve& c, double max_step = std::numbers::pi / 360.0) {
    std::vector<Point> pts;
    for (const auto& piece : c) {
        if (pts.empty() || distance(pts.back(), piece.a) > 1e-12) pts.push_back(piece.a);
        if (!piece.arc) {
            pts.push_back(piece.b);
            continue;
        }
        int steps = std::max(1, static_cast<int>(std::ceil(std::abs(piece.sweep) / max_step)));
        for (int s = 1; s <= steps; ++s) pts.push_back(polar_point(piece.center, piece.radius, piece.start + piece.sweep * s / steps));
    }
    return pts;
}

namespace detail {

struct OracleCurve {
    bool track = false;
    Vertex u = 0, v = 0;  // edge endpoints or track vertex
    std::vector<Point> pts;
    double minx, miny, maxx, maxy;
};

inline OracleCurve oracle_curve(bool track, Vertex u, Vertex v, const Curve& c) {
    OracleCurve o{track, u, v, flatten(c), 0, 0, 0, 0};
    o.minx = o.maxx = o.pts.front().x;
    o.miny = o.maxy = o.pts.front().y;
    for (auto p : o.pts) {
        o.minx = std::min(o.minx, p.x);
        o.maxx = std::max(o.maxx, p.x);
        o.miny = std::min(o.miny, p.y);
        o.maxy = std::max(o.maxy, p.y);
    }
    return o;
}

// Meeting points of two polylines, appended to `found` unless already there.
inline void meeting_points(const OracleCurve& A, const OracleCurve& B, std::vector<Point>& found) {
    const double eps = 1e-7;
    if (A.maxx < B.minx - eps || B.maxx < A.minx - eps || A.maxy < B.miny - eps || B.maxy < A.miny - eps) return;
    for (std::size_t i = 0; i + 1 < A.pts.size(); ++i)
        for (std::size_t j = 0; j + 1 < B.pts.size(); ++j) {
            const Point a0 = A.pts[i], a1 = A.pts[i + 1], b0 = B.pts[j], b1 = B.pts[j + 1];
            if (std::max(a0.x, a1.x) < std::min(b0.x, b1.x) - eps || std::max(b0.x, b1.x) < std::min(a0.x, a1.x) - eps ||
                std::max(a0.y, a1.y) < std::min(b0.y, b1.y) - eps || std::max(b0.y, b1.y) < std::min(a0.y, a1.y) - eps)
                continue;
            auto x = segment_intersection(A.pts[i], A.pts[i + 1], B.pts[j], B.pts[j + 1]);
            if (x.kind == IntersectionKind::None) continue;
            if (x.kind == IntersectionKind::Overlap) throw Error(ErrorCode::DegenerateGeometry, "curves overlap");
            bool seen = false;
            for (auto p : found)
                if (distance(p, x.at) < 1e-4) seen = true;  // above the flattening error
            if (!seen) found.push_back(x.at);
        }
}

}  // namespace detail

/// Crossing tally by brute-force intersection of the realized curves. Curves
/// that share a vertex (two tracks of it, or an edge and a track at one of
/// its endpoints, or two edges with a common endpoint) are never counted.
inline CrossingTally layout_crossings(const Layout& L) {
    // One entity per edge of a bag, and one per vertex for all its tracks:
    // tracks of one vertex that run together cross another curve only once.
    std::vector<std::vector<detail::OracleCurve>> entities;
    for (const auto& e : L.edge_curves) entities.push_back({detail::oracle_curve(false, e.edge.u, e.edge.v, e.curve)});
    std::map<Vertex, std::size_t> track_entity;
    for (const auto& t : L.track_curves) {
        auto [it, fresh] = track_entity.try_emplace(t.vertex, entities.size());
        if (fresh) entities.emplace_back();
        entities[it->second].push_back(detail::oracle_curve(true, t.vertex, t.vertex, t.curve));
    }
    CrossingTally out;
    for (std::size_t a = 0; a < entities.size(); ++a)
        for (std::size_t b = a + 1; b < entities.size(); ++b) {
            const auto& A0 = entities[a].front();
            const auto& B0 = entities[b].front();
            if (A0.u == B0.u || A0.u == B0.v || A0.v == B0.u || A0.v == B0.v) continue;
            std::vector<Point> found;
            for (const auto& A : entities[a])
                for (const auto& B : entities[b]) detail::meeting_points(A, B, found);
            auto n = static_cast<long long>(found.size());
            if (A0.track && B0.track)
                out.tt += n;
            else if (A0.track || B0.track)
                out.te += n;
            else
                out.ee += n;
        }
    out.total = out.tt + out.te + out.ee;
    return out;
}

inline CrossingTally brute_force_geometric_oracle(const Instance& inst, const WitnessDrawing& d, const GeometryConfig& cfg = {}) {
    return layout_crossings(realize(inst, d, cfg));
}

}  // namespace witness

#endif
