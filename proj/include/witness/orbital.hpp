#ifndef WITNESS_ORBITAL_HPP
#define WITNESS_ORBITAL_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "witness/error.hpp"
#include "witness/geometry.hpp"
#include "witness/style.hpp"

namespace witness {

// Orbital routing inside one disk. A track of v towards neighbor slot s
// climbs radially from v to orbit lambda(v), follows the orbit in direction
// delta(v, s) to its exit angle near the port of s, then leaves radially to
// the annulus boundary. Exit angles are spread around the port: tracks that
// arrive moving counterclockwise exit on the clockwise side of the port,
// innermost orbit nearest to it, and symmetrically for clockwise movers, so
// two tracks heading to the same port never cross each other.

struct OrbitalTrack {
    Vertex vertex = 0;
    int local = 0;
    int slot = 0;
    int orbit = 1;
    Direction direction = Direction::Ccw;
    double exit_angle = 0.0;
    AngularSpan span;
};

struct OrbitalRouting {
    std::vector<double> vertex_angle;  // per local vertex
    std::vector<OrbitalTrack> tracks;
    bool valid = true;  // orbit-sharing constraint holds

    const OrbitalTrack* find(int local, int slot) const {
        for (const auto& t : tracks)
            if (t.local == local && t.slot == slot) return &t;
        return nullptr;
    }
};

inline double port_angle(const BagContext& ctx, int slot, bool flipped, const GeometryConfig& cfg) {
    constexpr double west = std::numbers::pi / 2.0;
    constexpr double east = 3.0 * std::numbers::pi / 2.0;
    if (slot == kParentSlot) return west;
    if (ctx.child_count() < 2) return east;
    bool upper = (slot == kFirstChildSlot) != flipped;
    return upper ? east + cfg.port_tilt : east - cfg.port_tilt;
}

inline OrbitalRouting route_orbital(const BagContext& ctx, const BagGraph& bg, const BagDrawing& bd,
                                    const GeometryConfig& cfg, int w_plus) {
    OrbitalRouting r;
    const auto m = bg.vertices.size();
    const double alpha = cfg.resolved_alpha(w_plus);
    r.vertex_angle.assign(m, 0.0);
    for (std::size_t k = 0; k < bd.order.size(); ++k) {
        int l = bg.local_index(bd.order[k]);
        r.vertex_angle[static_cast<std::size_t>(l)] = normalize_angle(alpha + kTwoPi * static_cast<double>(k) / static_cast<double>(m));
    }
    for (int slot = 0; slot < 3; ++slot) {
        std::vector<OrbitalTrack> group[2];
        for (std::size_t l = 0; l < m; ++l) {
            if (!(ctx.track_mask[l] & (1u << slot))) continue;
            OrbitalTrack t;
            t.vertex = bg.vertices[l];
            t.local = static_cast<int>(l);
            t.slot = slot;
            t.orbit = bd.orbits.empty() ? 1 : bd.orbits[l];
            t.direction = bd.directions.empty() ? Direction::Ccw : static_cast<Direction>(bd.directions[l * 3 + static_cast<std::size_t>(slot)]);
            group[static_cast<int>(t.direction)].push_back(t);
        }
        if (group[0].empty() && group[1].empty()) continue;
        const double port = port_angle(ctx, slot, bd.flipped, cfg);
        for (int dir = 0; dir < 2; ++dir) {
            auto& g = group[dir];
            std::sort(g.begin(), g.end(), [](const OrbitalTrack& a, const OrbitalTrack& b) {
                return a.orbit != b.orbit ? a.orbit < b.orbit : a.vertex < b.vertex;
            });
            r.tracks.reserve(r.tracks.size() + g.size());
            for (std::size_t rank = 0; rank < g.size(); ++rank) {
                auto& t = g[rank];
                double off = (static_cast<double>(rank) + 0.5) * cfg.slot_step;
                const double phi = r.vertex_angle[static_cast<std::size_t>(t.local)];
                if (t.direction == Direction::Ccw) {
                    t.exit_angle = normalize_angle(port - off);
                    t.span = {phi, ccw_sweep(phi, t.exit_angle)};
                } else {
                    t.exit_angle = normalize_angle(port + off);
                    t.span = {phi, -ccw_sweep(t.exit_angle, phi)};
                }
                r.tracks.push_back(t);
            }
        }
    }
    for (const auto& t : r.tracks)
        for (std::size_t l = 0; l < m; ++l) {
            if (static_cast<int>(l) == t.local) continue;
            double d = std::abs(normalize_angle(r.vertex_angle[l] - t.exit_angle + std::numbers::pi) - std::numbers::pi);
            if (d < 1e-9) throw Error(ErrorCode::DegenerateGeometry, "vertex lies on an exit slot");
        }
    for (std::size_t a = 0; a < r.tracks.size() && r.valid; ++a)
        for (std::size_t b = a + 1; b < r.tracks.size(); ++b) {
            const auto& ta = r.tracks[a];
            const auto& tb = r.tracks[b];
            if (ta.local != tb.local && ta.orbit == tb.orbit && spans_overlap(ta.span, tb.span)) {
                r.valid = false;
                break;
            }
        }
    return r;
}

/// Track-track crossings inside one disk's routing area, counted once per
/// distinct crossing location per vertex pair.
inline long long orbital_in_disk_tt(const OrbitalRouting& r) {
    const auto m = r.vertex_angle.size();
    std::vector<std::vector<const OrbitalTrack*>> by_vertex(m);
    for (const auto& t : r.tracks) by_vertex[static_cast<std::size_t>(t.local)].push_back(&t);
    auto passes = [&](std::size_t u, double angle) {
        for (auto* t : by_vertex[u])
            if (t->span.strictly_contains(angle)) return true;
        return false;
    };
    long long count = 0;
    for (std::size_t u = 0; u < m; ++u) {
        if (by_vertex[u].empty()) continue;
        const int lu = by_vertex[u].front()->orbit;
        for (std::size_t v = 0; v < m; ++v) {
            if (u == v || by_vertex[v].empty()) continue;
            const int lv = by_vertex[v].front()->orbit;
            // v's climb to its orbit crosses u's lower orbit where u passes v.
            if (lu < lv && passes(u, r.vertex_angle[v])) ++count;
            // v's exit leaves through u's higher orbit.
            if (lu > lv)
                for (auto* tv : by_vertex[v])
                    if (passes(u, tv->exit_angle)) ++count;
        }
    }
    return count;
}

inline Point orbital_exit_point(Point center, const OrbitalTrack& t, const GeometryConfig& cfg) {
    return polar_point(center, cfg.annulus_outer_radius(), t.exit_angle);
}

/// Crossings among the straight inter-disk pieces of the tracks between a
/// parent and one child.
inline long long orbital_inter_disk_tt(const OrbitalRouting& parent, Point parent_center, int child_slot,
                                       const OrbitalRouting& child, Point child_center, const BagGraph& child_bg,
                                       const GeometryConfig& cfg) {
    struct Seg {
        Point a, b;
    };
    std::vector<Seg> segs;
    for (const auto& t : parent.tracks) {
        if (t.slot != child_slot) continue;
        int lc = child_bg.local_index(t.vertex);
        const auto* tc = child.find(lc, kParentSlot);
        if (!tc) continue;
        segs.push_back({orbital_exit_point(parent_center, t, cfg), orbital_exit_point(child_center, *tc, cfg)});
    }
    long long count = 0;
    for (std::size_t a = 0; a < segs.size(); ++a)
        for (std::size_t b = a + 1; b < segs.size(); ++b) {
            auto x = segment_intersection(segs[a].a, segs[a].b, segs[b].a, segs[b].b);
            if (x.kind == IntersectionKind::Cross) ++count;
            else if (x.kind != IntersectionKind::None)
                throw Error(ErrorCode::DegenerateGeometry, "inter-disk tracks touch");
        }
    return count;
}

}  // namespace witness

#endif
