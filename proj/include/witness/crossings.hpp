#ifndef WITNESS_CROSSINGS_HPP
#define WITNESS_CROSSINGS_HPP

#include <algorithm>
#include <vector>

#include "witness/error.hpp"
#include "witness/geometry.hpp"
#include "witness/orbital.hpp"
#include "witness/style.hpp"

namespace witness {

/// Position of every local vertex of `bg` in `bd.order`.
inline std::vector<int> local_positions(const BagGraph& bg, const BagDrawing& bd) {
    std::vector<int> pos(bg.vertices.size(), -1);
    for (std::size_t k = 0; k < bd.order.size(); ++k) pos[static_cast<std::size_t>(bg.local_index(bd.order[k]))] = static_cast<int>(k);
    return pos;
}

inline int position_of(const BagDrawing& bd, Vertex v) {
    for (std::size_t k = 0; k < bd.order.size(); ++k)
        if (bd.order[k] == v) return static_cast<int>(k);
    return -1;
}

inline bool alternate(int a, int b, int c, int d) {
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

/// Edge-edge crossings of one bag. Only the two-page style separates edges
/// by page; every other style draws all edges on one side.
inline long long cr_ee(const BagGraph& bg, const BagDrawing& bd, Variant variant) {
    auto pos = local_positions(bg, bd);
    const auto& E = bg.edges;
    long long count = 0;
    for (std::size_t a = 0; a < E.size(); ++a) {
        int pa = pos[static_cast<std::size_t>(bg.local_index(E[a].u))], qa = pos[static_cast<std::size_t>(bg.local_index(E[a].v))];
        for (std::size_t b = a + 1; b < E.size(); ++b) {
            if (variant == Variant::L2 && bd.pages[a] != bd.pages[b]) continue;
            int pb = pos[static_cast<std::size_t>(bg.local_index(E[b].u))], qb = pos[static_cast<std::size_t>(bg.local_index(E[b].v))];
            if (alternate(pa, qa, pb, qb)) ++count;
        }
    }
    return count;
}

/// Edges of `bg` on `page` counted once per shared vertex lying strictly
/// between their endpoints.
inline long long edges_spanning(const BagGraph& bg, const BagDrawing& bd, Page page, const std::vector<Vertex>& shared) {
    auto pos = local_positions(bg, bd);
    std::vector<int> sp;
    for (auto v : shared) sp.push_back(pos[static_cast<std::size_t>(bg.local_index(v))]);
    long long count = 0;
    for (std::size_t j = 0; j < bg.edges.size(); ++j) {
        if (bd.pages.empty() || bd.pages[j] != static_cast<std::uint8_t>(page)) continue;
        int a = pos[static_cast<std::size_t>(bg.local_index(bg.edges[j].u))];
        int b = pos[static_cast<std::size_t>(bg.local_index(bg.edges[j].v))];
        if (a > b) std::swap(a, b);
        for (int p : sp)
            if (a < p && p < b) ++count;
    }
    return count;
}

/// Track-edge crossings between a bag and its right neighbor.
inline long long cr_te_linear(const BagGraph& left_bg, const BagDrawing& left, const BagGraph& right_bg,
                              const BagDrawing& right, const std::vector<Vertex>& shared) {
    return edges_spanning(left_bg, left, Page::Right, shared) + edges_spanning(right_bg, right, Page::Left, shared);
}

/// Pairs of shared vertices ordered differently by the two drawings.
inline long long inversions(const BagDrawing& a, const BagDrawing& b, const std::vector<Vertex>& shared) {
    std::vector<int> pa, pb;
    for (auto v : shared) {
        pa.push_back(position_of(a, v));
        pb.push_back(position_of(b, v));
    }
    long long count = 0;
    for (std::size_t i = 0; i < shared.size(); ++i)
        for (std::size_t j = i + 1; j < shared.size(); ++j)
            if ((pa[i] < pa[j]) != (pb[i] < pb[j])) ++count;
    return count;
}

inline long long cr_tt_linear(const BagDrawing& left, const BagDrawing& right, const std::vector<Vertex>& shared) {
    return inversions(left, right, shared);
}

/// Tracks to the upper child that start below tracks to the lower child.
inline long long criss_cross(const BagDrawing& parent, const std::vector<Vertex>& shared_upper,
                             const std::vector<Vertex>& shared_lower) {
    long long count = 0;
    for (auto u : shared_upper) {
        int pu = position_of(parent, u);
        for (auto v : shared_lower)
            if (position_of(parent, v) < pu) ++count;
    }
    return count;
}

struct ChildState {
    const BagGraph* bg;
    const BagDrawing* bd;
    const std::vector<Vertex>* shared;  // with the parent
};

inline long long cr_te_tree(const BagGraph& parent_bg, const BagDrawing& parent, const std::vector<ChildState>& children) {
    long long count = 0;
    for (const auto& c : children) count += cr_te_linear(parent_bg, parent, *c.bg, *c.bd, *c.shared);
    return count;
}

/// Track-track crossings around a bag with children given upper first.
inline long long cr_tt_tree(const BagDrawing& parent, const std::vector<ChildState>& children) {
    long long count = 0;
    for (const auto& c : children) count += inversions(parent, *c.bd, *c.shared);
    if (children.size() == 2) count += criss_cross(parent, *children[0].shared, *children[1].shared);
    return count;
}

// ---------------------------------------------------------------------------
// Straight-line geometry of the circular style.

struct OwnedSegment {
    Point a, b;
    bool track = false;
    Vertex u = 0, v = 0;  // edge endpoints, or the track's vertex twice
};

inline std::vector<OwnedSegment> chord_segments(const BagGraph& bg, const BagDrawing& bd, const std::vector<Point>& pos) {
    std::vector<OwnedSegment> out;
    auto lp = local_positions(bg, bd);
    for (const auto& e : bg.edges)
        out.push_back({pos[static_cast<std::size_t>(lp[static_cast<std::size_t>(bg.local_index(e.u))])],
                       pos[static_cast<std::size_t>(lp[static_cast<std::size_t>(bg.local_index(e.v))])], false, e.u, e.v});
    return out;
}

inline std::vector<OwnedSegment> straight_tracks(const BagDrawing& a, const std::vector<Point>& pa, const BagDrawing& b,
                                                 const std::vector<Point>& pb, const std::vector<Vertex>& shared) {
    std::vector<OwnedSegment> out;
    for (auto v : shared)
        out.push_back({pa[static_cast<std::size_t>(position_of(a, v))], pb[static_cast<std::size_t>(position_of(b, v))], true, v, v});
    return out;
}

inline bool incident(const OwnedSegment& s, const OwnedSegment& t) {
    return s.u == t.u || s.u == t.v || s.v == t.u || s.v == t.v;
}

/// Crossings between two straight segments, 0 or 1. Curves that share a
/// vertex may meet there without crossing.
inline long long segment_crossing(const OwnedSegment& s, const OwnedSegment& t) {
    if (s.track && t.track && s.u == t.u) return 0;
    auto x = segment_intersection(s.a, s.b, t.a, t.b);
    if (x.kind == IntersectionKind::None) return 0;
    if (x.kind == IntersectionKind::Cross) return 1;
    if (x.kind == IntersectionKind::Touch && incident(s, t)) return 0;
    throw Error(ErrorCode::DegenerateGeometry, "curves touch without crossing; choose another alpha");
}

inline long long count_between(const std::vector<OwnedSegment>& A, const std::vector<OwnedSegment>& B) {
    long long c = 0;
    for (const auto& s : A)
        for (const auto& t : B) c += segment_crossing(s, t);
    return c;
}

inline long long count_within(const std::vector<OwnedSegment>& A) {
    long long c = 0;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = i + 1; j < A.size(); ++j) c += segment_crossing(A[i], A[j]);
    return c;
}

// ---------------------------------------------------------------------------
// Full recount.

inline std::vector<Point> bag_centers(const Instance& inst, const WitnessDrawing& d, const GeometryConfig& cfg) {
    return tree_layout(inst.tree, cfg, embedding_flags(d));
}

inline CrossingTally tally_linear(const Instance& inst, const WitnessDrawing& d) {
    CrossingTally t;
    for (int i = 0; i < inst.bag_count(); ++i) {
        const auto& ctx = inst.context(i);
        const auto& bd = d.per_bag[static_cast<std::size_t>(i)];
        t.ee += cr_ee(inst.bag_graph(i), bd, d.style.variant);
        std::vector<ChildState> ch;
        for (std::size_t j = 0; j < ctx.children.size(); ++j) {
            auto c = ctx.children[j];
            ch.push_back({&inst.bag_graph(c), &d.per_bag[static_cast<std::size_t>(c)], &ctx.shared_with_child[j]});
        }
        if (bd.flipped && ch.size() == 2) std::swap(ch[0], ch[1]);
        t.te += cr_te_tree(inst.bag_graph(i), bd, ch);
        t.tt += cr_tt_tree(bd, ch);
    }
    t.total = t.tt + t.te + t.ee;
    return t;
}

inline CrossingTally tally_circular(const Instance& inst, const WitnessDrawing& d, const GeometryConfig& cfg) {
    auto centers = bag_centers(inst, d, cfg);
    std::vector<std::vector<Point>> pos;
    for (int i = 0; i < inst.bag_count(); ++i)
        pos.push_back(vertex_positions(d.per_bag[static_cast<std::size_t>(i)], Variant::C, cfg, inst.w_plus, centers[static_cast<std::size_t>(i)]));
    std::vector<OwnedSegment> chords, tracks;
    CrossingTally t;
    for (int i = 0; i < inst.bag_count(); ++i) {
        const auto& bd = d.per_bag[static_cast<std::size_t>(i)];
        auto ci = chord_segments(inst.bag_graph(i), bd, pos[static_cast<std::size_t>(i)]);
        // Chords of different disks never meet; inside a disk, straight chords
        // cross exactly when their endpoints alternate on the circle.
        t.ee += cr_ee(inst.bag_graph(i), bd, Variant::C);
        chords.insert(chords.end(), ci.begin(), ci.end());
        const auto& ctx = inst.context(i);
        for (std::size_t j = 0; j < ctx.children.size(); ++j) {
            auto c = static_cast<std::size_t>(ctx.children[j]);
            auto tr = straight_tracks(bd, pos[static_cast<std::size_t>(i)], d.per_bag[c], pos[c], ctx.shared_with_child[j]);
            tracks.insert(tracks.end(), tr.begin(), tr.end());
        }
    }
    t.te = count_between(tracks, chords);
    t.tt = count_within(tracks);
    t.total = t.tt + t.te + t.ee;
    return t;
}

inline std::vector<OwnedSegment> orbital_inter_segments(const OrbitalRouting& parent, Point pc, int slot,
                                                        const OrbitalRouting& child, Point cc, const BagGraph& child_bg,
                                                        const GeometryConfig& cfg) {
    std::vector<OwnedSegment> out;
    for (const auto& t : parent.tracks) {
        if (t.slot != slot) continue;
        const auto* tc = child.find(child_bg.local_index(t.vertex), kParentSlot);
        if (!tc) continue;
        out.push_back({orbital_exit_point(pc, t, cfg), orbital_exit_point(cc, *tc, cfg), true, t.vertex, t.vertex});
    }
    return out;
}

// `routes[i]` must be route_orbital of bag i's drawing in `d`.
inline CrossingTally tally_orbital_routed(const Instance& inst, const WitnessDrawing& d, const GeometryConfig& cfg,
                                          const std::vector<const OrbitalRouting*>& routes) {
    auto centers = bag_centers(inst, d, cfg);
    CrossingTally t;
    for (int i = 0; i < inst.bag_count(); ++i) {
        const auto& r = *routes[static_cast<std::size_t>(i)];
        if (!r.valid) throw Error(ErrorCode::InvalidArgument, "orbit-sharing constraint violated in bag " + std::to_string(i));
        t.ee += cr_ee(inst.bag_graph(i), d.per_bag[static_cast<std::size_t>(i)], Variant::O);
        t.tt += orbital_in_disk_tt(r);
    }
    std::vector<OwnedSegment> inter;
    for (int i = 0; i < inst.bag_count(); ++i) {
        const auto& ctx = inst.context(i);
        for (auto c : ctx.children) {
            auto s = orbital_inter_segments(*routes[static_cast<std::size_t>(i)], centers[static_cast<std::size_t>(i)], ctx.slot_of_child(c),
                                            *routes[static_cast<std::size_t>(c)], centers[static_cast<std::size_t>(c)], inst.bag_graph(c), cfg);
            inter.insert(inter.end(), s.begin(), s.end());
        }
    }
    t.tt += count_within(inter);
    t.total = t.tt + t.te + t.ee;
    return t;
}

inline CrossingTally tally_orbital(const Instance& inst, const WitnessDrawing& d, const GeometryConfig& cfg) {
    std::vector<OrbitalRouting> routes;
    for (int i = 0; i < inst.bag_count(); ++i)
        routes.push_back(route_orbital(inst.context(i), inst.bag_graph(i), d.per_bag[static_cast<std::size_t>(i)], cfg, inst.w_plus));
    std::vector<const OrbitalRouting*> ptr;
    for (const auto& r : routes) ptr.push_back(&r);
    return tally_orbital_routed(inst, d, cfg, ptr);
}

/// Full recount of a complete drawing from scratch.
inline CrossingTally tally(const Instance& inst, const WitnessDrawing& d, const GeometryConfig& cfg = {}) {
    if (static_cast<int>(d.per_bag.size()) != inst.bag_count())
        throw Error(ErrorCode::InvalidArgument, "drawing does not cover every bag");
    switch (d.style.variant) {
        case Variant::L1:
        case Variant::L2: return tally_linear(inst, d);
        case Variant::C: return tally_circular(inst, d, cfg);
        case Variant::O: return tally_orbital(inst, d, cfg);
    }
    return {};
}

}  // namespace witness

#endif
