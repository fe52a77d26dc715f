#ifndef WITNESS_STYLE_HPP
#define WITNESS_STYLE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "witness/decomposition.hpp"
#include "witness/error.hpp"
#include "witness/geometry.hpp"
#include "witness/graph.hpp"

namespace witness {

enum class Variant { L1, L2, C, O };

struct Style {
    Variant variant = Variant::L2;
    bool forbid_tt = false;  // L2 only

    bool linear() const noexcept { return variant == Variant::L1 || variant == Variant::L2; }
    friend bool operator==(const Style&, const Style&) = default;
};

inline std::string to_string(Variant v) {
    switch (v) {
        case Variant::L1: return "l1";
        case Variant::L2: return "l2";
        case Variant::C: return "c";
        case Variant::O: return "o";
    }
    return "?";
}

inline Variant parse_variant(const std::string& s) {
    if (s == "l1" || s == "L1") return Variant::L1;
    if (s == "l2" || s == "L2") return Variant::L2;
    if (s == "c" || s == "C") return Variant::C;
    if (s == "o" || s == "O") return Variant::O;
    throw Error(ErrorCode::InvalidArgument, "unknown style '" + s + "'");
}

enum class Page : std::uint8_t { Left = 0, Right = 1 };
enum class Direction : std::uint8_t { Ccw = 0, Cw = 1 };

/// Neighbor slots of a bag: its parent and its children in input order.
enum NeighborSlot : int { kParentSlot = 0, kFirstChildSlot = 1, kSecondChildSlot = 2 };

/// Combinatorial drawing of one bag.
///
/// `order` lists the bag's vertices top-to-bottom (linear styles) or
/// counterclockwise from the first slot (circular styles). `pages` is indexed
/// like the bag's sorted edge list. `orbits` and `directions` are indexed by
/// the vertex's position in the sorted bag (directions: `local * 3 + slot`).
/// `flipped` swaps which child is drawn above: unflipped means the first
/// child in input order is on top.
struct BagDrawing {
    BagIndex bag = 0;
    std::vector<Vertex> order;
    std::vector<std::uint8_t> pages;
    std::vector<int> orbits;
    std::vector<std::uint8_t> directions;
    bool flipped = false;

    friend bool operator==(const BagDrawing&, const BagDrawing&) = default;

    /// Lexicographic key: order, pages, orbits, directions, embedding.
    friend bool canonical_less(const BagDrawing& a, const BagDrawing& b) {
        if (a.order != b.order) return a.order < b.order;
        if (a.pages != b.pages) return a.pages < b.pages;
        if (a.orbits != b.orbits) return a.orbits < b.orbits;
        if (a.directions != b.directions) return a.directions < b.directions;
        return a.flipped < b.flipped;
    }
};

struct CrossingTally {
    long long tt = 0;
    long long te = 0;
    long long ee = 0;
    long long total = 0;

    static CrossingTally make(long long tt, long long te, long long ee) { return {tt, te, ee, tt + te + ee}; }

    CrossingTally& operator+=(const CrossingTally& o) {
        tt += o.tt;
        te += o.te;
        ee += o.ee;
        total = tt + te + ee;
        return *this;
    }
    friend bool operator==(const CrossingTally&, const CrossingTally&) = default;
};

struct WitnessDrawing {
    Style style;
    std::vector<BagDrawing> per_bag;  // indexed by bag
    CrossingTally crossings;          // cached; recompute with tally()
    bool optimal = false;
};

/// Geometry of the rendered drawing, in units of the disk radius.
struct GeometryConfig {
    double disk_radius = 1.0;
    double disk_spacing = 4.0;          // center-to-center distance between tree levels
    double sibling_gap = 1.0;           // vertical gap between sibling subtrees
    std::optional<double> alpha;        // default: pi / (2 w+)
    double spine_ratio = 0.8;           // linear styles: half-length of the spine
    double circle_ratio = 0.8;          // circular style: vertex circle
    double vertex_circle_ratio = 0.45;  // orbital style: vertex circle
    std::optional<double> orbit_gap;    // default: orbits evenly fill the annulus
    double port_tilt = 0.5235987755982988;  // 30 deg, two-children ports
    double slot_step = 0.03;            // angular spacing of exit slots at a port

    double resolved_alpha(int w_plus) const {
        double a = alpha.value_or(std::numbers::pi / (2.0 * std::max(1, w_plus)));
        if (a < 0.0 || a >= kTwoPi / std::max(1, w_plus))
            throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 2pi/w+)");
        return a;
    }

    double vertex_circle_radius() const { return vertex_circle_ratio * disk_radius; }
    double annulus_outer_radius() const { return 0.95 * disk_radius; }

    double resolved_orbit_gap(int w_plus) const {
        double g = orbit_gap.value_or((annulus_outer_radius() - vertex_circle_radius()) / (std::max(1, w_plus) + 1));
        if (g <= 0.0 || vertex_circle_radius() + g * w_plus >= disk_radius)
            throw Error(ErrorCode::InvalidArgument, "orbit gap does not fit inside the disk");
        return g;
    }

    double orbit_radius(int orbit, int w_plus) const { return vertex_circle_radius() + orbit * resolved_orbit_gap(w_plus); }

    void check() const {
        if (disk_radius <= 0.0) throw Error(ErrorCode::InvalidArgument, "disk radius must be positive");
        if (vertex_circle_ratio <= 0.0 || vertex_circle_ratio >= 1.0)
            throw Error(ErrorCode::InvalidArgument, "vertex_circle_ratio must lie in (0, 1)");
        if (disk_spacing <= 2.0 * disk_radius)
            throw Error(ErrorCode::InvalidArgument, "disk spacing must exceed the disk diameter");
    }
};

/// Per-bag structural facts the style model needs: neighbors and which
/// vertices have tracks towards which neighbor.
struct BagContext {
    BagIndex bag = 0;
    BagIndex parent = -1;
    std::vector<BagIndex> children;              // input order
    std::vector<std::uint8_t> track_mask;        // per local vertex, bit = NeighborSlot
    std::vector<Vertex> shared_with_parent;      // sorted
    std::vector<std::vector<Vertex>> shared_with_child;  // per child, sorted

    bool has_parent() const noexcept { return parent >= 0; }
    int child_count() const noexcept { return static_cast<int>(children.size()); }
    int slot_of_child(BagIndex c) const {
        for (std::size_t j = 0; j < children.size(); ++j)
            if (children[j] == c) return static_cast<int>(j) + 1;
        return -1;
    }
};

inline std::vector<Vertex> sorted_intersection(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
    std::vector<Vertex> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// Everything the solvers need about one (graph, decomposition, root) input.
struct Instance {
    Graph graph;
    Decomposition decomposition;
    RootedTree tree;
    std::vector<BagGraph> bag_graphs;
    std::vector<BagContext> contexts;
    int w_plus = 0;

    int bag_count() const noexcept { return decomposition.bag_count(); }
    const BagGraph& bag_graph(BagIndex i) const { return bag_graphs.at(static_cast<std::size_t>(i)); }
    const BagContext& context(BagIndex i) const { return contexts.at(static_cast<std::size_t>(i)); }
};

inline Instance make_instance(const Graph& g, const Decomposition& t, std::optional<BagIndex> root = std::nullopt) {
    Instance inst;
    inst.graph = g;
    inst.decomposition = t;
    if (root) inst.decomposition.root = *root;
    inst.tree = orient_left_to_right(inst.decomposition, inst.decomposition.root);
    inst.w_plus = std::max(0, t.width + 1);
    const int k = t.bag_count();
    for (int i = 0; i < k; ++i) inst.bag_graphs.push_back(induced_bag_graph(g, t, i));
    for (int i = 0; i < k; ++i) {
        BagContext ctx;
        ctx.bag = i;
        ctx.parent = inst.tree.parent[static_cast<std::size_t>(i)];
        ctx.children = inst.tree.children[static_cast<std::size_t>(i)];
        const auto& verts = t.bags[static_cast<std::size_t>(i)];
        ctx.track_mask.assign(verts.size(), 0);
        if (ctx.has_parent()) ctx.shared_with_parent = sorted_intersection(verts, t.bags[static_cast<std::size_t>(ctx.parent)]);
        for (auto c : ctx.children) ctx.shared_with_child.push_back(sorted_intersection(verts, t.bags[static_cast<std::size_t>(c)]));
        for (std::size_t l = 0; l < verts.size(); ++l) {
            Vertex v = verts[l];
            if (std::binary_search(ctx.shared_with_parent.begin(), ctx.shared_with_parent.end(), v))
                ctx.track_mask[l] |= 1u << kParentSlot;
            for (std::size_t j = 0; j < ctx.shared_with_child.size(); ++j)
                if (std::binary_search(ctx.shared_with_child[j].begin(), ctx.shared_with_child[j].end(), v))
                    ctx.track_mask[l] |= 1u << (kFirstChildSlot + j);
        }
        inst.contexts.push_back(std::move(ctx));
    }
    return inst;
}

/// Positions of a bag's vertices, aligned with `bd.order`.
inline std::vector<Point> vertex_positions(const BagDrawing& bd, Variant variant, const GeometryConfig& cfg,
                                           int w_plus, Point center) {
    std::vector<Point> out;
    const auto m = bd.order.size();
    out.reserve(m);
    if (variant == Variant::L1 || variant == Variant::L2) {
        const double h = cfg.spine_ratio * cfg.disk_radius;
        for (std::size_t k = 0; k < m; ++k) {
            double y = m == 1 ? center.y : center.y - h + 2.0 * h * static_cast<double>(k) / static_cast<double>(m - 1);
            out.push_back({center.x, y});
        }
        return out;
    }
    const double alpha = cfg.resolved_alpha(w_plus);
    const double radius = (variant == Variant::O ? cfg.vertex_circle_ratio : cfg.circle_ratio) * cfg.disk_radius;
    for (std::size_t k = 0; k < m; ++k)
        out.push_back(polar_point(center, radius, alpha + kTwoPi * static_cast<double>(k) / static_cast<double>(m)));
    return out;
}

inline std::map<Vertex, Point> vertex_position_map(const BagDrawing& bd, Variant variant, const GeometryConfig& cfg,
                                                   int w_plus, Point center) {
    auto pts = vertex_positions(bd, variant, cfg, w_plus, center);
    std::map<Vertex, Point> out;
    for (std::size_t k = 0; k < pts.size(); ++k) out[bd.order[k]] = pts[k];
    return out;
}

/// Vertical extent of each bag's subtree band (disk diameters plus gaps).
inline std::vector<double> subtree_extents(const RootedTree& tree, const GeometryConfig& cfg) {
    std::vector<double> ext(static_cast<std::size_t>(tree.size()), 0.0);
    for (auto b : tree.bottom_up) {
        const auto& ch = tree.children[static_cast<std::size_t>(b)];
        double sum = 0.0;
        for (auto c : ch) sum += ext[static_cast<std::size_t>(c)];
        if (!ch.empty()) sum += cfg.sibling_gap * static_cast<double>(ch.size() - 1);
        ext[static_cast<std::size_t>(b)] = std::max(2.0 * cfg.disk_radius, sum);
    }
    return ext;
}

/// Children of `b` in drawn order (top first).
inline std::vector<BagIndex> drawn_children(const RootedTree& tree, BagIndex b, bool flipped) {
    auto ch = tree.children[static_cast<std::size_t>(b)];
    if (flipped && ch.size() == 2) std::swap(ch[0], ch[1]);
    return ch;
}

/// Offset of each child's center from its parent's center.
inline std::vector<Point> child_offsets(const RootedTree& tree, const std::vector<double>& ext, const GeometryConfig& cfg,
                                        BagIndex b, bool flipped) {
    auto ch = drawn_children(tree, b, flipped);
    double total = 0.0;
    for (auto c : ch) total += ext[static_cast<std::size_t>(c)];
    if (!ch.empty()) total += cfg.sibling_gap * static_cast<double>(ch.size() - 1);
    double top = -total / 2.0;
    std::vector<Point> off;
    for (auto c : ch) {
        double e = ext[static_cast<std::size_t>(c)];
        off.push_back({cfg.disk_spacing, top + e / 2.0});
        top += e + cfg.sibling_gap;
    }
    return off;
}

/// Disk centers: root at the origin, children one column to the right,
/// stacked in embedding order with their subtree bands disjoint.
inline std::vector<Point> tree_layout(const RootedTree& tree, const GeometryConfig& cfg, const std::vector<bool>& flipped) {
    std::vector<Point> centers(static_cast<std::size_t>(tree.size()));
    if (tree.size() == 0) return centers;
    auto ext = subtree_extents(tree, cfg);
    for (auto b : tree.top_down) {
        bool f = static_cast<std::size_t>(b) < flipped.size() && flipped[static_cast<std::size_t>(b)];
        auto ch = drawn_children(tree, b, f);
        auto off = child_offsets(tree, ext, cfg, b, f);
        for (std::size_t j = 0; j < ch.size(); ++j)
            centers[static_cast<std::size_t>(ch[j])] = centers[static_cast<std::size_t>(b)] + off[j];
    }
    return centers;
}

inline std::vector<bool> embedding_flags(const WitnessDrawing& d) {
    std::vector<bool> f;
    for (const auto& bd : d.per_bag) f.push_back(bd.flipped);
    return f;
}

}  // namespace witness

#endif
