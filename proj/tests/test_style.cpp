#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "witness/enumerate.hpp"

using namespace witness;
namespace wt = witness::testing;

namespace {

Style style_of(Variant v) {
    Style s;
    s.variant = v;
    return s;
}

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::size_t count_drawings(const Instance& inst, BagIndex i, Variant v, const GeometryConfig& cfg = {}) {
    std::size_t n = 0;
    enumerate_bag_drawings(style_of(v), inst.context(i), inst.bag_graph(i), inst.w_plus, cfg, [&](const BagDrawing&) { ++n; });
    return n;
}

// Circular intervals [a, a+sa] and [b, b+sb] share more than a point.
bool arcs_overlap(double a, double sa, double b, double sb) {
    const double eps = 1e-9;
    auto fwd = [](double from, double to) {
        double d = std::fmod(to - from, kTwoPi);
        return d < 0 ? d + kTwoPi : d;
    };
    return fwd(a, b) < sa - eps || fwd(b, a) < sb - eps;
}

}  // namespace

TEST(Enumerate, L1ThreeVerticesNoEdges) {
    Graph g(3);
    auto inst = make_instance(g, wt::decomposition_from({{0, 1, 2}}, {}));
    EXPECT_EQ(count_drawings(inst, 0, Variant::L1), 6u);
}

TEST(Enumerate, L2OneEdge) {
    Graph g(2, {{0, 1}});
    auto inst = make_instance(g, wt::decomposition_from({{0, 1}}, {}));
    EXPECT_EQ(count_drawings(inst, 0, Variant::L2), 4u);
}

TEST(Enumerate, OrbitalSingleVertexLeaf) {
    Graph g(2);
    auto inst = make_instance(g, wt::decomposition_from({{0, 1}, {0}}, {{0, 1}}));
    ASSERT_EQ(inst.w_plus, 2);
    EXPECT_EQ(count_drawings(inst, 1, Variant::O), static_cast<std::size_t>(2 * inst.w_plus));
    // brute force over the raw space: every (orbit, direction) pair is valid
    std::set<std::pair<int, int>> seen;
    enumerate_bag_drawings(style_of(Variant::O), inst.context(1), inst.bag_graph(1), inst.w_plus, GeometryConfig{},
                           [&](const BagDrawing& bd) { seen.insert({bd.orbits[0], bd.directions[0]}); });
    EXPECT_EQ(seen.size(), 4u);
}

TEST(Enumerate, EmptyBagHasOneDrawing) {
    Graph g(1);
    auto t = wt::decomposition_from({{}, {0}}, {{0, 1}});
    auto inst = make_instance(g, t);
    for (auto v : {Variant::L1, Variant::L2, Variant::C, Variant::O}) EXPECT_EQ(count_drawings(inst, 0, v), 1u);
}

TEST(Enumerate, L2CountIsFactorialTimesPages) {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 100; ++it) {
        auto ri = wt::random_instance(rng, {4, 4, 10, 0.6, false});
        auto inst = make_instance(ri.graph, ri.decomposition);
        for (int i = 0; i < inst.bag_count(); ++i) {
            const auto& bg = inst.bag_graph(i);
            std::size_t expected = static_cast<std::size_t>(factorial(static_cast<int>(bg.vertices.size()))) << bg.edges.size();
            if (inst.context(i).child_count() == 2) expected *= 2;  // embedding flag
            EXPECT_EQ(count_drawings(inst, i, Variant::L2), expected);
        }
    }
}

TEST(Enumerate, DrawingsAreDistinctAndCanonical) {
    std::mt19937_64 rng(22);
    for (int it = 0; it < 60; ++it) {
        auto ri = wt::random_instance(rng, {4, 3, 8, 0.6, false});
        auto inst = make_instance(ri.graph, ri.decomposition);
        for (auto v : {Variant::L1, Variant::L2, Variant::C, Variant::O})
            for (int i = 0; i < inst.bag_count(); ++i) {
                auto all = collect_bag_drawings(style_of(v), inst.context(i), inst.bag_graph(i), inst.w_plus, GeometryConfig{});
                for (std::size_t k = 1; k < all.size(); ++k) EXPECT_TRUE(canonical_less(all[k - 1], all[k]));
                for (const auto& bd : all) {
                    auto sorted = bd.order;
                    std::sort(sorted.begin(), sorted.end());
                    EXPECT_EQ(sorted, inst.bag_graph(i).vertices);
                    EXPECT_EQ(bd.pages.size(), v == Variant::L1 || v == Variant::L2 ? inst.bag_graph(i).edges.size() : 0u);
                    EXPECT_EQ(!bd.orbits.empty(), v == Variant::O && !bd.order.empty());
                }
            }
    }
}

// Orbit sharing re-checked from the routed exit angles with an interval test
// written here, not the library's.
TEST(Enumerate, OrbitSharingConstraintHolds) {
    std::mt19937_64 rng(23);
    GeometryConfig cfg;
    std::size_t checked = 0;
    for (int it = 0; it < 40; ++it) {
        auto ri = wt::random_instance(rng, {4, 3, 7, 0.5, false});
        auto inst = make_instance(ri.graph, ri.decomposition);
        for (int i = 0; i < inst.bag_count(); ++i) {
            const auto& ctx = inst.context(i);
            const auto& bg = inst.bag_graph(i);
            enumerate_bag_drawings(style_of(Variant::O), ctx, bg, inst.w_plus, cfg, [&](const BagDrawing& bd) {
                auto r = route_orbital(ctx, bg, bd, cfg, inst.w_plus);
                for (std::size_t a = 0; a < r.tracks.size(); ++a)
                    for (std::size_t b = a + 1; b < r.tracks.size(); ++b) {
                        const auto& s = r.tracks[a];
                        const auto& t = r.tracks[b];
                        if (s.vertex == t.vertex || s.orbit != t.orbit) continue;
                        auto span = [&](const OrbitalTrack& x) {
                            double va = r.vertex_angle[static_cast<std::size_t>(x.local)];
                            if (x.direction == Direction::Ccw) return std::pair{va, ccw_sweep(va, x.exit_angle)};
                            return std::pair{x.exit_angle, ccw_sweep(x.exit_angle, va)};
                        };
                        auto [a0, sa] = span(s);
                        auto [b0, sb] = span(t);
                        EXPECT_FALSE(arcs_overlap(a0, sa, b0, sb));
                        ++checked;
                    }
            });
        }
    }
    EXPECT_GT(checked, 0u);
}

TEST(Positions, CircularAlphaZero) {
    GeometryConfig cfg;
    cfg.alpha = 0.0;
    BagDrawing bd;
    bd.order = {3, 1, 0, 2};
    auto pts = vertex_positions(bd, Variant::C, cfg, 4, {0, 0});
    const double r = cfg.circle_ratio * cfg.disk_radius;
    EXPECT_NEAR(pts[0].x, 0.0, 1e-12);
    EXPECT_NEAR(pts[0].y, -r, 1e-12);  // twelve o'clock, y down
    EXPECT_NEAR(pts[1].x, -r, 1e-12);  // counterclockwise: nine o'clock next
    EXPECT_NEAR(pts[1].y, 0.0, 1e-12);
    EXPECT_NEAR(pts[2].x, 0.0, 1e-12);
    EXPECT_NEAR(pts[2].y, r, 1e-12);
    EXPECT_NEAR(pts[3].x, r, 1e-12);
}

TEST(Positions, AlphaRotatesEverything) {
    std::mt19937_64 rng(3);
    for (auto v : {Variant::C, Variant::O})
        for (int m = 1; m <= 6; ++m) {
            BagDrawing bd;
            for (int k = 0; k < m; ++k) bd.order.push_back(k);
            std::shuffle(bd.order.begin(), bd.order.end(), rng);
            Point c{2.5, -1.0};
            GeometryConfig base;
            base.alpha = 0.0;
            auto p0 = vertex_positions(bd, v, base, m, c);
            for (double theta : {0.1, 20.0 * std::numbers::pi / 180.0, 0.9 * kTwoPi / m}) {
                GeometryConfig rot;
                rot.alpha = theta;
                auto p1 = vertex_positions(bd, v, rot, m, c);
                for (int k = 0; k < m; ++k) {
                    // rotate p0 counterclockwise by theta on screen (y down)
                    Point d = p0[static_cast<std::size_t>(k)] - c;
                    Point q{c.x + d.x * std::cos(theta) + d.y * std::sin(theta), c.y - d.x * std::sin(theta) + d.y * std::cos(theta)};
                    EXPECT_NEAR(p1[static_cast<std::size_t>(k)].x, q.x, 1e-9);
                    EXPECT_NEAR(p1[static_cast<std::size_t>(k)].y, q.y, 1e-9);
                }
            }
        }
}

TEST(Positions, AlphaOutOfRangeRejected) {
    GeometryConfig cfg;
    cfg.alpha = kTwoPi / 4;
    BagDrawing bd;
    bd.order = {0, 1};
    EXPECT_THROW(vertex_positions(bd, Variant::C, cfg, 4, {0, 0}), Error);
}

TEST(Positions, LinearSingleVertexAtCenter) {
    BagDrawing bd;
    bd.order = {7};
    auto p = vertex_positions(bd, Variant::L2, GeometryConfig{}, 3, {1.0, 2.0});
    EXPECT_DOUBLE_EQ(p[0].x, 1.0);
    EXPECT_DOUBLE_EQ(p[0].y, 2.0);
}

TEST(Positions, LinearTopToBottom) {
    BagDrawing bd;
    bd.order = {4, 0, 2};
    auto p = vertex_positions(bd, Variant::L1, GeometryConfig{}, 3, {0, 0});
    EXPECT_LT(p[0].y, p[1].y);
    EXPECT_LT(p[1].y, p[2].y);
    EXPECT_NEAR(p[1].y - p[0].y, p[2].y - p[1].y, 1e-12);
}

TEST(TreeLayout, PathIsCollinear) {
    auto t = wt::decomposition_from({{0}, {0}, {0}}, {{0, 1}, {1, 2}});
    GeometryConfig cfg;
    auto rt = orient_left_to_right(t, 0);
    auto c = tree_layout(rt, cfg, std::vector<bool>(3, false));
    EXPECT_DOUBLE_EQ(c[0].x, 0.0);
    EXPECT_DOUBLE_EQ(c[0].y, 0.0);
    for (int i = 1; i < 3; ++i) {
        EXPECT_DOUBLE_EQ(c[static_cast<std::size_t>(i)].x, cfg.disk_spacing * i);
        EXPECT_DOUBLE_EQ(c[static_cast<std::size_t>(i)].y, 0.0);
    }
}

TEST(TreeLayout, TwoChildrenSymmetric) {
    auto t = wt::decomposition_from({{0}, {0}, {0}}, {{0, 1}, {0, 2}});
    GeometryConfig cfg;
    auto rt = orient_left_to_right(t, 0);
    auto c = tree_layout(rt, cfg, std::vector<bool>(3, false));
    EXPECT_DOUBLE_EQ(c[1].x, cfg.disk_spacing);
    EXPECT_DOUBLE_EQ(c[2].x, cfg.disk_spacing);
    EXPECT_NEAR(c[1].y, -c[2].y, 1e-12);
    EXPECT_LT(c[1].y, c[2].y);  // first child above
    auto f = tree_layout(rt, cfg, {true, false, false});
    EXPECT_GT(f[1].y, f[2].y);
}

namespace {

void expect_disjoint(const std::vector<Point>& c, double radius) {
    for (std::size_t a = 0; a < c.size(); ++a)
        for (std::size_t b = a + 1; b < c.size(); ++b) EXPECT_GE(distance(c[a], c[b]), 2 * radius - 1e-9);
}

}  // namespace

TEST(TreeLayout, CompleteBinaryTreeDisjoint) {
    std::vector<std::vector<Vertex>> bags(7, {0});
    auto t = wt::decomposition_from(bags, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
    GeometryConfig cfg;
    expect_disjoint(tree_layout(orient_left_to_right(t, 0), cfg, std::vector<bool>(7, false)), cfg.disk_radius);
}

TEST(TreeLayout, RandomTreesDisjoint) {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 200; ++it) {
        int k = std::uniform_int_distribution<int>(1, 50)(rng);
        std::vector<std::vector<Vertex>> bags(static_cast<std::size_t>(k), {0});
        std::vector<std::pair<BagIndex, BagIndex>> edges;
        std::vector<int> kids(static_cast<std::size_t>(k), 0);
        for (int b = 1; b < k; ++b) {
            int p;
            do p = std::uniform_int_distribution<int>(0, b - 1)(rng);
            while (kids[static_cast<std::size_t>(p)] == 2);
            ++kids[static_cast<std::size_t>(p)];
            edges.emplace_back(p, b);
        }
        auto t = wt::decomposition_from(bags, edges);
        GeometryConfig cfg;
        cfg.sibling_gap = std::uniform_real_distribution<double>(0.0, 2.0)(rng);
        std::vector<bool> flips(static_cast<std::size_t>(k));
        for (int b = 0; b < k; ++b) flips[static_cast<std::size_t>(b)] = rng() & 1;
        expect_disjoint(tree_layout(orient_left_to_right(t, 0), cfg, flips), cfg.disk_radius);
    }
}
