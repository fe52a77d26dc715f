#include <gtest/gtest.h>

#include <random>

#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "witness/enumerate.hpp"
#include "witness/oracle.hpp"

using namespace witness;
namespace wt = witness::testing;

namespace {

Graph complete_graph(int n) {
    Graph g(n);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) g.add_edge(a, b);
    return g;
}

long long binom(int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

BagDrawing linear(BagIndex bag, std::vector<Vertex> order, std::vector<std::uint8_t> pages = {}, bool flipped = false) {
    BagDrawing bd;
    bd.bag = bag;
    bd.order = std::move(order);
    bd.pages = std::move(pages);
    bd.flipped = flipped;
    return bd;
}

WitnessDrawing drawing_of(Variant v, std::vector<BagDrawing> bags) {
    WitnessDrawing d;
    d.style.variant = v;
    d.per_bag = std::move(bags);
    return d;
}

// Both counters on one drawing, which must agree.
CrossingTally checked_tally(const Instance& inst, const WitnessDrawing& d) {
    auto t = tally(inst, d);
    auto o = brute_force_geometric_oracle(inst, d);
    EXPECT_EQ(t, o) << "tally " << t.tt << "/" << t.te << "/" << t.ee << " oracle " << o.tt << "/" << o.te << "/" << o.ee;
    return t;
}

}  // namespace

TEST(EdgeEdge, CompleteGraphOnePage) {
    std::mt19937_64 rng(1);
    for (int n = 4; n <= 8; ++n) {
        auto g = complete_graph(n);
        auto inst = make_instance(g, wt::decomposition_from({[n] {
                                                               std::vector<Vertex> b;
                                                               for (int v = 0; v < n; ++v) b.push_back(v);
                                                               return b;
                                                           }()},
                                                           {}));
        for (int rep = 0; rep < 5; ++rep) {
            auto order = inst.bag_graph(0).vertices;
            std::shuffle(order.begin(), order.end(), rng);
            for (auto v : {Variant::L1, Variant::C, Variant::O}) {
                auto bd = linear(0, order, v == Variant::L1 ? std::vector<std::uint8_t>(g.edges().size(), 1) : std::vector<std::uint8_t>{});
                EXPECT_EQ(cr_ee(inst.bag_graph(0), bd, v), binom(n, 4)) << n;
            }
            auto bd = linear(0, order, std::vector<std::uint8_t>(g.edges().size(), 0));
            EXPECT_EQ(cr_ee(inst.bag_graph(0), bd, Variant::L2), binom(n, 4));
        }
    }
}

TEST(EdgeEdge, SmallCases) {
    Graph one(2, {{0, 1}});
    auto inst1 = make_instance(one, wt::decomposition_from({{0, 1}}, {}));
    for (auto v : {Variant::L1, Variant::L2, Variant::C, Variant::O})
        EXPECT_EQ(cr_ee(inst1.bag_graph(0), linear(0, {1, 0}, {0}), v), 0);

    Graph g(4, {{0, 2}, {1, 3}});
    auto inst = make_instance(g, wt::decomposition_from({{0, 1, 2, 3}}, {}));
    EXPECT_EQ(checked_tally(inst, drawing_of(Variant::L2, {linear(0, {0, 1, 2, 3}, {0, 1})})).ee, 0);
    EXPECT_EQ(checked_tally(inst, drawing_of(Variant::L2, {linear(0, {0, 1, 2, 3}, {1, 1})})).ee, 1);
}

TEST(EdgeEdge, OracleSingleBagK4) {
    auto g = complete_graph(4);
    auto inst = make_instance(g, wt::decomposition_from({{0, 1, 2, 3}}, {}));
    auto t = checked_tally(inst, drawing_of(Variant::L2, {linear(0, {2, 0, 3, 1}, std::vector<std::uint8_t>(6, 1))}));
    EXPECT_EQ(t, CrossingTally::make(0, 0, 1));
}

TEST(Oracle, EmptyGraph) {
    Graph g(0);
    Decomposition t;
    auto inst = make_instance(g, t);
    WitnessDrawing d;
    EXPECT_EQ(brute_force_geometric_oracle(inst, d), CrossingTally{});
    EXPECT_EQ(tally(inst, d), CrossingTally{});
}

// u=0 w=1 x=2 v=3; the right bag holds the shared vertices
TEST(TrackEdge, LinearExamples) {
    Graph g(3, {{0, 2}});
    auto inst = make_instance(g, wt::decomposition_from({{0, 1, 2}, {1}}, {{0, 1}}));
    auto right = checked_tally(inst, drawing_of(Variant::L2, {linear(0, {0, 1, 2}, {1}), linear(1, {1})}));
    EXPECT_EQ(right.te, 1);
    EXPECT_EQ(cr_te_linear(inst.bag_graph(0), linear(0, {0, 1, 2}, {1}), inst.bag_graph(1), linear(1, {1}), {1}), 1);
    auto left = checked_tally(inst, drawing_of(Variant::L2, {linear(0, {0, 1, 2}, {0}), linear(1, {1})}));
    EXPECT_EQ(left.te, 0);

    Graph g4(4, {{0, 3}});
    auto inst4 = make_instance(g4, wt::decomposition_from({{0, 1, 2, 3}, {1, 2}}, {{0, 1}}));
    auto two = checked_tally(inst4, drawing_of(Variant::L2, {linear(0, {0, 1, 2, 3}, {1}), linear(1, {1, 2})}));
    EXPECT_EQ(two.te, 2);
}

TEST(TrackEdge, RightBagLeftPage) {
    Graph g(3, {{0, 2}});
    auto inst = make_instance(g, wt::decomposition_from({{1}, {0, 1, 2}}, {{0, 1}}));
    EXPECT_EQ(checked_tally(inst, drawing_of(Variant::L2, {linear(0, {1}), linear(1, {0, 1, 2}, {0})})).te, 1);
    EXPECT_EQ(checked_tally(inst, drawing_of(Variant::L2, {linear(0, {1}), linear(1, {0, 1, 2}, {1})})).te, 0);
}

TEST(TrackTrack, LinearInversions) {
    Graph g(3);
    auto inst = make_instance(g, wt::decomposition_from({{0, 1, 2}, {0, 1, 2}}, {{0, 1}}));
    auto d = drawing_of(Variant::L1, {linear(0, {0, 1, 2}), linear(1, {2, 1, 0})});
    EXPECT_EQ(checked_tally(inst, d).tt, 3);
    d.per_bag[1].order = {0, 1, 2};
    EXPECT_EQ(checked_tally(inst, d).tt, 0);

    Graph g2(2);
    auto inst2 = make_instance(g2, wt::decomposition_from({{0, 1}, {0, 1}}, {{0, 1}}));
    EXPECT_EQ(checked_tally(inst2, drawing_of(Variant::L2, {linear(0, {0, 1}), linear(1, {1, 0})})).tt, 1);
}

TEST(TrackTrack, KendallTauAndSymmetry) {
    std::mt19937_64 rng(4);
    for (int it = 0; it < 300; ++it) {
        int m = std::uniform_int_distribution<int>(0, 7)(rng);
        std::vector<Vertex> shared;
        for (int v = 0; v < m; ++v) shared.push_back(v);
        auto a = shared, b = shared;
        a.push_back(50);
        b.push_back(60);
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        long long kendall = 0;
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y) {
                auto pa = [&](const std::vector<Vertex>& o, Vertex v) { return std::find(o.begin(), o.end(), v) - o.begin(); };
                if (pa(a, x) < pa(a, y) && pa(b, x) > pa(b, y)) ++kendall;
            }
        EXPECT_EQ(cr_tt_linear(linear(0, a), linear(1, b), shared), kendall);
        EXPECT_EQ(cr_tt_linear(linear(0, b), linear(1, a), shared), kendall);
    }
}

namespace {

// Root 0 with children 1 (first) and 2. Root order puts the given vertices.
struct TwoChildren {
    Graph g;
    Instance inst;
};

TwoChildren two_children(int n, std::vector<Edge> edges, std::vector<Vertex> root, std::vector<Vertex> x, std::vector<Vertex> y) {
    TwoChildren t{Graph(n, edges), {}};
    t.inst = make_instance(t.g, wt::decomposition_from({root, x, y}, {{0, 1}, {0, 2}}));
    return t;
}

}  // namespace

TEST(TrackEdge, TreeSumsOverChildren) {
    // u=0, w=1, x=2, v=3 in the root with edge (u,v) on the right page
    auto none = two_children(4, {{0, 3}}, {0, 1, 2, 3}, {0}, {3});
    auto d = drawing_of(Variant::L2, {linear(0, {0, 1, 2, 3}, {1}), linear(1, {0}), linear(2, {3})});
    EXPECT_EQ(checked_tally(none.inst, d).te, 0);

    auto one = two_children(4, {{0, 3}}, {0, 1, 2, 3}, {1}, {3});
    d = drawing_of(Variant::L2, {linear(0, {0, 1, 2, 3}, {1}), linear(1, {1}), linear(2, {3})});
    EXPECT_EQ(checked_tally(one.inst, d).te, 1);
    std::vector<Vertex> sx{1}, sy{3};
    auto bd1 = linear(1, {1});
    auto bd2 = linear(2, {3});
    EXPECT_EQ(cr_te_tree(one.inst.bag_graph(0), d.per_bag[0], {{&one.inst.bag_graph(1), &bd1, &sx}, {&one.inst.bag_graph(2), &bd2, &sy}}),
              1);

    auto sym = two_children(4, {{0, 3}}, {0, 1, 2, 3}, {1, 2}, {1, 2});
    d = drawing_of(Variant::L2, {linear(0, {0, 1, 2, 3}, {1}), linear(1, {1, 2}), linear(2, {1, 2})});
    EXPECT_EQ(checked_tally(sym.inst, d).te, 4);
}

TEST(TrackTrack, CrissCross) {
    // x-shared {0,1}, y-shared {2,3}
    auto t = two_children(4, {}, {0, 1, 2, 3}, {0, 1}, {2, 3});
    auto d = drawing_of(Variant::L1, {linear(0, {0, 1, 2, 3}), linear(1, {0, 1}), linear(2, {2, 3})});
    EXPECT_EQ(checked_tally(t.inst, d).tt, 0);
    d.per_bag[0].order = {0, 2, 1, 3};  // one x-track below one y-track
    EXPECT_EQ(checked_tally(t.inst, d).tt, 1);
    EXPECT_EQ(criss_cross(d.per_bag[0], {0, 1}, {2, 3}), 1);
    d.per_bag[0].flipped = true;  // y now above x
    EXPECT_EQ(checked_tally(t.inst, d).tt, 2 * 2 - 1);
}

TEST(TrackTrack, CrissCrossFlipComplement) {
    std::mt19937_64 rng(8);
    for (int it = 0; it < 200; ++it) {
        int a = std::uniform_int_distribution<int>(0, 3)(rng);
        int b = std::uniform_int_distribution<int>(0, 3)(rng);
        std::vector<Vertex> x, y, all;
        for (int v = 0; v < a; ++v) x.push_back(v);
        for (int v = a; v < a + b; ++v) y.push_back(v);
        all = x;
        all.insert(all.end(), y.begin(), y.end());
        std::shuffle(all.begin(), all.end(), rng);
        auto p = linear(0, all);
        EXPECT_EQ(criss_cross(p, x, y) + criss_cross(p, y, x), static_cast<long long>(a) * b);
    }
}

TEST(Figure, FrozenTallies) {
    auto f = wt::load_fixture("fig2");
    auto inst = make_instance(f.graph, f.decomposition);
    auto frozen = wt::load_fig2_drawings();
    ASSERT_EQ(frozen.size(), 3u);
    for (const auto& fd : frozen) {
        auto t = checked_tally(inst, fd.drawing);
        EXPECT_EQ(t, fd.expected) << to_string(fd.drawing.style.variant);
    }
}

TEST(Orbital, NoTrackEdgeCrossingsExhaustive) {
    std::mt19937_64 rng(12);
    Style o;
    o.variant = Variant::O;
    long long drawings = 0;
    for (int it = 0; it < 25; ++it) {
        auto ri = wt::random_instance(rng, {3, 3, 6, 0.8, false});
        auto inst = make_instance(ri.graph, ri.decomposition);
        std::vector<std::vector<BagDrawing>> spaces;
        double product = 1;
        for (int i = 0; i < inst.bag_count(); ++i) {
            spaces.push_back(collect_bag_drawings(o, inst.context(i), inst.bag_graph(i), inst.w_plus, GeometryConfig{}));
            product *= static_cast<double>(spaces.back().size());
        }
        if (product > 20000) continue;
        std::vector<std::size_t> idx(spaces.size(), 0);
        while (true) {
            WitnessDrawing d;
            d.style = o;
            for (std::size_t i = 0; i < spaces.size(); ++i) d.per_bag.push_back(spaces[i][idx[i]]);
            ASSERT_EQ(tally(inst, d).te, 0);
            ++drawings;
            std::size_t j = 0;
            while (j < idx.size() && ++idx[j] == spaces[j].size()) idx[j++] = 0;
            if (j == idx.size()) break;
        }
    }
    EXPECT_GT(drawings, 1000);
}

// Two tracks of one vertex leave it along the same radial climb; a track of
// another vertex crossing that climb meets both curves at one point, which
// is one crossing.
TEST(Orbital, CoRunningTracksCountOnce) {
    // b=0 in all three bags, g=1 in the first two, h=2 in the middle only
    Graph g(3, {{0, 2}, {1, 2}});
    auto inst = make_instance(g, wt::decomposition_from({{0, 1}, {0, 1, 2}, {0}}, {{0, 1}, {1, 2}}));
    Style o;
    o.variant = Variant::O;
    std::vector<std::vector<BagDrawing>> spaces;
    for (int i = 0; i < 3; ++i) spaces.push_back(collect_bag_drawings(o, inst.context(i), inst.bag_graph(i), inst.w_plus, GeometryConfig{}));
    bool found = false;
    for (const auto& mid : spaces[1]) {
        WitnessDrawing d;
        d.style = o;
        d.per_bag = {spaces[0][0], mid, spaces[2][0]};
        auto L = realize(inst, d);
        std::vector<detail::OracleCurve> b_tracks, g_tracks;
        for (const auto& t : L.track_curves) {
            if (t.vertex == 0) b_tracks.push_back(detail::oracle_curve(true, 0, 0, t.curve));
            if (t.vertex == 1) g_tracks.push_back(detail::oracle_curve(true, 1, 1, t.curve));
        }
        ASSERT_EQ(b_tracks.size(), 2u);
        ASSERT_EQ(g_tracks.size(), 1u);
        std::size_t naive = 0;
        std::vector<Point> merged;
        for (const auto& bt : b_tracks) {
            std::vector<Point> own;
            detail::meeting_points(bt, g_tracks[0], own);
            naive += own.size();
            detail::meeting_points(bt, g_tracks[0], merged);
        }
        if (naive == 2 && merged.size() == 1) {
            found = true;
            auto t = checked_tally(inst, d);
            EXPECT_GE(t.tt, 1);
            break;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Tally, MatchesOracleOnRandomDrawings) {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 200; ++it) {
        auto ri = wt::random_instance(rng, {6, 5, 12, 0.5, false});
        auto inst = make_instance(ri.graph, ri.decomposition);
        for (auto v : {Variant::L1, Variant::L2, Variant::C, Variant::O}) {
            Style s;
            s.variant = v;
            auto d = wt::random_drawing(rng, inst, s);
            auto t = checked_tally(inst, d);
            EXPECT_EQ(t.total, t.tt + t.te + t.ee);
            if (v == Variant::O) EXPECT_EQ(t.te, 0);
        }
    }
}

TEST(Tally, InvariantUnderScaleAndTranslation) {
    std::mt19937_64 rng(77);
    for (int it = 0; it < 60; ++it) {
        auto ri = wt::random_instance(rng, {5, 4, 10, 0.6, false});
        auto inst = make_instance(ri.graph, ri.decomposition);
        for (auto v : {Variant::L1, Variant::L2, Variant::C, Variant::O}) {
            Style s;
            s.variant = v;
            auto d = wt::random_drawing(rng, inst, s);
            auto base = tally(inst, d);
            GeometryConfig big;
            big.disk_radius = 2.5;
            big.disk_spacing *= 2.5;
            big.sibling_gap *= 2.5;
            EXPECT_EQ(tally(inst, d, big), base);
            EXPECT_EQ(brute_force_geometric_oracle(inst, d, big), base);

            auto L = realize(inst, d);
            const Point shift{13.25, -7.5};
            auto move = [&](Curve& c) {
                for (auto& p : c) {
                    p.a = p.a + shift;
                    p.b = p.b + shift;
                    p.center = p.center + shift;
                }
            };
            for (auto& e : L.edge_curves) move(e.curve);
            for (auto& t : L.track_curves) move(t.curve);
            EXPECT_EQ(layout_crossings(L), base);
        }
    }
}
