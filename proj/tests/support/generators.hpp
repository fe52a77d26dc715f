#ifndef WITNESS_TEST_GENERATORS_HPP
#define WITNESS_TEST_GENERATORS_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "witness/orbital.hpp"
#include "witness/style.hpp"

namespace witness::testing {

struct RandomSpec {
    int max_bags = 4;
    int max_bag_size = 3;  // w+
    int max_vertices = 8;
    double edge_probability = 0.6;
    bool path_only = false;
};

struct RandomInstance {
    Graph graph;
    Decomposition decomposition;
};

// Each new bag keeps a random part of its parent and fills up with fresh
// vertices, so every vertex support is connected by construction.
inline RandomInstance random_instance(std::mt19937_64& rng, const RandomSpec& spec) {
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    const int k = uni(1, spec.max_bags);
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<BagIndex, BagIndex>> edges;
    std::vector<int> child_count;
    int n = 0;
    auto fresh = [&](std::vector<Vertex>& bag, int target) {
        while (static_cast<int>(bag.size()) < target && n < spec.max_vertices) bag.push_back(n++);
    };
    std::vector<Vertex> first;
    fresh(first, uni(1, spec.max_bag_size));
    bags.push_back(first);
    child_count.push_back(0);
    for (int b = 1; b < k; ++b) {
        std::vector<int> candidates;
        for (int p = 0; p < b; ++p) {
            int limit = spec.path_only ? 1 : 2;
            if (p == 0 && !spec.path_only) limit = 2;
            if (spec.path_only && p != b - 1) continue;
            if (child_count[static_cast<std::size_t>(p)] < limit) candidates.push_back(p);
        }
        int p = candidates[static_cast<std::size_t>(uni(0, static_cast<int>(candidates.size()) - 1))];
        std::vector<Vertex> bag;
        for (auto v : bags[static_cast<std::size_t>(p)])
            if (uni(0, 1)) bag.push_back(v);
        int target = uni(std::max<int>(1, static_cast<int>(bag.size())), spec.max_bag_size);
        fresh(bag, target);
        if (bag.empty()) bag.push_back(bags[static_cast<std::size_t>(p)].front());
        std::sort(bag.begin(), bag.end());
        bags.push_back(bag);
        child_count.push_back(0);
        ++child_count[static_cast<std::size_t>(p)];
        edges.emplace_back(p, b);
    }
    Graph g(n);
    std::bernoulli_distribution coin(spec.edge_probability);
    for (const auto& bag : bags)
        for (std::size_t a = 0; a < bag.size(); ++a)
            for (std::size_t c = a + 1; c < bag.size(); ++c)
                if (!g.has_edge(bag[a], bag[c]) && coin(rng)) g.add_edge(bag[a], bag[c]);
    return {g, make_decomposition(bags, edges, 0)};
}

// Uniform over orders, pages, orbits, directions and embedding; orbital
// samples are redrawn until the orbit-sharing constraint holds.
inline BagDrawing random_bag_drawing(std::mt19937_64& rng, const Style& style, const BagContext& ctx, const BagGraph& bg,
                                     int w_plus, const GeometryConfig& cfg) {
    auto coin = [&] { return static_cast<std::uint8_t>(std::uniform_int_distribution<int>(0, 1)(rng)); };
    while (true) {
        BagDrawing bd;
        bd.bag = ctx.bag;
        bd.order = bg.vertices;
        std::shuffle(bd.order.begin(), bd.order.end(), rng);
        const auto E = bg.edges.size();
        if (style.variant == Variant::L2)
            for (std::size_t j = 0; j < E; ++j) bd.pages.push_back(coin());
        if (style.variant == Variant::L1) bd.pages.assign(E, E ? coin() : 0);
        bd.flipped = ctx.child_count() == 2 && coin();
        if (style.variant != Variant::O) return bd;
        const auto m = bg.vertices.size();
        bd.orbits.assign(m, 1);
        bd.directions.assign(m * 3, 0);
        for (std::size_t l = 0; l < m; ++l) {
            if (!ctx.track_mask[l]) continue;
            bd.orbits[l] = std::uniform_int_distribution<int>(1, w_plus)(rng);
            for (int s = 0; s < 3; ++s)
                if (ctx.track_mask[l] & (1u << s)) bd.directions[l * 3 + static_cast<std::size_t>(s)] = coin();
        }
        if (route_orbital(ctx, bg, bd, cfg, w_plus).valid) return bd;
    }
}

inline WitnessDrawing random_drawing(std::mt19937_64& rng, const Instance& inst, const Style& style, const GeometryConfig& cfg = {}) {
    WitnessDrawing d;
    d.style = style;
    for (int i = 0; i < inst.bag_count(); ++i)
        d.per_bag.push_back(random_bag_drawing(rng, style, inst.context(i), inst.bag_graph(i), inst.w_plus, cfg));
    return d;
}

}  // namespace witness::testing

#endif
