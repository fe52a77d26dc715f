#ifndef WITNESS_TEST_FIXTURES_HPP
#define WITNESS_TEST_FIXTURES_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "witness/pipeline.hpp"

namespace witness::testing {

inline std::string fixture_path(const std::string& name) { return std::string(WITNESS_FIXTURE_DIR) + "/" + name; }

struct Fixture {
    Graph graph;
    Decomposition decomposition;
};

inline Fixture load_fixture(const std::string& stem) {
    Fixture f;
    f.graph = parse_graph(read_file(fixture_path(stem + ".gr")));
    f.decomposition = parse_decomposition(read_file(fixture_path(stem + ".td")), f.graph);
    return f;
}

struct FrozenDrawing {
    WitnessDrawing drawing;
    CrossingTally expected;
};

// Frozen per-bag states of the four-bag example, 1-based as in the file.
inline std::vector<FrozenDrawing> load_fig2_drawings() {
    auto j = nlohmann::json::parse(read_file(fixture_path("fig2_drawings.json")));
    std::vector<FrozenDrawing> out;
    for (const auto& entry : j.at("drawings")) {
        FrozenDrawing f;
        f.drawing.style.variant = parse_variant(entry.at("style").get<std::string>());
        const auto& t = entry.at("tally");
        f.expected = CrossingTally::make(t.at("tt").get<long long>(), t.at("te").get<long long>(), t.at("ee").get<long long>());
        BagIndex i = 0;
        for (const auto& b : entry.at("bags")) {
            BagDrawing bd;
            bd.bag = i++;
            for (int v : b.at("order")) bd.order.push_back(v - 1);
            if (b.contains("pages"))
                for (int p : b.at("pages")) bd.pages.push_back(static_cast<std::uint8_t>(p));
            if (b.contains("orbits"))
                for (int o : b.at("orbits")) bd.orbits.push_back(o);
            if (b.contains("directions"))
                for (int d : b.at("directions")) bd.directions.push_back(static_cast<std::uint8_t>(d));
            bd.flipped = b.at("flipped").get<bool>();
            f.drawing.per_bag.push_back(bd);
        }
        out.push_back(f);
    }
    return out;
}

inline Decomposition decomposition_from(std::vector<std::vector<Vertex>> bags, std::vector<std::pair<BagIndex, BagIndex>> edges,
                                        BagIndex root = 0) {
    return make_decomposition(std::move(bags), std::move(edges), root);
}

}  // namespace witness::testing

#endif
