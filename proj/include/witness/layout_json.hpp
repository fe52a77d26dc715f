#ifndef WITNESS_LAYOUT_JSON_HPP
#define WITNESS_LAYOUT_JSON_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "witness/render.hpp"

namespace witness {

inline std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Everything written to PREFIX.json. Vertex and bag numbers are 1-based in
/// the document, as in the input files.
struct LayoutDocument {
    std::string schema_version = "1";
    std::string graph_hash;
    std::string decomposition_hash;
    int vertices = 0;
    int edges = 0;
    int bags = 0;
    int width = -1;
    Style style;
    BagIndex root = 0;
    bool optimal = false;
    CrossingTally crossings;
    bool covers_vertices = true;
    bool covers_edges = true;
    bool connected_supports = true;
    bool degree_ok = true;
    double alpha = 0.0;
    std::vector<BagDrawing> drawing;
    Layout layout;

    WitnessDrawing witness() const {
        WitnessDrawing d;
        d.style = style;
        d.per_bag = drawing;
        d.crossings = crossings;
        d.optimal = optimal;
        return d;
    }
};

inline LayoutDocument make_document(const Instance& inst, const WitnessDrawing& d, const Layout& layout, const ValidationReport& report,
                                    const CrossingTally& t, const GeometryConfig& cfg) {
    LayoutDocument doc;
    doc.graph_hash = fnv1a_hex(serialize_graph(inst.graph));
    doc.decomposition_hash = fnv1a_hex(serialize_decomposition(inst.decomposition, inst.graph.vertex_count()));
    doc.vertices = inst.graph.vertex_count();
    doc.edges = inst.graph.edge_count();
    doc.bags = inst.bag_count();
    doc.width = report.width;
    doc.style = d.style;
    doc.root = inst.tree.root;
    doc.optimal = d.optimal;
    doc.crossings = t;
    doc.covers_vertices = report.covers_vertices;
    doc.covers_edges = report.covers_edges;
    doc.connected_supports = report.connected_supports;
    doc.degree_ok = report.degree_ok;
    doc.alpha = d.style.linear() ? 0.0 : cfg.resolved_alpha(std::max(1, inst.w_plus));
    doc.drawing = d.per_bag;
    doc.layout = layout;
    return doc;
}

namespace detail {

using ojson = nlohmann::ordered_json;

inline double round6(double x) {
    double r = std::round(x * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;
}

inline ojson point_json(Point p) { return ojson::array({round6(p.x), round6(p.y)}); }
inline Point point_from(const ojson& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline ojson curve_json(const Curve& c) {
    ojson out = ojson::array();
    for (const auto& p : c) {
        ojson j;
        j["type"] = p.arc ? "arc" : "segment";
        j["from"] = point_json(p.a);
        j["to"] = point_json(p.b);
        if (p.arc) {
            j["center"] = point_json(p.center);
            j["radius"] = round6(p.radius);
            j["start"] = round6(p.start);
            j["sweep"] = round6(p.sweep);
        }
        out.push_back(j);
    }
    return out;
}

inline Curve curve_from(const ojson& j) {
    Curve c;
    for (const auto& p : j) {
        CurvePiece piece;
        piece.arc = p.at("type").get<std::string>() == "arc";
        piece.a = point_from(p.at("from"));
        piece.b = point_from(p.at("to"));
        if (piece.arc) {
            piece.center = point_from(p.at("center"));
            piece.radius = p.at("radius").get<double>();
            piece.start = p.at("start").get<double>();
            piece.sweep = p.at("sweep").get<double>();
        }
        c.push_back(piece);
    }
    return c;
}

template <class T>
ojson int_array(const std::vector<T>& v, int shift = 0) {
    ojson a = ojson::array();
    for (auto x : v) a.push_back(static_cast<int>(x) + shift);
    return a;
}

}  // namespace detail

inline std::string to_layout_json(const LayoutDocument& doc) {
    using detail::ojson;
    ojson j;
    j["schema_version"] = doc.schema_version;
    j["input"] = {{"graph_fnv1a", doc.graph_hash}, {"decomposition_fnv1a", doc.decomposition_hash}, {"vertices", doc.vertices},
                  {"edges", doc.edges}, {"bags", doc.bags}, {"width", doc.width}};
    j["style"] = to_string(doc.style.variant);
    j["forbid_tt"] = doc.style.forbid_tt;
    j["root"] = doc.root + 1;
    j["optimal"] = doc.optimal;
    j["crossings"] = {{"tt", doc.crossings.tt}, {"te", doc.crossings.te}, {"ee", doc.crossings.ee}, {"total", doc.crossings.total}};
    j["validation"] = {{"covers_vertices", doc.covers_vertices}, {"covers_edges", doc.covers_edges},
                       {"connected_supports", doc.connected_supports}, {"degree_ok", doc.degree_ok}};
    j["alpha"] = detail::round6(doc.alpha);
    ojson bags = ojson::array();
    for (std::size_t i = 0; i < doc.drawing.size(); ++i) {
        const auto& bd = doc.drawing[i];
        ojson b;
        b["bag"] = bd.bag + 1;
        b["order"] = detail::int_array(bd.order, 1);
        b["pages"] = detail::int_array(bd.pages);
        b["orbits"] = detail::int_array(bd.orbits);
        b["directions"] = detail::int_array(bd.directions);
        b["flipped"] = bd.flipped;
        bags.push_back(b);
    }
    j["bags"] = bags;
    const auto& L = doc.layout;
    ojson disks = ojson::array();
    for (const auto& d : L.disks) disks.push_back({{"bag", d.bag + 1}, {"center", detail::point_json(d.center)}, {"radius", detail::round6(d.radius)}});
    j["disks"] = disks;
    j["vertex_circle"] = detail::round6(L.vertex_circle);
    ojson vps = ojson::array();
    for (const auto& v : L.vertex_points) vps.push_back({{"bag", v.bag + 1}, {"vertex", v.vertex + 1}, {"at", detail::point_json(v.at)}});
    j["vertex_points"] = vps;
    ojson edges = ojson::array();
    for (const auto& e : L.edge_curves)
        edges.push_back({{"bag", e.bag + 1}, {"u", e.edge.u + 1}, {"v", e.edge.v + 1}, {"curve", detail::curve_json(e.curve)}});
    j["edge_curves"] = edges;
    ojson tracks = ojson::array();
    for (const auto& t : L.track_curves)
        tracks.push_back({{"vertex", t.vertex + 1}, {"from", t.from + 1}, {"to", t.to + 1}, {"curve", detail::curve_json(t.curve)}});
    j["track_curves"] = tracks;
    ojson tree = ojson::array();
    for (auto [p, c] : L.tree_edges) tree.push_back(ojson::array({p + 1, c + 1}));
    j["tree_edges"] = tree;
    ojson pal = ojson::array();
    for (const auto& [v, color] : L.palette) pal.push_back({{"vertex", v + 1}, {"color", color}});
    j["palette"] = pal;
    return j.dump(2) + "\n";
}

inline LayoutDocument parse_layout_json(std::string_view text) {
    using detail::ojson;
    LayoutDocument doc;
    ojson j;
    try {
        j = ojson::parse(text);
        doc.schema_version = j.at("schema_version").get<std::string>();
        if (doc.schema_version != "1") throw Error(ErrorCode::InvalidArgument, "unsupported schema version " + doc.schema_version);
        const auto& in = j.at("input");
        doc.graph_hash = in.at("graph_fnv1a").get<std::string>();
        doc.decomposition_hash = in.at("decomposition_fnv1a").get<std::string>();
        doc.vertices = in.at("vertices").get<int>();
        doc.edges = in.at("edges").get<int>();
        doc.bags = in.at("bags").get<int>();
        doc.width = in.at("width").get<int>();
        doc.style.variant = parse_variant(j.at("style").get<std::string>());
        doc.style.forbid_tt = j.at("forbid_tt").get<bool>();
        doc.root = j.at("root").get<int>() - 1;
        doc.optimal = j.at("optimal").get<bool>();
        const auto& c = j.at("crossings");
        doc.crossings = {c.at("tt").get<long long>(), c.at("te").get<long long>(), c.at("ee").get<long long>(), c.at("total").get<long long>()};
        const auto& v = j.at("validation");
        doc.covers_vertices = v.at("covers_vertices").get<bool>();
        doc.covers_edges = v.at("covers_edges").get<bool>();
        doc.connected_supports = v.at("connected_supports").get<bool>();
        doc.degree_ok = v.at("degree_ok").get<bool>();
        doc.alpha = j.at("alpha").get<double>();
        for (const auto& b : j.at("bags")) {
            BagDrawing bd;
            bd.bag = b.at("bag").get<int>() - 1;
            for (const auto& x : b.at("order")) bd.order.push_back(x.get<int>() - 1);
            for (const auto& x : b.at("pages")) bd.pages.push_back(static_cast<std::uint8_t>(x.get<int>()));
            for (const auto& x : b.at("orbits")) bd.orbits.push_back(x.get<int>());
            for (const auto& x : b.at("directions")) bd.directions.push_back(static_cast<std::uint8_t>(x.get<int>()));
            bd.flipped = b.at("flipped").get<bool>();
            doc.drawing.push_back(bd);
        }
        auto& L = doc.layout;
        L.variant = doc.style.variant;
        for (const auto& d : j.at("disks")) L.disks.push_back({d.at("bag").get<int>() - 1, detail::point_from(d.at("center")), d.at("radius").get<double>()});
        L.vertex_circle = j.at("vertex_circle").get<double>();
        for (const auto& p : j.at("vertex_points"))
            L.vertex_points.push_back({p.at("bag").get<int>() - 1, p.at("vertex").get<int>() - 1, detail::point_from(p.at("at"))});
        for (const auto& e : j.at("edge_curves"))
            L.edge_curves.push_back({e.at("bag").get<int>() - 1, Edge{e.at("u").get<int>() - 1, e.at("v").get<int>() - 1}, detail::curve_from(e.at("curve"))});
        for (const auto& t : j.at("track_curves"))
            L.track_curves.push_back({t.at("vertex").get<int>() - 1, t.at("from").get<int>() - 1, t.at("to").get<int>() - 1, detail::curve_from(t.at("curve"))});
        for (const auto& e : j.at("tree_edges")) L.tree_edges.emplace_back(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1);
        for (const auto& p : j.at("palette")) L.palette[p.at("vertex").get<int>() - 1] = p.at("color").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::MalformedLine, std::string("layout document: ") + e.what());
    }
    return doc;
}

}  // namespace witness

#endif
