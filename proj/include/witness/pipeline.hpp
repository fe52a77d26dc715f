#ifndef WITNESS_PIPELINE_HPP
#define WITNESS_PIPELINE_HPP

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>

#include "witness/bench.hpp"
#include "witness/dp.hpp"
#include "witness/heuristics.hpp"
#include "witness/layout_json.hpp"

namespace witness {

enum class Algorithm { Dp, Global, Local, Brute };

inline Algorithm parse_algorithm(const std::string& s) {
    if (s == "dp") return Algorithm::Dp;
    if (s == "global") return Algorithm::Global;
    if (s == "local") return Algorithm::Local;
    if (s == "brute") return Algorithm::Brute;
    throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + s + "'");
}

inline std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Dp: return "dp";
        case Algorithm::Global: return "global";
        case Algorithm::Local: return "local";
        case Algorithm::Brute: return "brute";
    }
    return "?";
}

struct RunOptions {
    Style style;
    Algorithm algorithm = Algorithm::Dp;
    bool local_search = false;
    double time_limit = 900.0;
    std::uint64_t seed = 0;
    GeometryConfig geometry;
    std::optional<BagIndex> root;
    int threads = 1;
    bool timing = true;  // false writes millis = 0 so records are reproducible
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

struct RunResult {
    Instance instance;
    WitnessDrawing drawing;
    RunRecord record;
    ValidationReport report;
};

/// Validates, solves and tallies one input. Throws on invalid input and on
/// SearchSpaceTooLarge; a DP timeout returns normally with optimal = false.
inline RunResult run_once(const Graph& g, const Decomposition& t, const std::string& name, const RunOptions& opt) {
    RunResult out;
    out.report = validate(g, t);
    if (!out.report.ok()) throw Error(ErrorCode::InvalidDecomposition, "input is not a tree decomposition of the graph");
    out.instance = make_instance(g, t, opt.root);
    const auto start = std::chrono::steady_clock::now();
    SolveConfig sc;
    sc.style = opt.style;
    sc.time_limit = opt.time_limit;
    sc.geometry = opt.geometry;
    sc.root = opt.root;
    sc.threads = opt.threads;
    switch (opt.algorithm) {
        case Algorithm::Dp: out.drawing = solve(out.instance, sc); break;
        case Algorithm::Brute: out.drawing = brute_force_optimum(out.instance, sc); break;
        case Algorithm::Global:
        case Algorithm::Local: {
            detail::require_l2(opt.style);
            HeuristicConfig hc;
            hc.variant = opt.algorithm == Algorithm::Global ? HeuristicVariant::Global : HeuristicVariant::Local;
            hc.local_search = opt.local_search;
            hc.time_limit = opt.time_limit;
            hc.rng_seed = opt.seed;
            out.drawing = run_heuristic(out.instance, hc);
            out.drawing.crossings = tally(out.instance, out.drawing, opt.geometry);
            break;
        }
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    auto& r = out.record;
    r.instance = name;
    r.style = opt.style;
    r.algorithm = to_string(opt.algorithm);
    r.local_search = opt.local_search && (opt.algorithm == Algorithm::Global || opt.algorithm == Algorithm::Local);
    r.crossings = out.drawing.crossings;
    r.millis = opt.timing ? static_cast<long long>(ms) : 0;
    r.optimal = out.drawing.optimal;
    r.seed = opt.seed;
    r.width = out.report.width;
    r.bags = t.bag_count();
    return out;
}

inline void write_artifacts(const RunResult& res, const RunOptions& opt, const std::string& prefix) {
    auto layout = realize(res.instance, res.drawing, opt.geometry);
    auto doc = make_document(res.instance, res.drawing, layout, res.report, res.drawing.crossings, opt.geometry);
    write_file(prefix + ".json", to_layout_json(doc));
    write_file(prefix + ".svg", to_svg(layout));
}

}  // namespace witness

#endif
