// ww: validate tree decompositions, draw them, and benchmark the solvers.
//
// Exit codes: 0 success (a timed-out DP still succeeds, optimal=0),
// 1 invalid decomposition or bad arguments, 2 unreadable or malformed input
// and write errors, 3 search space too large for the DP.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "witness/pipeline.hpp"

namespace fs = std::filesystem;
using namespace witness;

namespace {

int env_threads() {
    if (const char* s = std::getenv("WW_THREADS")) {
        int n = std::atoi(s);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int exit_code(const Error& e) {
    switch (e.code()) {
        case ErrorCode::SearchSpaceTooLarge: return 3;
        case ErrorCode::IoError:
        case ErrorCode::MalformedHeader:
        case ErrorCode::MalformedLine:
        case ErrorCode::EdgeOutOfRange:
        case ErrorCode::VertexOutOfRange:
        case ErrorCode::DuplicateEdge:
        case ErrorCode::SelfLoop:
        case ErrorCode::BagIndexOutOfRange:
        case ErrorCode::WidthMismatch: return 2;
        default: return 1;
    }
}

std::string one_based(const std::vector<Vertex>& vs) {
    std::string s;
    for (auto v : vs) s += (s.empty() ? "" : " ") + std::to_string(v + 1);
    return s;
}

std::string report_text(const ValidationReport& r) {
    std::string out;
    if (!r.covers_vertices) out += "uncovered vertices: " + one_based(r.uncovered_vertices) + "\n";
    if (!r.covers_edges) {
        out += "uncovered edges:";
        for (auto e : r.uncovered_edges) out += " " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1);
        out += "\n";
    }
    if (!r.connected_supports) out += "disconnected support for vertices: " + one_based(r.disconnected_vertices) + "\n";
    if (!r.degree_ok) out += "a bag has more than three neighbors\n";
    return out;
}

struct Inputs {
    Graph graph;
    Decomposition decomposition;
};

Inputs load(const std::string& gr, const std::string& td) {
    Inputs in;
    in.graph = parse_graph(read_file(gr));
    in.decomposition = parse_decomposition(read_file(td), in.graph);
    return in;
}

int cmd_validate(const std::string& gr, const std::string& td) {
    auto in = load(gr, td);
    auto r = validate(in.graph, in.decomposition);
    if (r.ok()) {
        std::cout << "valid: " << in.decomposition.bag_count() << " bags, width " << r.width << "\n";
        return 0;
    }
    std::cout << "invalid\n" << report_text(r);
    return 1;
}

int cmd_solve(const std::string& gr, const std::string& td, const RunOptions& opt, const std::string& prefix) {
    auto in = load(gr, td);
    auto r = validate(in.graph, in.decomposition);
    if (!r.ok()) {
        std::cerr << "invalid decomposition\n" << report_text(r);
        return 1;
    }
    RunResult res;
    try {
        res = run_once(in.graph, in.decomposition, fs::path(gr).stem().string(), opt);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::DegreeTooHigh) {
            std::string roots;
            for (auto b : feasible_roots(in.decomposition)) roots += " " + std::to_string(b + 1);
            std::cerr << e.what() << "\nbags that can serve as root:" << roots << "\n";
            return 1;
        }
        if (e.code() != ErrorCode::SearchSpaceTooLarge) throw;
        std::cerr << e.what() << "\nthe exact DP does not fit; try --algo global or --algo local\n";
        return 3;
    }
    if (!prefix.empty()) write_artifacts(res, opt, prefix);
    std::cout << to_tsv(res.record) << "\n";
    return 0;
}

struct BenchJob {
    std::string name, gr, td;
};

int cmd_bench(const std::string& dir, RunOptions base, const std::vector<std::string>& algos, const std::string& summary_path) {
    if (!fs::is_directory(dir)) throw Error(ErrorCode::IoError, "not a directory: " + dir);
    std::vector<BenchJob> jobs;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".gr") continue;
        auto td = entry.path();
        td.replace_extension(".td");
        if (fs::exists(td)) jobs.push_back({entry.path().stem().string(), entry.path().string(), td.string()});
    }
    std::sort(jobs.begin(), jobs.end(), [](const BenchJob& a, const BenchJob& b) { return a.name < b.name; });

    std::vector<std::pair<Algorithm, bool>> configs;
    for (const auto& a : algos) {
        bool ls = a.size() > 3 && a.substr(a.size() - 3) == "+ls";
        configs.emplace_back(parse_algorithm(ls ? a.substr(0, a.size() - 3) : a), ls);
    }
    const std::size_t total = jobs.size() * configs.size();
    std::vector<RunRecord> records(total);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next++) < total;) {
            const auto& job = jobs[k / configs.size()];
            auto opt = base;
            opt.algorithm = configs[k % configs.size()].first;
            opt.local_search = configs[k % configs.size()].second;
            opt.threads = 1;
            auto& rec = records[k];
            rec.instance = job.name;
            rec.style = opt.style;
            rec.algorithm = to_string(opt.algorithm);
            rec.local_search = opt.local_search;
            rec.seed = opt.seed;
            try {
                auto in = load(job.gr, job.td);
                rec.width = validate(in.graph, in.decomposition).width;
                rec.bags = in.decomposition.bag_count();
                rec = run_once(in.graph, in.decomposition, job.name, opt).record;
            } catch (const std::exception& e) {
                rec.error = e.what();
                rec.crossings = {-1, -1, -1, -1};
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(env_threads(), static_cast<int>(std::max<std::size_t>(1, total)));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    // single writer, input order
    std::cout << kTsvHeader << "\n";
    for (const auto& r : records) {
        std::cout << to_tsv(r) << "\n";
        if (!r.error.empty()) std::cerr << r.instance << " [" << r.label() << "]: " << r.error << "\n";
    }
    auto text = format_summary(summarize(records));
    if (summary_path.empty())
        std::cerr << text;
    else
        write_file(summary_path, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Witness drawings of tree decompositions"};
    app.name("ww");
    app.require_subcommand(1);

    std::string gr, td;
    auto* validate_cmd = app.add_subcommand("validate", "check that a .td file is a tree decomposition of a .gr graph");
    validate_cmd->add_option("graph", gr, "PACE .gr file")->required();
    validate_cmd->add_option("decomposition", td, "PACE .td file")->required();

    RunOptions opt;
    std::string style = "l2", algo = "dp", prefix;
    std::optional<double> alpha;
    int root = 0;
    bool no_timing = false;
    auto* solve_cmd = app.add_subcommand("solve", "draw a decomposition with few crossings");
    solve_cmd->add_option("graph", gr, "PACE .gr file")->required();
    solve_cmd->add_option("decomposition", td, "PACE .td file")->required();
    auto add_common = [&](CLI::App* c) {
        c->add_option("--style", style, "drawing style")->check(CLI::IsMember({"l1", "l2", "c", "o"}))->capture_default_str();
        c->add_option("--time-limit", opt.time_limit, "seconds per run")->check(CLI::PositiveNumber)->capture_default_str();
        c->add_option("--seed", opt.seed, "recorded in every run record")->capture_default_str();
        c->add_option("--alpha", alpha, "rotation of the first vertex position in radians, c and o only (default pi/(2w+))");
        c->add_flag("--no-timing", no_timing, "write millis = 0 so that records are reproducible");
    };
    add_common(solve_cmd);
    solve_cmd->add_option("--algo", algo, "solver")->check(CLI::IsMember({"dp", "global", "local", "brute"}))->capture_default_str();
    solve_cmd->add_flag("--ls", opt.local_search, "run local search after a heuristic");
    solve_cmd->add_option("--out", prefix, "write PREFIX.svg and PREFIX.json");
    solve_cmd->add_option("--root", root, "root bag (1-based; default: first bag)")->check(CLI::PositiveNumber);

    std::string corpus, summary;
    std::vector<std::string> algos{"dp", "global", "local", "global+ls", "local+ls"};
    auto* bench_cmd = app.add_subcommand("bench", "run several solvers over every .gr/.td pair in a directory");
    bench_cmd->add_option("corpus", corpus, "directory of NAME.gr and NAME.td files")->required();
    add_common(bench_cmd);
    bench_cmd->add_option("--algos", algos, "solvers to compare; append +ls for local search")
        ->delimiter(',')
        ->check(CLI::IsMember({"dp", "brute", "global", "local", "global+ls", "local+ls"}))
        ->capture_default_str();
    bench_cmd->add_option("--summary", summary, "write the summary here instead of standard error");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        opt.style.variant = parse_variant(style);
        opt.timing = !no_timing;
        opt.threads = env_threads();
        if (alpha) opt.geometry.alpha = *alpha;
        if (root > 0) opt.root = root - 1;
        if (*validate_cmd) return cmd_validate(gr, td);
        if (*solve_cmd) {
            opt.algorithm = parse_algorithm(algo);
            return cmd_solve(gr, td, opt, prefix);
        }
        return cmd_bench(corpus, opt, algos, summary);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
