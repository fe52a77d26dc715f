#ifndef WITNESS_BENCH_HPP
#define WITNESS_BENCH_HPP

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "witness/style.hpp"

namespace witness {

struct RunRecord {
    std::string instance;
    Style style;
    std::string algorithm;  // dp, global, local, brute
    bool local_search = false;
    CrossingTally crossings;
    long long millis = 0;
    bool optimal = false;
    std::uint64_t seed = 0;
    int width = -1;
    int bags = 0;
    std::string error;  // non-empty when the run failed

    std::string label() const { return local_search ? algorithm + "+ls" : algorithm; }
};

inline const char* kTsvHeader = "instance\tstyle\talgo\tls\ttt\tte\tee\ttotal\tmillis\toptimal\tseed";

inline std::string to_tsv(const RunRecord& r) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "\t%s\t%s\t%d\t%lld\t%lld\t%lld\t%lld\t%lld\t%d\t%llu", to_string(r.style.variant).c_str(),
                  r.algorithm.c_str(), r.local_search ? 1 : 0, r.crossings.tt, r.crossings.te, r.crossings.ee, r.crossings.total,
                  r.millis, r.optimal ? 1 : 0, static_cast<unsigned long long>(r.seed));
    return r.instance + buf;
}

struct AlgorithmSummary {
    std::string label;
    int runs = 0;
    int failures = 0;
    int wins = 0;
    double mean_ratio = 0.0;
};

struct InstanceRow {
    std::string instance;
    int width = -1;
    int bags = 0;
    long long best = -1;
    std::map<std::string, double> ratio;  // label -> best / achieved
};

struct BenchSummary {
    std::vector<AlgorithmSummary> algorithms;
    std::vector<InstanceRow> instances;  // by width, then bag count, then name
};

// best/achieved, so 1.0 is the best algorithm on that instance; two zero
// counts compare as equal.
inline double crossing_ratio(long long best, long long achieved) {
    if (achieved == 0) return 1.0;
    return static_cast<double>(best) / static_cast<double>(achieved);
}

inline BenchSummary summarize(const std::vector<RunRecord>& records) {
    std::map<std::string, std::vector<const RunRecord*>> by_instance;
    std::set<std::string> labels;
    for (const auto& r : records) {
        by_instance[r.instance].push_back(&r);
        labels.insert(r.label());
    }
    BenchSummary s;
    std::map<std::string, AlgorithmSummary> algos;
    for (const auto& l : labels) algos[l].label = l;
    for (const auto& [name, runs] : by_instance) {
        InstanceRow row;
        row.instance = name;
        for (const auto* r : runs) {
            row.width = std::max(row.width, r->width);
            row.bags = std::max(row.bags, r->bags);
            auto& a = algos[r->label()];
            ++a.runs;
            if (!r->error.empty()) {
                ++a.failures;
                continue;
            }
            if (row.best < 0 || r->crossings.total < row.best) row.best = r->crossings.total;
        }
        for (const auto* r : runs) {
            if (!r->error.empty()) continue;
            double q = crossing_ratio(row.best, r->crossings.total);
            row.ratio[r->label()] = q;
            auto& a = algos[r->label()];
            a.mean_ratio += q;
            if (r->crossings.total == row.best) ++a.wins;  // ties go to everyone
        }
        s.instances.push_back(row);
    }
    for (auto& [l, a] : algos) {
        int ok = a.runs - a.failures;
        if (ok > 0) a.mean_ratio /= ok;
        s.algorithms.push_back(a);
    }
    std::stable_sort(s.instances.begin(), s.instances.end(), [](const InstanceRow& a, const InstanceRow& b) {
        if (a.width != b.width) return a.width < b.width;
        if (a.bags != b.bags) return a.bags < b.bags;
        return a.instance < b.instance;
    });
    return s;
}

inline std::string format_summary(const BenchSummary& s) {
    std::string out = "# wins count every algorithm that reaches the per-instance minimum (ties awarded to all)\n";
    out += "# algo\truns\tfailures\twins\tmean_ratio\n";
    char buf[256];
    for (const auto& a : s.algorithms) {
        std::snprintf(buf, sizeof buf, "# %s\t%d\t%d\t%d\t%.4f\n", a.label.c_str(), a.runs, a.failures, a.wins, a.mean_ratio);
        out += buf;
    }
    out += "# instance\twidth\tbags\tbest";
    for (const auto& a : s.algorithms) out += "\t" + a.label;
    out += "\n";
    for (const auto& row : s.instances) {
        std::snprintf(buf, sizeof buf, "# %s\t%d\t%d\t%lld", row.instance.c_str(), row.width, row.bags, row.best);
        out += buf;
        for (const auto& a : s.algorithms) {
            auto it = row.ratio.find(a.label);
            if (it == row.ratio.end()) {
                out += "\t-";
            } else {
                std::snprintf(buf, sizeof buf, "\t%.4f", it->second);
                out += buf;
            }
        }
        out += "\n";
    }
    return out;
}

}  // namespace witness

#endif
