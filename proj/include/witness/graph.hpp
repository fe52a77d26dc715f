#ifndef WITNESS_GRAPH_HPP
#define WITNESS_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "witness/error.hpp"

namespace witness {

using Vertex = int;  // 0-based inside the library, 1-based in files

struct Edge {
    Vertex u = 0;
    Vertex v = 0;  // u < v

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

inline std::uint64_t edge_key(Vertex a, Vertex b) {
    auto e = make_edge(a, b);
    return (static_cast<std::uint64_t>(e.u) << 32) | static_cast<std::uint32_t>(e.v);
}

/// Simple undirected graph on vertices 0..n-1.
class Graph {
public:
    Graph() = default;

    explicit Graph(int n) : n_(n), adjacency_(static_cast<std::size_t>(n)) {
        if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative vertex count");
    }

    Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
        for (const auto& e : edges) add_edge(e.u, e.v);
    }

    void add_edge(Vertex a, Vertex b) {
        if (a == b) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(a + 1));
        if (a < 0 || b < 0 || a >= n_ || b >= n_)
            throw Error(ErrorCode::EdgeOutOfRange, "edge (" + std::to_string(a + 1) + "," +
                                                       std::to_string(b + 1) + ") outside 1.." +
                                                       std::to_string(n_));
        if (!keys_.insert(edge_key(a, b)).second)
            throw Error(ErrorCode::DuplicateEdge, "duplicate edge (" + std::to_string(a + 1) + "," +
                                                      std::to_string(b + 1) + ")");
        auto e = make_edge(a, b);
        edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), e);
        auto& au = adjacency_[static_cast<std::size_t>(e.u)];
        auto& av = adjacency_[static_cast<std::size_t>(e.v)];
        au.insert(std::upper_bound(au.begin(), au.end(), e.v), e.v);
        av.insert(std::upper_bound(av.begin(), av.end(), e.u), e.u);
    }

    int vertex_count() const noexcept { return n_; }
    int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(static_cast<std::size_t>(v)); }
    int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
    bool has_edge(Vertex a, Vertex b) const { return a != b && keys_.count(edge_key(a, b)) > 0; }

    std::vector<std::string> labels;  // optional, indexed by vertex

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
    std::unordered_set<std::uint64_t> keys_;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline bool parse_int(const std::string& s, long long& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    long long v = 0;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        v = v * 10 + (s[i] - '0');
        if (v > (1LL << 40)) return false;
    }
    out = s[0] == '-' ? -v : v;
    return true;
}

/// Yields the non-comment, non-empty lines of a PACE-style file, tokenized.
inline std::vector<std::vector<std::string>> content_lines(std::istream& in) {
    std::vector<std::vector<std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        auto toks = split_ws(line);
        if (toks.empty() || toks[0] == "c") continue;
        out.push_back(std::move(toks));
    }
    return out;
}

}  // namespace detail

/// Reads a PACE 2017 `.gr` graph (`p tw n m` header, one `u v` line per edge).
inline Graph parse_graph(std::istream& in) {
    auto lines = detail::content_lines(in);
    if (lines.empty()) throw Error(ErrorCode::MalformedHeader, "missing 'p tw' header");
    const auto& h = lines.front();
    long long n = 0, m = 0;
    if (h.size() != 4 || h[0] != "p" || h[1] != "tw" || !detail::parse_int(h[2], n) ||
        !detail::parse_int(h[3], m) || n < 0 || m < 0)
        throw Error(ErrorCode::MalformedHeader, "expected 'p tw <n> <m>'");
    Graph g(static_cast<int>(n));
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& t = lines[i];
        long long a = 0, b = 0;
        if (t.size() != 2 || !detail::parse_int(t[0], a) || !detail::parse_int(t[1], b))
            throw Error(ErrorCode::MalformedLine, "expected '<u> <v>' on edge line " + std::to_string(i));
        if (a < 1 || b < 1 || a > n || b > n)
            throw Error(ErrorCode::EdgeOutOfRange, "edge (" + t[0] + "," + t[1] + ") outside 1.." +
                                                       std::to_string(n));
        g.add_edge(static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1));
    }
    if (g.edge_count() != m)
        throw Error(ErrorCode::MalformedHeader, "header announces " + std::to_string(m) + " edges, found " +
                                                    std::to_string(g.edge_count()));
    return g;
}

inline Graph parse_graph(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_graph(in);
}

/// Canonical `.gr` text: header then edges in sorted order.
inline std::string serialize_graph(const Graph& g) {
    std::ostringstream out;
    out << "p tw " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const auto& e : g.edges()) out << e.u + 1 << ' ' << e.v + 1 << '\n';
    return out.str();
}

}  // namespace witness

#endif
