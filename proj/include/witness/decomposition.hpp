#ifndef WITNESS_DECOMPOSITION_HPP
#define WITNESS_DECOMPOSITION_HPP

#include <algorithm>
#include <istream>
#include <numeric>
#include <queue>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "witness/error.hpp"
#include "witness/graph.hpp"

namespace witness {

using BagIndex = int;  // 0-based inside the library

enum class DecompositionKind { Path, Tree };

/// Tree or path decomposition. Bags hold sorted vertex lists.
struct Decomposition {
    std::vector<std::vector<Vertex>> bags;
    std::vector<std::pair<BagIndex, BagIndex>> tree_edges;  // file order
    BagIndex root = 0;
    DecompositionKind kind = DecompositionKind::Path;
    int width = -1;

    int bag_count() const noexcept { return static_cast<int>(bags.size()); }
    int w_plus() const noexcept { return width + 1; }

    /// Neighbors of each bag in tree-edge file order.
    std::vector<std::vector<BagIndex>> adjacency() const {
        std::vector<std::vector<BagIndex>> adj(bags.size());
        for (auto [a, b] : tree_edges) {
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        return adj;
    }

    bool contains(BagIndex i, Vertex v) const {
        const auto& b = bags.at(static_cast<std::size_t>(i));
        return std::binary_search(b.begin(), b.end(), v);
    }
};

namespace detail {

inline int max_bag_size(const std::vector<std::vector<Vertex>>& bags) {
    int w = 0;
    for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
    return w;
}

/// Connected and acyclic on k nodes (k-1 edges, one component).
inline bool is_tree(int k, const std::vector<std::pair<BagIndex, BagIndex>>& edges) {
    if (k == 0) return edges.empty();
    if (static_cast<int>(edges.size()) != k - 1) return false;
    std::vector<int> parent(static_cast<std::size_t>(k));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (auto [a, b] : edges) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent[static_cast<std::size_t>(ra)] = rb;
    }
    return true;
}

inline DecompositionKind infer_kind(const Decomposition& t) {
    for (const auto& nb : t.adjacency())
        if (nb.size() > 2) return DecompositionKind::Tree;
    return DecompositionKind::Path;
}

}  // namespace detail

/// Builds a decomposition from in-memory parts, checking the tree shape.
inline Decomposition make_decomposition(std::vector<std::vector<Vertex>> bags,
                                        std::vector<std::pair<BagIndex, BagIndex>> tree_edges,
                                        BagIndex root = 0) {
    Decomposition t;
    for (auto& b : bags) {
        std::sort(b.begin(), b.end());
        if (std::adjacent_find(b.begin(), b.end()) != b.end())
            throw Error(ErrorCode::MalformedLine, "vertex repeated inside a bag");
    }
    t.bags = std::move(bags);
    for (auto [a, b] : tree_edges)
        if (a < 0 || b < 0 || a >= t.bag_count() || b >= t.bag_count())
            throw Error(ErrorCode::BagIndexOutOfRange, "tree edge references a missing bag");
    if (!detail::is_tree(t.bag_count(), tree_edges))
        throw Error(ErrorCode::NotATree, "tree edges do not form a tree on the bags");
    t.tree_edges = std::move(tree_edges);
    if (t.bag_count() > 0 && (root < 0 || root >= t.bag_count()))
        throw Error(ErrorCode::BagIndexOutOfRange, "root bag out of range");
    t.root = root;
    t.width = detail::max_bag_size(t.bags) - 1;
    t.kind = detail::infer_kind(t);
    return t;
}

/// Reads a PACE 2017 `.td` decomposition. `g` supplies the vertex range.
inline Decomposition parse_decomposition(std::istream& in, const Graph& g) {
    auto lines = detail::content_lines(in);
    if (lines.empty()) throw Error(ErrorCode::MalformedHeader, "missing 's td' header");
    const auto& h = lines.front();
    long long k = 0, wp = 0, n = 0;
    if (h.size() != 5 || h[0] != "s" || h[1] != "td" || !detail::parse_int(h[2], k) ||
        !detail::parse_int(h[3], wp) || !detail::parse_int(h[4], n) || k < 0 || wp < 0 || n < 0)
        throw Error(ErrorCode::MalformedHeader, "expected 's td <k> <w+1> <n>'");
    if (n != g.vertex_count())
        throw Error(ErrorCode::MalformedHeader, "decomposition is for " + std::to_string(n) +
                                                    " vertices, graph has " + std::to_string(g.vertex_count()));
    std::vector<std::vector<Vertex>> bags(static_cast<std::size_t>(k));
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    std::vector<std::pair<BagIndex, BagIndex>> edges;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto& t = lines[li];
        if (t[0] == "b") {
            long long idx = 0;
            if (t.size() < 2 || !detail::parse_int(t[1], idx))
                throw Error(ErrorCode::MalformedLine, "bad bag line");
            if (idx < 1 || idx > k)
                throw Error(ErrorCode::BagIndexOutOfRange, "bag " + t[1] + " outside 1.." + std::to_string(k));
            if (seen[static_cast<std::size_t>(idx - 1)])
                throw Error(ErrorCode::MalformedLine, "bag " + t[1] + " defined twice");
            seen[static_cast<std::size_t>(idx - 1)] = true;
            auto& bag = bags[static_cast<std::size_t>(idx - 1)];
            for (std::size_t j = 2; j < t.size(); ++j) {
                long long v = 0;
                if (!detail::parse_int(t[j], v)) throw Error(ErrorCode::MalformedLine, "bad vertex '" + t[j] + "'");
                if (v < 1 || v > n)
                    throw Error(ErrorCode::VertexOutOfRange, "vertex " + t[j] + " outside 1.." + std::to_string(n));
                bag.push_back(static_cast<Vertex>(v - 1));
            }
        } else {
            long long a = 0, b = 0;
            if (t.size() != 2 || !detail::parse_int(t[0], a) || !detail::parse_int(t[1], b))
                throw Error(ErrorCode::MalformedLine, "expected tree edge '<i> <j>'");
            if (a < 1 || b < 1 || a > k || b > k)
                throw Error(ErrorCode::BagIndexOutOfRange, "tree edge (" + t[0] + "," + t[1] + ") outside 1.." +
                                                               std::to_string(k));
            edges.emplace_back(static_cast<BagIndex>(a - 1), static_cast<BagIndex>(b - 1));
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw Error(ErrorCode::MalformedLine, "bag " + std::to_string(i + 1) + " missing");
    auto t = make_decomposition(std::move(bags), std::move(edges), 0);
    if (t.bag_count() > 0 && t.width + 1 != wp)
        throw Error(ErrorCode::WidthMismatch, "header claims bag size " + std::to_string(wp) +
                                                  ", largest bag has " + std::to_string(t.width + 1));
    return t;
}

inline Decomposition parse_decomposition(std::string_view text, const Graph& g) {
    std::istringstream in{std::string(text)};
    return parse_decomposition(in, g);
}

inline std::string serialize_decomposition(const Decomposition& t, int n) {
    std::ostringstream out;
    out << "s td " << t.bag_count() << ' ' << std::max(0, t.width + 1) << ' ' << n << '\n';
    for (int i = 0; i < t.bag_count(); ++i) {
        out << "b " << i + 1;
        for (auto v : t.bags[static_cast<std::size_t>(i)]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : t.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
    return out.str();
}

struct ValidationReport {
    bool covers_vertices = true;
    std::vector<Vertex> uncovered_vertices;
    bool covers_edges = true;
    std::vector<Edge> uncovered_edges;
    bool connected_supports = true;
    std::vector<Vertex> disconnected_vertices;
    bool degree_ok = true;
    int width = -1;

    bool ok() const noexcept { return covers_vertices && covers_edges && connected_supports && degree_ok; }
};

/// Checks the three decomposition properties plus the degree-3 bound,
/// each independently.
inline ValidationReport validate(const Graph& g, const Decomposition& t) {
    ValidationReport r;
    r.width = detail::max_bag_size(t.bags) - 1;
    const int n = g.vertex_count();
    std::vector<std::vector<BagIndex>> holders(static_cast<std::size_t>(n));
    for (int i = 0; i < t.bag_count(); ++i)
        for (auto v : t.bags[static_cast<std::size_t>(i)])
            if (v >= 0 && v < n) holders[static_cast<std::size_t>(v)].push_back(i);

    for (Vertex v = 0; v < n; ++v)
        if (holders[static_cast<std::size_t>(v)].empty()) {
            r.covers_vertices = false;
            r.uncovered_vertices.push_back(v);
        }

    for (const auto& e : g.edges()) {
        const auto& hu = holders[static_cast<std::size_t>(e.u)];
        bool found = std::any_of(hu.begin(), hu.end(), [&](BagIndex i) { return t.contains(i, e.v); });
        if (!found) {
            r.covers_edges = false;
            r.uncovered_edges.push_back(e);
        }
    }

    auto adj = t.adjacency();
    for (const auto& nb : adj)
        if (nb.size() > 3) r.degree_ok = false;

    // Support of v is connected iff a BFS restricted to bags holding v
    // reaches all of them.
    for (Vertex v = 0; v < n; ++v) {
        const auto& hv = holders[static_cast<std::size_t>(v)];
        if (hv.size() <= 1) continue;
        std::vector<char> visited(static_cast<std::size_t>(t.bag_count()), 0);
        std::queue<BagIndex> q;
        q.push(hv.front());
        visited[static_cast<std::size_t>(hv.front())] = 1;
        std::size_t reached = 0;
        while (!q.empty()) {
            auto b = q.front();
            q.pop();
            ++reached;
            for (auto c : adj[static_cast<std::size_t>(b)])
                if (!visited[static_cast<std::size_t>(c)] && t.contains(c, v)) {
                    visited[static_cast<std::size_t>(c)] = 1;
                    q.push(c);
                }
        }
        if (reached != hv.size()) {
            r.connected_supports = false;
            r.disconnected_vertices.push_back(v);
        }
    }
    return r;
}

/// G[V_i] with original vertex identifiers. Edges are sorted.
struct BagGraph {
    std::vector<Vertex> vertices;  // sorted
    std::vector<Edge> edges;       // sorted

    int local_index(Vertex v) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
        return (it != vertices.end() && *it == v) ? static_cast<int>(it - vertices.begin()) : -1;
    }
};

inline BagGraph induced_bag_graph(const Graph& g, const Decomposition& t, BagIndex i) {
    if (i < 0 || i >= t.bag_count())
        throw Error(ErrorCode::BagIndexOutOfRange, "bag " + std::to_string(i + 1) + " does not exist");
    BagGraph bg;
    bg.vertices = t.bags[static_cast<std::size_t>(i)];
    for (std::size_t a = 0; a < bg.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < bg.vertices.size(); ++b)
            if (g.has_edge(bg.vertices[a], bg.vertices[b])) bg.edges.push_back(make_edge(bg.vertices[a], bg.vertices[b]));
    std::sort(bg.edges.begin(), bg.edges.end());
    return bg;
}

/// Decomposition rooted and oriented left-to-right: root leftmost, children
/// to its right in tree-edge file order.
struct RootedTree {
    BagIndex root = 0;
    std::vector<BagIndex> parent;                 // -1 at the root
    std::vector<std::vector<BagIndex>> children;  // at most two each
    std::vector<BagIndex> bottom_up;              // children before parents; root last
    std::vector<BagIndex> top_down;               // reverse of bottom_up
    std::vector<int> depth;

    int size() const noexcept { return static_cast<int>(parent.size()); }
};

inline RootedTree orient_left_to_right(const Decomposition& t, BagIndex root) {
    RootedTree rt;
    const int k = t.bag_count();
    rt.root = root;
    rt.parent.assign(static_cast<std::size_t>(k), -1);
    rt.children.assign(static_cast<std::size_t>(k), {});
    rt.depth.assign(static_cast<std::size_t>(k), 0);
    if (k == 0) return rt;
    if (root < 0 || root >= k) throw Error(ErrorCode::BagIndexOutOfRange, "root bag out of range");
    auto adj = t.adjacency();
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    std::queue<BagIndex> q;
    q.push(root);
    seen[static_cast<std::size_t>(root)] = 1;
    while (!q.empty()) {
        auto b = q.front();
        q.pop();
        rt.top_down.push_back(b);
        for (auto c : adj[static_cast<std::size_t>(b)]) {
            if (seen[static_cast<std::size_t>(c)]) continue;
            seen[static_cast<std::size_t>(c)] = 1;
            rt.parent[static_cast<std::size_t>(c)] = b;
            rt.depth[static_cast<std::size_t>(c)] = rt.depth[static_cast<std::size_t>(b)] + 1;
            rt.children[static_cast<std::size_t>(b)].push_back(c);
            q.push(c);
        }
    }
    if (static_cast<int>(rt.top_down.size()) != k) throw Error(ErrorCode::NotATree, "decomposition is disconnected");
    for (int b = 0; b < k; ++b)
        if (rt.children[static_cast<std::size_t>(b)].size() > 2)
            throw Error(ErrorCode::DegreeTooHigh,
                        "bag " + std::to_string(b + 1) + " has " +
                            std::to_string(rt.children[static_cast<std::size_t>(b)].size()) +
                            " children when rooted at bag " + std::to_string(root + 1) +
                            "; re-root at a bag of degree <= 2 (e.g. --root)");
    rt.bottom_up.assign(rt.top_down.rbegin(), rt.top_down.rend());
    return rt;
}

/// Bag suggestions for --root when the default root has three children.
inline std::vector<BagIndex> feasible_roots(const Decomposition& t) {
    std::vector<BagIndex> out;
    auto adj = t.adjacency();
    bool all_ok = std::all_of(adj.begin(), adj.end(), [](const auto& nb) { return nb.size() <= 3; });
    if (!all_ok) return out;
    for (int b = 0; b < t.bag_count(); ++b)
        if (adj[static_cast<std::size_t>(b)].size() <= 2) out.push_back(b);
    return out;
}

}  // namespace witness

#endif
