#ifndef WITNESS_HEURISTICS_HPP
#define WITNESS_HEURISTICS_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "witness/crossings.hpp"
#include "witness/style.hpp"

namespace witness {

enum class HeuristicVariant { Global, Local };

struct HeuristicConfig {
    HeuristicVariant variant = HeuristicVariant::Global;
    bool local_search = false;
    double time_limit = 900.0;  // seconds, local search only
    std::uint64_t rng_seed = 0;  // recorded; the procedures are deterministic
};

/// Spine order plus a page per edge of `edges` (same indexing).
struct BookDrawing {
    std::vector<Vertex> order;
    std::vector<std::uint8_t> pages;
};

/// The already drawn parent of a bag, as seen by the bag.
struct ParentContext {
    std::vector<Vertex> shared_order;  // shared vertices in the parent's order
};

/// Greedy two-page book drawing: vertices enter one at a time (most placed
/// neighbors, then degree, then id), each at the cheapest spine position,
/// with the new edges put on the cheaper page one by one.
inline BookDrawing con_greedy_plus(const std::vector<Vertex>& vertices, const std::vector<Edge>& edges,
                                   const std::optional<ParentContext>& parent = std::nullopt) {
    BookDrawing out;
    out.pages.assign(edges.size(), 0);
    const std::size_t n = vertices.size();
    if (n == 0) return out;
    auto local = [&](Vertex v) { return static_cast<std::size_t>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin()); };
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> inc(n);  // (neighbor local, edge index)
    for (std::size_t e = 0; e < edges.size(); ++e) {
        auto a = local(edges[e].u), b = local(edges[e].v);
        inc[a].push_back({b, e});
        inc[b].push_back({a, e});
    }
    for (auto& l : inc) std::sort(l.begin(), l.end());
    // Rank of each shared vertex in the parent, -1 if not shared.
    std::vector<int> parent_rank(n, -1);
    if (parent)
        for (std::size_t r = 0; r < parent->shared_order.size(); ++r) {
            auto l = local(parent->shared_order[r]);
            if (l < n && vertices[l] == parent->shared_order[r]) parent_rank[l] = static_cast<int>(r);
        }

    std::vector<char> placed(n, 0);
    std::vector<std::size_t> spine;      // locals top to bottom
    std::vector<std::size_t> drawn;      // edge indices already on a page
    std::vector<int> placed_nb(n, 0);

    auto next_vertex = [&]() {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (placed[v]) continue;
            if (best == n) {
                best = v;
                continue;
            }
            auto key = [&](std::size_t x) { return std::make_pair(placed_nb[x], static_cast<int>(inc[x].size())); };
            if (key(v) > key(best)) best = v;
        }
        return best;
    };

    std::vector<std::pair<std::size_t, std::size_t>> ends(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) ends[e] = {local(edges[e].u), local(edges[e].v)};
    std::vector<int> at(n, -1);  // spine index before inserting x
    std::vector<std::pair<std::size_t, std::uint8_t>> chosen;

    for (std::size_t step = 0; step < n; ++step) {
        const std::size_t x = next_vertex();
        long long best_cost = -1;
        std::size_t best_pos = 0;
        std::vector<std::pair<std::size_t, std::uint8_t>> best_pages;
        for (std::size_t k = 0; k < spine.size(); ++k) at[spine[k]] = static_cast<int>(k);
        for (std::size_t p = 0; p <= spine.size(); ++p) {
            const int px = static_cast<int>(p);
            auto pos = [&](std::size_t y) { return y == x ? px : (at[y] < 0 ? -1 : at[y] + (at[y] >= px)); };
            long long cost = 0;
            // Where x itself lands relative to the parent and to left-page edges.
            if (parent_rank[x] >= 0) {
                for (auto y : spine)
                    if (parent_rank[y] >= 0 && ((pos(y) < px) != (parent_rank[y] < parent_rank[x]))) ++cost;
                for (auto e : drawn) {
                    if (out.pages[e] != 0) continue;
                    int a = pos(ends[e].first), b = pos(ends[e].second);
                    if (std::min(a, b) < px && px < std::max(a, b)) ++cost;
                }
            }
            chosen.clear();
            for (auto [y, e] : inc[x]) {
                if (!placed[y]) continue;
                const int py = pos(y);
                long long c[2] = {0, 0};
                for (auto f : drawn)
                    if (alternate(px, py, pos(ends[f].first), pos(ends[f].second))) ++c[out.pages[f]];
                for (auto [f, pg] : chosen)
                    if (alternate(px, py, pos(ends[f].first), pos(ends[f].second))) ++c[pg];
                if (parent)
                    for (std::size_t s = 0; s < n; ++s)
                        if (parent_rank[s] >= 0 && pos(s) >= 0 && std::min(px, py) < pos(s) && pos(s) < std::max(px, py)) ++c[0];
                std::uint8_t pg = c[1] < c[0] ? 1 : 0;
                cost += c[pg];
                chosen.push_back({e, pg});
            }
            if (best_cost < 0 || cost < best_cost) {
                best_cost = cost;
                best_pos = p;
                best_pages = chosen;
            }
        }
        spine.insert(spine.begin() + static_cast<std::ptrdiff_t>(best_pos), x);
        placed[x] = 1;
        for (auto [e, pg] : best_pages) {
            out.pages[e] = pg;
            drawn.push_back(e);
        }
        for (auto [y, e] : inc[x]) ++placed_nb[y];
    }
    for (auto l : spine) out.order.push_back(vertices[l]);
    return out;
}

/// Crossings that change when one bag's drawing changes, everything else
/// fixed.
inline long long bag_local_cost(const Instance& inst, const WitnessDrawing& d, BagIndex i) {
    const auto& ctx = inst.context(i);
    const auto& bg = inst.bag_graph(i);
    const auto& bd = d.per_bag[static_cast<std::size_t>(i)];
    long long c = cr_ee(bg, bd, d.style.variant);
    if (ctx.has_parent()) {
        const auto p = static_cast<std::size_t>(ctx.parent);
        c += edges_spanning(bg, bd, Page::Left, ctx.shared_with_parent) + inversions(d.per_bag[p], bd, ctx.shared_with_parent);
    }
    for (std::size_t j = 0; j < ctx.children.size(); ++j) {
        const auto& cd = d.per_bag[static_cast<std::size_t>(ctx.children[j])];
        c += edges_spanning(bg, bd, Page::Right, ctx.shared_with_child[j]) + inversions(bd, cd, ctx.shared_with_child[j]);
    }
    if (ctx.child_count() == 2)
        c += criss_cross(bd, ctx.shared_with_child[bd.flipped ? 1 : 0], ctx.shared_with_child[bd.flipped ? 0 : 1]);
    return c;
}

namespace detail {

inline void require_l2(const Style& s) {
    if (s.variant != Variant::L2) throw Error(ErrorCode::InvalidArgument, "the heuristics draw two-page book drawings (style l2) only");
}

inline bool best_flag(const Instance& inst, const BagDrawing& bd, BagIndex i) {
    const auto& ctx = inst.context(i);
    if (ctx.child_count() != 2) return false;
    auto plain = criss_cross(bd, ctx.shared_with_child[0], ctx.shared_with_child[1]);
    auto flipped = criss_cross(bd, ctx.shared_with_child[1], ctx.shared_with_child[0]);
    return flipped < plain;
}

}  // namespace detail

/// conGreedy+ on the whole graph, projected into every bag.
inline WitnessDrawing global_heuristic(const Instance& inst) {
    WitnessDrawing d;
    d.style.variant = Variant::L2;
    std::vector<Vertex> all(static_cast<std::size_t>(inst.graph.vertex_count()));
    for (std::size_t v = 0; v < all.size(); ++v) all[v] = static_cast<Vertex>(v);
    const auto& edges = inst.graph.edges();
    auto book = con_greedy_plus(all, edges);
    std::vector<int> rank(all.size());
    for (std::size_t k = 0; k < book.order.size(); ++k) rank[static_cast<std::size_t>(book.order[k])] = static_cast<int>(k);
    for (int i = 0; i < inst.bag_count(); ++i) {
        const auto& bg = inst.bag_graph(i);
        BagDrawing bd;
        bd.bag = i;
        bd.order = bg.vertices;
        std::sort(bd.order.begin(), bd.order.end(), [&](Vertex a, Vertex b) { return rank[static_cast<std::size_t>(a)] < rank[static_cast<std::size_t>(b)]; });
        for (const auto& e : bg.edges) {
            auto it = std::lower_bound(edges.begin(), edges.end(), e);
            bd.pages.push_back(book.pages[static_cast<std::size_t>(it - edges.begin())]);
        }
        d.per_bag.push_back(bd);
    }
    for (auto b : inst.tree.bottom_up) d.per_bag[static_cast<std::size_t>(b)].flipped = detail::best_flag(inst, d.per_bag[static_cast<std::size_t>(b)], b);
    d.crossings = tally(inst, d);
    return d;
}

/// conGreedy+ in every bag separately, top-down, aware of the parent.
inline WitnessDrawing local_heuristic(const Instance& inst) {
    WitnessDrawing d;
    d.style.variant = Variant::L2;
    d.per_bag.resize(static_cast<std::size_t>(inst.bag_count()));
    for (auto b : inst.tree.top_down) {
        const auto& ctx = inst.context(b);
        const auto& bg = inst.bag_graph(b);
        std::optional<ParentContext> pc;
        if (ctx.has_parent()) {
            pc.emplace();
            for (auto v : d.per_bag[static_cast<std::size_t>(ctx.parent)].order)
                if (std::binary_search(ctx.shared_with_parent.begin(), ctx.shared_with_parent.end(), v)) pc->shared_order.push_back(v);
        }
        auto book = con_greedy_plus(bg.vertices, bg.edges, pc);
        auto& bd = d.per_bag[static_cast<std::size_t>(b)];
        bd.bag = b;
        bd.order = book.order;
        bd.pages = book.pages;
    }
    for (auto b : inst.tree.bottom_up) d.per_bag[static_cast<std::size_t>(b)].flipped = detail::best_flag(inst, d.per_bag[static_cast<std::size_t>(b)], b);
    d.crossings = tally(inst, d);
    return d;
}

struct LocalSearchLog {
    std::vector<long long> accepted;  // total after each accepted move
    bool timed_out = false;
};

namespace detail {

enum class MoveKind { VertexSwap, EdgeSwap, EdgeFlip, EmbeddingFlip };

template <class Visit>
bool for_each_move(const BagDrawing& bd, int children, MoveKind kind, Visit&& visit) {
    const auto m = bd.order.size();
    const auto E = bd.pages.size();
    switch (kind) {
        case MoveKind::VertexSwap:
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = a + 1; b < m; ++b) {
                    BagDrawing t = bd;
                    std::swap(t.order[a], t.order[b]);
                    if (visit(t)) return true;
                }
            break;
        case MoveKind::EdgeSwap:
            for (std::size_t a = 0; a < E; ++a)
                for (std::size_t b = a + 1; b < E; ++b) {
                    if (bd.pages[a] == bd.pages[b]) continue;
                    BagDrawing t = bd;
                    std::swap(t.pages[a], t.pages[b]);
                    if (visit(t)) return true;
                }
            break;
        case MoveKind::EdgeFlip:
            for (std::size_t a = 0; a < E; ++a) {
                BagDrawing t = bd;
                t.pages[a] ^= 1u;
                if (visit(t)) return true;
            }
            break;
        case MoveKind::EmbeddingFlip:
            if (children == 2) {
                BagDrawing t = bd;
                t.flipped = !t.flipped;
                if (visit(t)) return true;
            }
            break;
    }
    return false;
}

inline constexpr MoveKind kMoveOrder[] = {MoveKind::VertexSwap, MoveKind::EdgeSwap, MoveKind::EdgeFlip, MoveKind::EmbeddingFlip};

}  // namespace detail

/// Hill climbing with the four move types: bag by bag, bottom-up then
/// top-down, until a full sweep changes nothing.
inline WitnessDrawing local_search(const Instance& inst, WitnessDrawing d, const HeuristicConfig& cfg = {}, LocalSearchLog* log = nullptr) {
    detail::require_l2(d.style);
    const auto start = std::chrono::steady_clock::now();
    const auto limit = std::chrono::duration<double>(cfg.time_limit);
    auto expired = [&] { return std::chrono::steady_clock::now() - start > limit; };
    long long total = tally(inst, d).total;
    bool timed_out = false;

    auto improve_bag = [&](BagIndex i) {
        bool any = false;
        auto& bd = d.per_bag[static_cast<std::size_t>(i)];
        const int children = inst.context(i).child_count();
        while (!timed_out) {
            bool round = false;
            for (auto kind : detail::kMoveOrder) {
                while (!timed_out) {
                    const long long before = bag_local_cost(inst, d, i);
                    BagDrawing saved = bd;
                    long long gain = 0;
                    bool found = detail::for_each_move(saved, children, kind, [&](const BagDrawing& t) {
                        bd = t;
                        long long after = bag_local_cost(inst, d, i);
                        if (after < before) {
                            gain = before - after;
                            return true;
                        }
                        return false;
                    });
                    if (!found) {
                        bd = saved;
                        break;
                    }
                    total -= gain;
                    if (log) log->accepted.push_back(total);
                    round = any = true;
                    if (expired()) timed_out = true;
                }
            }
            if (!round) break;
        }
        return any;
    };

    while (!timed_out) {
        bool improved = false;
        for (auto b : inst.tree.bottom_up) improved |= improve_bag(b);
        for (auto b : inst.tree.top_down) improved |= improve_bag(b);
        if (!improved) break;
        if (expired()) timed_out = true;
    }
    d.crossings = tally(inst, d);
    if (log) log->timed_out = timed_out;
    return d;
}

/// No single move of any of the four types lowers the total.
inline bool is_local_optimum(const Instance& inst, const WitnessDrawing& d) {
    WitnessDrawing w = d;
    for (int i = 0; i < inst.bag_count(); ++i) {
        auto& bd = w.per_bag[static_cast<std::size_t>(i)];
        const BagDrawing saved = bd;
        const long long before = tally(inst, w).total;
        for (auto kind : detail::kMoveOrder) {
            bool better = detail::for_each_move(saved, inst.context(i).child_count(), kind, [&](const BagDrawing& t) {
                bd = t;
                return tally(inst, w).total < before;
            });
            bd = saved;
            if (better) return false;
        }
    }
    return true;
}

inline WitnessDrawing run_heuristic(const Instance& inst, const HeuristicConfig& cfg, LocalSearchLog* log = nullptr) {
    auto d = cfg.variant == HeuristicVariant::Global ? global_heuristic(inst) : local_heuristic(inst);
    if (cfg.local_search) d = local_search(inst, d, cfg, log);
    d.optimal = false;
    return d;
}

}  // namespace witness

#endif
