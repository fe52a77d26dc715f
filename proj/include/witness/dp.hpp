#ifndef WITNESS_DP_HPP
#define WITNESS_DP_HPP

#include <array>
#include <chrono>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "witness/crossings.hpp"
#include "witness/enumerate.hpp"

namespace witness {

inline constexpr long long kInfinity = std::numeric_limits<long long>::max() / 4;

struct SolveConfig {
    Style style;
    double time_limit = 900.0;  // seconds
    GeometryConfig geometry;
    std::optional<BagIndex> root;
    double state_budget = 2e7;  // table entries
    int threads = 1;
};

struct SolveStats {
    long long dp_cost = 0;  // optimum as seen by the recurrence
    double table_entries = 0;
    bool timed_out = false;
};

template <class F>
void parallel_for(std::size_t n, int threads, F&& body) {
    if (threads <= 1 || n < 64) {
        body(std::size_t{0}, n);
        return;
    }
    const auto t = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex m;
    for (std::size_t k = 0; k < t; ++k) {
        pool.emplace_back([&, k] {
            try {
                body(n * k / t, n * (k + 1) / t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(m);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

namespace detail {

inline long long add_cost(long long a, long long b) { return (a >= kInfinity || b >= kInfinity) ? kInfinity : a + b; }

class DpEngine {
public:
    DpEngine(const Instance& inst, const SolveConfig& cfg) : inst_(inst), cfg_(cfg), style_(cfg.style) {
        cfg_.geometry.check();
        if (style_.forbid_tt && !style_.linear())
            throw Error(ErrorCode::InvalidArgument, "forbidding track-track crossings is defined for book styles only");
        const auto k = static_cast<std::size_t>(inst.bag_count());
        states_.resize(k);
        routes_.resize(k);
        unary_.resize(k);
        F_.resize(k);
        choice_.resize(k);
        processed_.assign(k, false);
        extents_ = subtree_extents(inst.tree, cfg_.geometry);
    }

    WitnessDrawing run(SolveStats* stats) {
        check_budget();
        const auto start = std::chrono::steady_clock::now();
        const auto limit = std::chrono::duration<double>(cfg_.time_limit);
        bool timed_out = false;
        for (auto b : inst_.tree.bottom_up) {
            if (std::chrono::steady_clock::now() - start > limit) {
                timed_out = true;
                break;
            }
            process(b);
        }
        WitnessDrawing d;
        d.style = style_;
        d.per_bag.resize(static_cast<std::size_t>(inst_.bag_count()));
        long long cost = reconstruct(d);
        if (cost >= kInfinity) throw Error(ErrorCode::Infeasible, "no drawing satisfies the style constraints");
        d.crossings = tally(inst_, d, cfg_.geometry);
        d.optimal = !timed_out;
        if (stats) {
            stats->dp_cost = cost;
            stats->timed_out = timed_out;
            stats->table_entries = projected_entries();
        }
        return d;
    }

private:
    const Instance& inst_;
    SolveConfig cfg_;
    Style style_;
    std::vector<std::vector<BagDrawing>> states_;
    std::vector<std::vector<OrbitalRouting>> routes_;
    std::vector<std::vector<long long>> unary_;
    std::vector<std::vector<long long>> F_;
    std::vector<std::vector<std::array<int, 2>>> choice_;
    std::vector<bool> processed_;
    std::vector<double> extents_;

    static std::size_t sz(int i) { return static_cast<std::size_t>(i); }
    const BagContext& ctx(int i) const { return inst_.context(i); }
    bool chain_mode() const { return style_.variant == Variant::C; }

    double projected_entries() const {
        double total = 0;
        for (int i = 0; i < inst_.bag_count(); ++i) {
            double s = bag_space_upper_bound(style_, ctx(i), inst_.bag_graph(i), inst_.w_plus);
            if (chain_mode() && ctx(i).has_parent())
                s *= bag_space_upper_bound(style_, ctx(ctx(i).parent), inst_.bag_graph(ctx(i).parent), inst_.w_plus);
            total += s;
        }
        return total;
    }

    void check_budget() const {
        double p = projected_entries();
        if (p > cfg_.state_budget)
            throw Error(ErrorCode::SearchSpaceTooLarge, "the exact search needs about " + std::to_string(static_cast<long long>(p)) +
                                                            " table entries; use the heuristics instead");
    }

    void ensure_states(int i) {
        if (!states_[sz(i)].empty()) return;
        auto& S = states_[sz(i)];
        enumerate_bag_drawings(style_, ctx(i), inst_.bag_graph(i), inst_.w_plus, cfg_.geometry,
                               [&](const BagDrawing& bd) { S.push_back(bd); });
        if (style_.variant == Variant::O)
            for (const auto& bd : S) routes_[sz(i)].push_back(route_orbital(ctx(i), inst_.bag_graph(i), bd, cfg_.geometry, inst_.w_plus));
        auto& U = unary_[sz(i)];
        U.assign(S.size(), 0);
        parallel_for(S.size(), cfg_.threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t s = lo; s < hi; ++s) U[s] = unary(i, s);
        });
    }

    // Cost terms that depend on one bag's drawing only.
    long long unary(int i, std::size_t s) const {
        const auto& bg = inst_.bag_graph(i);
        const auto& bd = states_[sz(i)][s];
        long long c = cr_ee(bg, bd, style_.variant);
        if (style_.linear()) {
            const auto& cx = ctx(i);
            if (cx.has_parent()) c += edges_spanning(bg, bd, Page::Left, cx.shared_with_parent);
            for (const auto& sh : cx.shared_with_child) c += edges_spanning(bg, bd, Page::Right, sh);
            if (cx.child_count() == 2) {
                const auto& up = cx.shared_with_child[bd.flipped ? 1 : 0];
                const auto& lo = cx.shared_with_child[bd.flipped ? 0 : 1];
                c += criss_cross(bd, up, lo);
            }
        } else if (style_.variant == Variant::O) {
            c += orbital_in_disk_tt(routes_[sz(i)][s]);
        }
        return c;
    }

    Point child_offset(int p, bool flipped, int c) const {
        auto drawn = drawn_children(inst_.tree, p, flipped);
        auto off = child_offsets(inst_.tree, extents_, cfg_.geometry, p, flipped);
        for (std::size_t j = 0; j < drawn.size(); ++j)
            if (drawn[j] == c) return off[j];
        return {};
    }

    // -- pairwise mode (book and orbital styles) ------------------------------

    // What the parent sees of a child state.
    std::vector<int> key_up(int c, std::size_t s) const {
        std::vector<int> key;
        const auto& shared = ctx(c).shared_with_parent;
        if (style_.linear()) {
            for (auto v : states_[sz(c)][s].order)
                if (std::binary_search(shared.begin(), shared.end(), v)) key.push_back(v);
            return key;
        }
        const auto& r = routes_[sz(c)][s];
        for (auto v : shared) {
            const auto* t = r.find(inst_.bag_graph(c).local_index(v), kParentSlot);
            key.push_back(static_cast<int>(std::lround(t->exit_angle * 1e6)));
        }
        return key;
    }

    // What a child sees of its parent's state.
    std::vector<int> key_down(int p, std::size_t s, std::size_t j) const {
        std::vector<int> key;
        const auto& shared = ctx(p).shared_with_child[j];
        const auto& bd = states_[sz(p)][s];
        if (style_.linear()) {
            for (auto v : bd.order)
                if (std::binary_search(shared.begin(), shared.end(), v)) key.push_back(v);
            return key;
        }
        key.push_back(bd.flipped ? 1 : 0);
        const auto& r = routes_[sz(p)][s];
        for (auto v : shared) {
            const auto* t = r.find(inst_.bag_graph(p).local_index(v), static_cast<int>(j) + 1);
            key.push_back(static_cast<int>(std::lround(t->exit_angle * 1e6)));
        }
        return key;
    }

    long long pair_cost(int p, std::size_t sp, std::size_t j, int c, std::size_t sc) const {
        if (style_.linear()) {
            long long inv = inversions(states_[sz(p)][sp], states_[sz(c)][sc], ctx(c).shared_with_parent);
            return style_.forbid_tt && inv > 0 ? kInfinity : inv;
        }
        const auto& bd = states_[sz(p)][sp];
        auto segs = orbital_inter_segments(routes_[sz(p)][sp], Point{}, static_cast<int>(j) + 1, routes_[sz(c)][sc],
                                           child_offset(p, bd.flipped, c), inst_.bag_graph(c), cfg_.geometry);
        return count_within(segs);
    }

    struct ChildTable {
        std::vector<int> parent_key_of_state;  // per parent state
        std::vector<long long> best;           // per parent key
        std::vector<int> arg;                  // child state per parent key
    };

    ChildTable child_table(int p, std::size_t j) {
        const int c = ctx(p).children[j];
        const auto& Sc = states_[sz(c)];
        const auto& Fc = F_[sz(c)];
        // Child states grouped by what the parent sees.
        std::map<std::vector<int>, int> gid;
        std::vector<long long> gbest;
        std::vector<int> garg;
        for (std::size_t s = 0; s < Sc.size(); ++s) {
            auto [it, fresh] = gid.try_emplace(key_up(c, s), static_cast<int>(gbest.size()));
            if (fresh) {
                gbest.push_back(Fc[s]);
                garg.push_back(static_cast<int>(s));
            } else if (Fc[s] < gbest[sz(it->second)]) {
                gbest[sz(it->second)] = Fc[s];
                garg[sz(it->second)] = static_cast<int>(s);
            }
        }
        ChildTable t;
        std::map<std::vector<int>, int> pid;
        std::vector<std::size_t> prep;
        const auto& Sp = states_[sz(p)];
        t.parent_key_of_state.resize(Sp.size());
        for (std::size_t s = 0; s < Sp.size(); ++s) {
            auto [it, fresh] = pid.try_emplace(key_down(p, s, j), static_cast<int>(prep.size()));
            if (fresh) prep.push_back(s);
            t.parent_key_of_state[s] = it->second;
        }
        t.best.assign(prep.size(), kInfinity);
        t.arg.assign(prep.size(), -1);
        parallel_for(prep.size(), cfg_.threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t k = lo; k < hi; ++k)
                for (std::size_t g = 0; g < gbest.size(); ++g) {
                    if (gbest[g] >= kInfinity) continue;
                    long long v = add_cost(gbest[g], pair_cost(p, prep[k], j, c, sz(garg[g])));
                    if (v < t.best[k] || (v == t.best[k] && v < kInfinity && garg[g] < t.arg[k])) {
                        t.best[k] = v;
                        t.arg[k] = garg[g];
                    }
                }
        });
        return t;
    }

    void process_pairwise(int i) {
        const auto& S = states_[sz(i)];
        auto& F = F_[sz(i)];
        auto& ch = choice_[sz(i)];
        F = unary_[sz(i)];
        ch.assign(S.size(), {-1, -1});
        for (std::size_t j = 0; j < ctx(i).children.size(); ++j) {
            auto t = child_table(i, j);
            for (std::size_t s = 0; s < S.size(); ++s) {
                auto k = sz(t.parent_key_of_state[s]);
                F[s] = add_cost(F[s], t.best[k]);
                ch[s][j] = t.arg[k];
            }
        }
    }

    // -- chain mode (circular style) -------------------------------------------
    // F[i][s_i * |S_parent| + s_parent]: subtree of i plus everything i's
    // tracks towards its parent can cross.

    std::vector<OwnedSegment> chords_at(int i, std::size_t s, Point center) const {
        const auto& bd = states_[sz(i)][s];
        return chord_segments(inst_.bag_graph(i), bd, vertex_positions(bd, Variant::C, cfg_.geometry, inst_.w_plus, center));
    }

    std::vector<OwnedSegment> tracks_at(int p, std::size_t sp, Point pc, int c, std::size_t sc, Point cc) const {
        const auto& a = states_[sz(p)][sp];
        const auto& b = states_[sz(c)][sc];
        return straight_tracks(a, vertex_positions(a, Variant::C, cfg_.geometry, inst_.w_plus, pc), b,
                               vertex_positions(b, Variant::C, cfg_.geometry, inst_.w_plus, cc), ctx(c).shared_with_parent);
    }

    long long c_pair(int p, std::size_t sp, int c, std::size_t sc) const {
        Point cc = child_offset(p, states_[sz(p)][sp].flipped, c);
        auto tr = tracks_at(p, sp, Point{}, c, sc, cc);
        return count_within(tr) + count_between(tr, chords_at(p, sp, Point{})) + count_between(tr, chords_at(c, sc, cc));
    }

    long long c_chain(int g, std::size_t sg, int p, std::size_t sp, int c, std::size_t sc) const {
        Point pc = child_offset(g, states_[sz(g)][sg].flipped, p);
        Point cc = pc + child_offset(p, states_[sz(p)][sp].flipped, c);
        auto up = tracks_at(g, sg, Point{}, p, sp, pc);
        auto down = tracks_at(p, sp, pc, c, sc, cc);
        return count_between(up, down) + count_between(up, chords_at(c, sc, cc)) + count_between(down, chords_at(g, sg, Point{}));
    }

    long long c_sibling(int p, std::size_t sp, int x, std::size_t sx, int y, std::size_t sy) const {
        bool f = states_[sz(p)][sp].flipped;
        Point xc = child_offset(p, f, x), yc = child_offset(p, f, y);
        auto tx = tracks_at(p, sp, Point{}, x, sx, xc);
        auto ty = tracks_at(p, sp, Point{}, y, sy, yc);
        return count_between(tx, ty) + count_between(tx, chords_at(y, sy, yc)) + count_between(ty, chords_at(x, sx, xc));
    }

    std::size_t parent_states(int i) const { return ctx(i).has_parent() ? states_[sz(ctx(i).parent)].size() : 1; }

    void process_chain(int i) {
        const auto& cx = ctx(i);
        const int p = cx.parent;
        if (p >= 0) ensure_states(p);
        const std::size_t Si = states_[sz(i)].size();
        const std::size_t P = parent_states(i);
        auto& F = F_[sz(i)];
        auto& ch = choice_[sz(i)];
        F.assign(Si * P, kInfinity);
        ch.assign(Si * P, {-1, -1});
        const auto& kids = cx.children;
        parallel_for(Si, cfg_.threads, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t si = lo; si < hi; ++si) {
                // A[j][sp][sc] = F[child](sc, si) + chain(p, i, child)
                std::vector<std::vector<std::vector<long long>>> A(kids.size());
                for (std::size_t j = 0; j < kids.size(); ++j) {
                    const int c = kids[j];
                    const std::size_t Sc = states_[sz(c)].size();
                    A[j].assign(P, std::vector<long long>(Sc, 0));
                    for (std::size_t sp = 0; sp < P; ++sp)
                        for (std::size_t sc = 0; sc < Sc; ++sc) {
                            long long f = F_[sz(c)][sc * Si + si];
                            A[j][sp][sc] = p >= 0 ? add_cost(f, c_chain(p, sp, i, si, c, sc)) : f;
                        }
                }
                std::vector<std::vector<long long>> sib;
                if (kids.size() == 2) {
                    sib.assign(states_[sz(kids[0])].size(), std::vector<long long>(states_[sz(kids[1])].size()));
                    for (std::size_t sx = 0; sx < sib.size(); ++sx)
                        for (std::size_t sy = 0; sy < sib[sx].size(); ++sy) sib[sx][sy] = c_sibling(i, si, kids[0], sx, kids[1], sy);
                }
                for (std::size_t sp = 0; sp < P; ++sp) {
                    long long base = unary_[sz(i)][si];
                    if (p >= 0) base += c_pair(p, sp, i, si);
                    std::array<int, 2> arg{-1, -1};
                    long long best = base;
                    if (kids.size() == 1) {
                        long long m = kInfinity;
                        for (std::size_t sc = 0; sc < A[0][sp].size(); ++sc)
                            if (A[0][sp][sc] < m) {
                                m = A[0][sp][sc];
                                arg[0] = static_cast<int>(sc);
                            }
                        best = add_cost(base, m);
                    } else if (kids.size() == 2) {
                        long long m = kInfinity;
                        for (std::size_t sx = 0; sx < sib.size(); ++sx)
                            for (std::size_t sy = 0; sy < sib[sx].size(); ++sy) {
                                long long v = add_cost(add_cost(A[0][sp][sx], A[1][sp][sy]), sib[sx][sy]);
                                if (v < m) {
                                    m = v;
                                    arg = {static_cast<int>(sx), static_cast<int>(sy)};
                                }
                            }
                        best = add_cost(base, m);
                    }
                    F[si * P + sp] = best;
                    ch[si * P + sp] = arg;
                }
            }
        });
    }

    void process(int i) {
        ensure_states(i);
        if (chain_mode())
            process_chain(i);
        else
            process_pairwise(i);
        processed_[sz(i)] = true;
    }

    // -- reconstruction ----------------------------------------------------------

    // State of bag i given its parent's chosen state (sp, unused at the root).
    std::size_t pick(int i, std::size_t sp, long long& cost) {
        ensure_states(i);
        const auto& cx = ctx(i);
        const std::size_t Si = states_[sz(i)].size();
        std::size_t best = 0;
        long long bv = kInfinity + 1;
        for (std::size_t s = 0; s < Si; ++s) {
            long long v;
            if (processed_[sz(i)]) {
                if (chain_mode())
                    v = F_[sz(i)][s * parent_states(i) + (cx.has_parent() ? sp : 0)];
                else
                    v = cx.has_parent() ? add_cost(F_[sz(i)][s], pair_cost(cx.parent, sp, sz(ctx(cx.parent).slot_of_child(i) - 1), i, s))
                                        : F_[sz(i)][s];
            } else {
                v = unary_[sz(i)][s];
                if (cx.has_parent())
                    v = add_cost(v, chain_mode() ? c_pair(cx.parent, sp, i, s)
                                                 : pair_cost(cx.parent, sp, sz(ctx(cx.parent).slot_of_child(i) - 1), i, s));
            }
            if (v < bv) {
                bv = v;
                best = s;
            }
        }
        cost = bv;
        return best;
    }

    long long reconstruct(WitnessDrawing& d) {
        std::vector<long long> chosen(sz(inst_.bag_count()), -1);
        long long total = 0;
        bool exact_from_root = processed_[sz(inst_.tree.root)];
        for (auto b : inst_.tree.top_down) {
            const auto& cx = ctx(b);
            if (chosen[sz(b)] < 0) {
                long long c = 0;
                std::size_t sp = cx.has_parent() ? static_cast<std::size_t>(chosen[sz(cx.parent)]) : 0;
                chosen[sz(b)] = static_cast<long long>(pick(b, sp, c));
                if (!cx.has_parent()) total = c;
            }
            auto s = static_cast<std::size_t>(chosen[sz(b)]);
            if (processed_[sz(b)]) {
                std::size_t idx = s;
                if (chain_mode()) idx = s * parent_states(b) + (cx.has_parent() ? static_cast<std::size_t>(chosen[sz(cx.parent)]) : 0);
                for (std::size_t j = 0; j < cx.children.size(); ++j)
                    chosen[sz(cx.children[j])] = choice_[sz(b)][idx][j];
            }
            d.per_bag[sz(b)] = states_[sz(b)][s];
        }
        return exact_from_root ? total : tally(inst_, d, cfg_.geometry).total;
    }
};

}  // namespace detail

/// Crossing-minimal drawing of the decomposition in `cfg.style`.
inline WitnessDrawing solve(const Instance& inst, const SolveConfig& cfg, SolveStats* stats = nullptr) {
    if (cfg.time_limit <= 0) throw Error(ErrorCode::InvalidArgument, "time limit must be positive");
    if (inst.bag_count() == 0) {
        WitnessDrawing d;
        d.style = cfg.style;
        d.optimal = true;
        return d;
    }
    detail::DpEngine engine(inst, cfg);
    return engine.run(stats);
}

inline void require_valid(const Graph& g, const Decomposition& t) {
    auto r = validate(g, t);
    if (!r.ok()) throw Error(ErrorCode::InvalidDecomposition, "input is not a tree decomposition of the graph");
}

inline WitnessDrawing solve_tree(const Graph& g, const Decomposition& t, const SolveConfig& cfg, SolveStats* stats = nullptr) {
    require_valid(g, t);
    return solve(make_instance(g, t, cfg.root), cfg, stats);
}

/// First bag with at most one neighbor.
inline BagIndex path_end(const Decomposition& t) {
    auto adj = t.adjacency();
    for (int b = 0; b < t.bag_count(); ++b)
        if (adj[static_cast<std::size_t>(b)].size() <= 1) return b;
    return 0;
}

/// Left-to-right sweep over a path decomposition, rooted at path_end unless
/// a root is given.
inline WitnessDrawing solve_path(const Graph& g, const Decomposition& t, const SolveConfig& cfg, SolveStats* stats = nullptr) {
    if (t.kind != DecompositionKind::Path) throw Error(ErrorCode::InvalidDecomposition, "decomposition is not a path");
    require_valid(g, t);
    return solve(make_instance(g, t, cfg.root ? *cfg.root : path_end(t)), cfg, stats);
}

/// Exhaustive search over every combination of bag drawings. Test oracle.
inline WitnessDrawing brute_force_optimum(const Instance& inst, const SolveConfig& cfg, double guard = 1e7) {
    const int k = inst.bag_count();
    const auto z = [](auto i) { return static_cast<std::size_t>(i); };
    const bool linear = cfg.style.variant == Variant::L1 || cfg.style.variant == Variant::L2;
    WitnessDrawing best;
    best.style = cfg.style;
    best.crossings.total = kInfinity;
    best.optimal = true;
    if (k == 0) return best;

    // Every crossing term is nonnegative, so the crossings inside each disk
    // of the bags placed so far bound the full tally from below.
    std::vector<std::vector<BagDrawing>> S(z(k));
    std::vector<std::vector<long long>> own(z(k));
    std::vector<std::vector<OrbitalRouting>> routed(z(k));
    for (int i = 0; i < k; ++i) {
        if (bag_space_upper_bound(cfg.style, inst.context(i), inst.bag_graph(i), inst.w_plus) > guard)
            throw Error(ErrorCode::SearchSpaceTooLarge, "exhaustive search space exceeds the guard");
        auto all = collect_bag_drawings(cfg.style, inst.context(i), inst.bag_graph(i), inst.w_plus, cfg.geometry);
        std::vector<OrbitalRouting> routes;
        std::vector<std::pair<long long, std::size_t>> key;
        for (std::size_t s = 0; s < all.size(); ++s) {
            long long c = cr_ee(inst.bag_graph(i), all[s], cfg.style.variant);
            if (cfg.style.variant == Variant::O) {
                routes.push_back(route_orbital(inst.context(i), inst.bag_graph(i), all[s], cfg.geometry, inst.w_plus));
                c += orbital_in_disk_tt(routes.back());
            }
            key.emplace_back(c, s);
        }
        std::stable_sort(key.begin(), key.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto [c, s] : key) {
            S[z(i)].push_back(all[s]);
            own[z(i)].push_back(c);
            if (!routes.empty()) routed[z(i)].push_back(std::move(routes[s]));
        }
    }
    const auto& order = inst.tree.top_down;
    std::vector<long long> rest(z(k) + 1, 0);  // sum of per-bag minima from position p on
    for (int p = k - 1; p >= 0; --p) rest[z(p)] = rest[z(p) + 1] + own[z(order[z(p)])].front();
    std::vector<int> pos(z(k));
    for (int p = 0; p < k; ++p) pos[z(order[z(p)])] = p;

    WitnessDrawing cur;
    cur.style = cfg.style;
    cur.per_bag.resize(z(k));
    std::vector<const OrbitalRouting*> cur_routes(z(k), nullptr);
    // O: a child's center is fixed once its parent is placed, and segments
    // of one parent-child corridor are a subset of all inter-disk segments.
    const auto ext = subtree_extents(inst.tree, cfg.geometry);
    std::vector<Point> centers(z(k));
    auto corridor_tt = [&](BagIndex c) -> long long {
        const auto& cx = inst.context(c);
        if (!cx.has_parent()) return 0;
        const BagIndex p = cx.parent;
        const bool f = cur.per_bag[z(p)].flipped;
        auto drawn = drawn_children(inst.tree, p, f);
        auto off = child_offsets(inst.tree, ext, cfg.geometry, p, f);
        for (std::size_t j = 0; j < drawn.size(); ++j)
            if (drawn[j] == c) centers[z(c)] = centers[z(p)] + off[j];
        return count_within(orbital_inter_segments(*cur_routes[z(p)], centers[z(p)], inst.context(p).slot_of_child(c),
                                                   *cur_routes[z(c)], centers[z(c)], inst.bag_graph(c), cfg.geometry));
    };
    double visited = 0;

    // Tree-edge terms of a linear bag, available once its last child is placed.
    auto linear_terms = [&](BagIndex b) {
        const auto& ctx = inst.context(b);
        std::vector<ChildState> ch;
        for (std::size_t j = 0; j < ctx.children.size(); ++j)
            ch.push_back({&inst.bag_graph(ctx.children[j]), &cur.per_bag[z(ctx.children[j])], &ctx.shared_with_child[j]});
        if (cur.per_bag[z(b)].flipped && ch.size() == 2) std::swap(ch[0], ch[1]);
        return cr_te_tree(inst.bag_graph(b), cur.per_bag[z(b)], ch) + cr_tt_tree(cur.per_bag[z(b)], ch);
    };
    auto completes = [&](BagIndex b) {
        std::vector<BagIndex> done;
        const auto& ctx = inst.context(b);
        if (ctx.children.empty()) done.push_back(b);
        if (ctx.has_parent()) {
            int last = -1;
            for (auto c : inst.context(ctx.parent).children) last = std::max(last, pos[z(c)]);
            if (last == pos[z(b)]) done.push_back(ctx.parent);
        }
        return done;
    };

    auto search = [&](auto&& self, int p, long long partial) -> void {
        if (p == k) {
            auto t = cfg.style.variant == Variant::O ? tally_orbital_routed(inst, cur, cfg.geometry, cur_routes)
                                                     : tally(inst, cur, cfg.geometry);
            if (t.total < best.crossings.total) {
                best.per_bag = cur.per_bag;
                best.crossings = t;
            }
            return;
        }
        const BagIndex b = order[z(p)];
        const auto& ctx = inst.context(b);
        for (std::size_t s = 0; s < S[z(b)].size(); ++s) {
            const long long here = partial + own[z(b)][s];
            if (here + rest[z(p) + 1] >= best.crossings.total) break;  // sorted by own cost
            if (++visited > guard) throw Error(ErrorCode::SearchSpaceTooLarge, "exhaustive search space exceeds the guard");
            cur.per_bag[z(b)] = S[z(b)][s];
            if (!routed[z(b)].empty()) cur_routes[z(b)] = &routed[z(b)][s];
            if (cfg.style.forbid_tt && ctx.has_parent() &&
                inversions(cur.per_bag[z(ctx.parent)], cur.per_bag[z(b)], ctx.shared_with_parent) > 0)
                continue;
            long long next = here;
            if (linear)
                for (auto d : completes(b)) next += linear_terms(d);
            if (cfg.style.variant == Variant::O) next += corridor_tt(b);
            if (next + rest[z(p) + 1] >= best.crossings.total) continue;
            self(self, p + 1, next);
        }
    };
    search(search, 0, 0);
    if (best.per_bag.empty()) throw Error(ErrorCode::Infeasible, "no drawing satisfies the style constraints");
    return best;
}

}  // namespace witness

#endif
