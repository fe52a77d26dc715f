#ifndef WITNESS_ENUMERATE_HPP
#define WITNESS_ENUMERATE_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>
#include <vector>

#include "witness/orbital.hpp"
#include "witness/style.hpp"

namespace witness {

/// Size of the drawing space of one bag before the orbit-sharing filter.
inline double bag_space_upper_bound(const Style& style, const BagContext& ctx, const BagGraph& bg, int w_plus) {
    double s = std::tgamma(static_cast<double>(bg.vertices.size()) + 1.0);
    const double e = static_cast<double>(bg.edges.size());
    if (style.variant == Variant::L2) s *= std::pow(2.0, e);
    if (style.variant == Variant::L1 && e > 0) s *= 2.0;
    if (style.variant == Variant::O) {
        for (auto mask : ctx.track_mask) {
            if (!mask) continue;
            s *= static_cast<double>(w_plus);
            s *= std::pow(2.0, static_cast<double>(std::popcount(static_cast<unsigned>(mask))));
        }
    }
    if (ctx.child_count() == 2) s *= 2.0;
    return s;
}

/// Visits every combinatorial drawing of a bag exactly once, in canonical
/// (lexicographic) order. For the orbital style only drawings satisfying
/// the orbit-sharing constraint are produced.
template <class Visitor>
void enumerate_bag_drawings(const Style& style, const BagContext& ctx, const BagGraph& bg, int w_plus,
                            const GeometryConfig& cfg, Visitor&& visit) {
    BagDrawing bd;
    bd.bag = ctx.bag;
    bd.order = bg.vertices;
    const std::size_t E = bg.edges.size();
    const std::size_t m = bg.vertices.size();

    std::vector<std::vector<std::uint8_t>> page_options;
    if (style.variant == Variant::L2) {
        for (std::size_t mask = 0; mask < (std::size_t{1} << E); ++mask) {
            std::vector<std::uint8_t> p(E);
            for (std::size_t j = 0; j < E; ++j) p[j] = static_cast<std::uint8_t>((mask >> (E - 1 - j)) & 1u);
            page_options.push_back(std::move(p));
        }
    } else if (style.variant == Variant::L1) {
        page_options.emplace_back(E, std::uint8_t{0});
        if (E > 0) page_options.emplace_back(E, std::uint8_t{1});
    } else {
        page_options.emplace_back();
    }

    std::vector<std::size_t> tracked;                       // locals with tracks
    std::vector<std::size_t> direction_slots;               // local * 3 + slot
    if (style.variant == Variant::O) {
        for (std::size_t l = 0; l < m; ++l) {
            if (ctx.track_mask[l]) tracked.push_back(l);
            for (int s = 0; s < 3; ++s)
                if (ctx.track_mask[l] & (1u << s)) direction_slots.push_back(l * 3 + static_cast<std::size_t>(s));
        }
    }
    const int flags = ctx.child_count() == 2 ? 2 : 1;

    do {
        for (const auto& pages : page_options) {
            bd.pages = pages;
            if (style.variant != Variant::O) {
                for (int f = 0; f < flags; ++f) {
                    bd.flipped = f == 1;
                    visit(static_cast<const BagDrawing&>(bd));
                }
                continue;
            }
            // Orbit odometer, first tracked vertex most significant.
            std::vector<int> orbit_digits(tracked.size(), 1);
            while (true) {
                bd.orbits.assign(m, 1);
                for (std::size_t j = 0; j < tracked.size(); ++j) bd.orbits[tracked[j]] = orbit_digits[j];
                for (std::size_t dmask = 0; dmask < (std::size_t{1} << direction_slots.size()); ++dmask) {
                    bd.directions.assign(m * 3, 0);
                    const std::size_t D = direction_slots.size();
                    for (std::size_t j = 0; j < D; ++j)
                        bd.directions[direction_slots[j]] = static_cast<std::uint8_t>((dmask >> (D - 1 - j)) & 1u);
                    for (int f = 0; f < flags; ++f) {
                        bd.flipped = f == 1;
                        if (route_orbital(ctx, bg, bd, cfg, w_plus).valid) visit(static_cast<const BagDrawing&>(bd));
                    }
                }
                std::size_t j = tracked.size();
                while (j > 0 && orbit_digits[j - 1] == w_plus) orbit_digits[--j] = 1;
                if (j == 0) break;
                ++orbit_digits[j - 1];
            }
        }
    } while (std::next_permutation(bd.order.begin(), bd.order.end()));
}

template <class... Args>
std::vector<BagDrawing> collect_bag_drawings(Args&&... args) {
    std::vector<BagDrawing> out;
    enumerate_bag_drawings(std::forward<Args>(args)..., [&](const BagDrawing& bd) { out.push_back(bd); });
    return out;
}

}  // namespace witness

#endif
