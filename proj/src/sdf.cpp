#include "nls/sdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nls/errors.hpp"

namespace nls {

BinaryMask::BinaryMask(GridShape shape) : shape_(shape), inside_(shape.size(), false) {
    require_nonempty(shape);
}

BinaryMask::BinaryMask(GridShape shape, std::vector<bool> inside) : shape_(shape), inside_(std::move(inside)) {
    require_nonempty(shape);
    require(inside_.size() == shape.size(), "mask size does not match shape");
}

std::size_t BinaryMask::inside_count() const noexcept {
    return static_cast<std::size_t>(std::count(inside_.begin(), inside_.end(), true));
}

BinaryMask BinaryMask::complement() const {
    std::vector<bool> flipped(inside_.size());
    for (std::size_t p = 0; p < inside_.size(); ++p) flipped[p] = !inside_[p];
    return BinaryMask(shape_, std::move(flipped));
}

namespace {

constexpr double kFar = std::numeric_limits<double>::max();

// Godunov update for |grad u| = 1 with unit spacing.
double solve_local(double a, double b) {
    if (a > b) std::swap(a, b);
    if (b == kFar || b - a >= 1.0) return a + 1.0;
    return 0.5 * (a + b + std::sqrt(2.0 - (a - b) * (a - b)));
}

}  // namespace

ScalarField fast_sweep_sdf(const BinaryMask& mask, const SweepOptions& options) {
    const GridShape s = mask.shape();
    require_stencil_shape(s);
    const std::size_t inside = mask.inside_count();
    require(inside > 0 && inside < s.size(), "signed distance needs both inside and outside pixels");
    require(options.max_passes >= 1, "at least one sweep pass is required");
    require(options.exact_band >= 0, "exact band radius must be non-negative");

    const std::size_t h = s.height;
    const std::size_t w = s.width;
    std::vector<double> dist(s.size(), kFar);
    std::vector<bool> fixed(s.size(), false);
    const long band = std::max(options.exact_band, 1);
    for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < w; ++c) {
            const bool m = mask(r, c);
            long nearest_sq = band * band + 1;
            for (long dr = -band; dr <= band; ++dr) {
                const long rr = static_cast<long>(r) + dr;
                if (rr < 0 || rr >= static_cast<long>(h)) continue;
                for (long dc = -band; dc <= band; ++dc) {
                    const long cc = static_cast<long>(c) + dc;
                    if (cc < 0 || cc >= static_cast<long>(w)) continue;
                    if (mask(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc)) != m)
                        nearest_sq = std::min(nearest_sq, dr * dr + dc * dc);
                }
            }
            // nearest_sq == 1 exactly for interface pixels
            if (nearest_sq <= band * band && (nearest_sq == 1 || options.exact_band > 0)) {
                dist[s.index(r, c)] = options.interface_distance + std::sqrt(static_cast<double>(nearest_sq)) - 1.0;
                fixed[s.index(r, c)] = true;
            }
        }
    }

    auto relax = [&](std::size_t r, std::size_t c) -> double {
        const std::size_t p = s.index(r, c);
        if (fixed[p]) return 0.0;
        const double up = r > 0 ? dist[p - w] : kFar;
        const double down = r + 1 < h ? dist[p + w] : kFar;
        const double left = c > 0 ? dist[p - 1] : kFar;
        const double right = c + 1 < w ? dist[p + 1] : kFar;
        const double a = std::min(up, down);
        const double b = std::min(left, right);
        if (a == kFar && b == kFar) return 0.0;
        const double candidate = solve_local(a, b);
        if (candidate < dist[p]) {
            const double change = dist[p] == kFar ? kFar : dist[p] - candidate;
            dist[p] = candidate;
            return change;
        }
        return 0.0;
    };

    for (int pass = 0; pass < options.max_passes; ++pass) {
        double max_change = 0.0;
        for (int ordering = 0; ordering < 4; ++ordering) {
            const bool rows_down = ordering == 0 || ordering == 1;
            const bool cols_right = ordering == 0 || ordering == 2;
            for (std::size_t i = 0; i < h; ++i) {
                const std::size_t r = rows_down ? i : h - 1 - i;
                for (std::size_t j = 0; j < w; ++j) {
                    const std::size_t c = cols_right ? j : w - 1 - j;
                    max_change = std::max(max_change, relax(r, c));
                }
            }
        }
        if (max_change < options.tolerance) break;
    }

    std::vector<double> phi(s.size());
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) {
            const std::size_t p = s.index(r, c);
            phi[p] = mask(r, c) ? -dist[p] : dist[p];
        }
    return ScalarField(s, std::move(phi));
}

ScalarField initialize_phi(const ProbabilityStack& stack, int init_channel, double threshold) {
    require(init_channel >= 1 && init_channel <= stack.region_count(), "initialization channel out of range");
    require(threshold > 0.0 && threshold < 1.0, "initialization threshold must lie in (0,1)");
    const ScalarField& channel = stack.region(init_channel);
    BinaryMask mask(stack.shape());
    for (std::size_t r = 0; r < mask.shape().height; ++r)
        for (std::size_t c = 0; c < mask.shape().width; ++c) mask.set(r, c, channel(r, c) > threshold);

    const std::size_t inside = mask.inside_count();
    if (inside == 0 || inside == stack.shape().size()) {
        std::ostringstream msg;
        msg << "level set initialization failed: thresholding channel " << init_channel << " at " << threshold
            << " gives an " << (inside == 0 ? "empty" : "all-pixel") << " mask; adjust the threshold";
        throw InitializationError(msg.str());
    }
    return fast_sweep_sdf(mask);
}

}  // namespace nls
