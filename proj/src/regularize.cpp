#include "nls/regularize.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nls/errors.hpp"

namespace nls {

Smoothing::Smoothing(double epsilon) : epsilon_(epsilon) {
    require(std::isfinite(epsilon) && epsilon > 0.0, "smoothing epsilon must be positive");
}

Levels::Levels(std::vector<double> values) : values_(std::move(values)) {
    require(!values_.empty(), "at least one level is required (n >= 2)");
    for (double v : values_) require(std::isfinite(v), "levels must be finite");
    for (std::size_t i = 1; i < values_.size(); ++i)
        require(values_[i - 1] < values_[i], "levels must be strictly increasing");
}

double heaviside_smooth(double z, const Smoothing& s) noexcept {
    return 0.5 * (1.0 + (2.0 / std::numbers::pi) * std::atan(z / s.epsilon()));
}

double dirac_smooth(double z, const Smoothing& s) noexcept {
    const double e = s.epsilon();
    return e / (std::numbers::pi * (e * e + z * z));
}

namespace {

void check_region(int region, const Levels& levels) {
    require(region >= 1 && region <= levels.region_count(),
            "region index " + std::to_string(region) + " outside {1.." +
                std::to_string(levels.region_count()) + "}");
}

}  // namespace

double characteristic(double phi, int region, const Levels& levels, const Smoothing& s) {
    check_region(region, levels);
    const int n = levels.region_count();
    if (region == 1) return heaviside_smooth(levels[0] - phi, s);
    if (region == n) return heaviside_smooth(phi - levels[n - 2], s);
    return heaviside_smooth(phi - levels[region - 2], s) - heaviside_smooth(phi - levels[region - 1], s);
}

double characteristic_derivative(double phi, int region, const Levels& levels, const Smoothing& s) {
    check_region(region, levels);
    const int n = levels.region_count();
    if (region == 1) return -dirac_smooth(levels[0] - phi, s);
    if (region == n) return dirac_smooth(phi - levels[n - 2], s);
    return dirac_smooth(phi - levels[region - 2], s) - dirac_smooth(phi - levels[region - 1], s);
}

void characteristics(double phi, const Levels& levels, const Smoothing& s, std::span<double> out) {
    const std::size_t n = static_cast<std::size_t>(levels.region_count());
    require(out.size() == n, "membership buffer must hold one value per region");
    // H(c - phi) == 1 - H(phi - c) bit for bit: atan is odd and negation is exact.
    double below = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double t = (2.0 / std::numbers::pi) * std::atan((phi - levels[k]) / s.epsilon());
        const double above = 0.5 * (1.0 + t);
        out[k] = k == 0 ? 0.5 * (1.0 - t) : below - above;
        below = above;
    }
    out[n - 1] = below;
}

void characteristic_derivatives(double phi, const Levels& levels, const Smoothing& s, std::span<double> out) {
    const std::size_t n = static_cast<std::size_t>(levels.region_count());
    require(out.size() == n, "derivative buffer must hold one value per region");
    double previous = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double d = dirac_smooth(phi - levels[k], s);
        out[k] = k == 0 ? -d : previous - d;
        previous = d;
    }
    out[n - 1] = previous;
}

}  // namespace nls
