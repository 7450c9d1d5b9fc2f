#include "nls/feature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nls/errors.hpp"

namespace nls {

ProbabilityStack::ProbabilityStack(std::vector<ScalarField> regions, ScalarField edge)
    : regions_(std::move(regions)), edge_(std::move(edge)) {
    require(regions_.size() >= 2, "probability stack needs at least two region channels");
    const GridShape s = edge_.shape();
    for (const auto& ch : regions_) require(ch.shape() == s, "probability channel shapes differ");
    for (std::size_t p = 0; p < s.size(); ++p) {
        double sum = 0.0;
        for (const auto& ch : regions_) {
            const double v = ch.values()[p];
            require(v >= 0.0 && v <= 1.0, "region probability outside [0,1] at pixel " + std::to_string(p));
            sum += v;
        }
        require(std::abs(sum - 1.0) <= kSimplexTolerance,
                "region probabilities do not sum to 1 at pixel " + std::to_string(p));
        const double e = edge_.values()[p];
        require(e >= 0.0 && e <= 1.0, "edge probability outside [0,1] at pixel " + std::to_string(p));
    }
}

const ScalarField& ProbabilityStack::region(int index) const {
    require(index >= 1 && index <= region_count(), "region channel out of range: " + std::to_string(index));
    return regions_[static_cast<std::size_t>(index - 1)];
}

ProbabilityStack ProbabilityStack::permuted(const std::vector<int>& order) const {
    require(order.size() == regions_.size(), "channel order must list every region channel once");
    std::vector<bool> seen(regions_.size(), false);
    std::vector<ScalarField> out;
    out.reserve(regions_.size());
    for (int k : order) {
        require(k >= 1 && k <= region_count(), "channel order entry out of range: " + std::to_string(k));
        require(!seen[static_cast<std::size_t>(k - 1)], "channel order repeats channel " + std::to_string(k));
        seen[static_cast<std::size_t>(k - 1)] = true;
        out.push_back(regions_[static_cast<std::size_t>(k - 1)]);
    }
    return ProbabilityStack(std::move(out), edge_);
}

double clamped_neg_log(double probability, double clamp_floor) noexcept {
    return -std::log(std::max(probability, clamp_floor));
}

FeatureSet features_from_probabilities(const ProbabilityStack& stack, double clamp_floor) {
    require(clamp_floor > 0.0 && clamp_floor < 1.0, "clamp floor must lie in (0,1)");
    FeatureSet out{{}, stack.edge(), clamp_floor};
    out.region_features.reserve(stack.regions().size());
    for (const auto& channel : stack.regions()) {
        ScalarField f(channel.shape());
        auto src = channel.values();
        auto dst = f.values();
        for (std::size_t p = 0; p < src.size(); ++p) dst[p] = clamped_neg_log(src[p], clamp_floor);
        out.region_features.push_back(std::move(f));
    }
    return out;
}

LabelMap argmax_labels(const ProbabilityStack& stack) {
    const GridShape s = stack.shape();
    std::vector<int> labels(s.size(), 1);
    for (std::size_t p = 0; p < s.size(); ++p) {
        double best = stack.regions()[0].values()[p];
        for (int k = 1; k < stack.region_count(); ++k) {
            const double v = stack.regions()[static_cast<std::size_t>(k)].values()[p];
            if (v > best) {
                best = v;
                labels[p] = k + 1;
            }
        }
    }
    return LabelMap(s, stack.region_count(), std::move(labels));
}

EdgeLabelMap derive_edge_labels(const LabelMap& truth) {
    const GridShape s = truth.shape();
    EdgeLabelMap edges(s);
    for (std::size_t r = 0; r < s.height; ++r) {
        for (std::size_t c = 0; c < s.width; ++c) {
            const int l = truth(r, c);
            const bool edge = (r > 0 && truth(r - 1, c) != l) || (r + 1 < s.height && truth(r + 1, c) != l) ||
                              (c > 0 && truth(r, c - 1) != l) || (c + 1 < s.width && truth(r, c + 1) != l);
            edges.set(r, c, edge);
        }
    }
    return edges;
}

ScalarField gaussian_blur(const ScalarField& field, double sigma) {
    require(std::isfinite(sigma) && sigma >= 0.0, "blur sigma must be non-negative");
    if (sigma == 0.0) return field;

    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double total = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double w = std::exp(-0.5 * (k * k) / (sigma * sigma));
        kernel[static_cast<std::size_t>(k + radius)] = w;
        total += w;
    }
    for (double& w : kernel) w /= total;

    const GridShape s = field.shape();
    const auto clamp_index = [](long i, std::size_t n) {
        return static_cast<std::size_t>(std::clamp<long>(i, 0, static_cast<long>(n) - 1));
    };

    ScalarField tmp(s);
    for (std::size_t r = 0; r < s.height; ++r) {
        for (std::size_t c = 0; c < s.width; ++c) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += kernel[static_cast<std::size_t>(k + radius)] *
                       field(r, clamp_index(static_cast<long>(c) + k, s.width));
            tmp(r, c) = acc;
        }
    }
    ScalarField out(s);
    for (std::size_t r = 0; r < s.height; ++r) {
        for (std::size_t c = 0; c < s.width; ++c) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k)
                acc += kernel[static_cast<std::size_t>(k + radius)] *
                       tmp(clamp_index(static_cast<long>(r) + k, s.height), c);
            out(r, c) = acc;
        }
    }
    return out;
}

}  // namespace nls
