#pragma once

// Region/edge probability maps, the features derived from them, and a
// synthetic short-axis phantom that stands in for network predictions.
//
// Channel convention (1-based): 1 = cavities, 2 = myocardium, 3 = background.

#include <cstdint>
#include <vector>

#include "nls/field.hpp"

namespace nls {

inline constexpr int kCavityChannel = 1;
inline constexpr int kMyocardiumChannel = 2;
inline constexpr int kBackgroundChannel = 3;

inline constexpr double kDefaultClampFloor = 1e-6;

/// n region-probability channels on the simplex plus one edge-probability channel.
class ProbabilityStack {
public:
    static constexpr double kSimplexTolerance = 1e-6;

    ProbabilityStack(std::vector<ScalarField> regions, ScalarField edge);

    const GridShape& shape() const noexcept { return edge_.shape(); }
    int region_count() const noexcept { return static_cast<int>(regions_.size()); }

    /// 1-based region channel.
    const ScalarField& region(int index) const;
    const std::vector<ScalarField>& regions() const noexcept { return regions_; }
    const ScalarField& edge() const noexcept { return edge_; }

    /// Reorders region channels: channel k of the result is channel order[k-1] of this stack.
    ProbabilityStack permuted(const std::vector<int>& order) const;

    friend bool operator==(const ProbabilityStack&, const ProbabilityStack&) = default;

private:
    std::vector<ScalarField> regions_;
    ScalarField edge_;
};

struct FeatureSet {
    std::vector<ScalarField> region_features;  // f_i = -log P_Ri, i = 1..n
    ScalarField edge_feature;                  // g = P_E
    double clamp_floor = kDefaultClampFloor;

    const GridShape& shape() const noexcept { return edge_feature.shape(); }
    int region_count() const noexcept { return static_cast<int>(region_features.size()); }
};

/// -log(max(p, floor)); shared by the feature and loss code.
double clamped_neg_log(double probability, double clamp_floor) noexcept;

FeatureSet features_from_probabilities(const ProbabilityStack& stack, double clamp_floor = kDefaultClampFloor);

/// Per-pixel argmax over region channels; ties go to the lowest index.
LabelMap argmax_labels(const ProbabilityStack& stack);

/// Pixels having a 4-neighbour with a different label.
EdgeLabelMap derive_edge_labels(const LabelMap& truth);

struct Ellipse {
    double center_row;
    double center_col;
    double semi_row;
    double semi_col;
};

struct PhantomSpec {
    GridShape shape{160, 160};
    Ellipse lv{82.0, 94.0, 20.0, 18.0};
    Ellipse rv{80.0, 62.0, 30.0, 24.0};
    /// Flattening of the LV on the septal side, as a fraction of its column semi-axis.
    double septal_flattening = 0.25;
    double myocardium_thickness = 7.0;
    double blur_sigma = 2.0;
    /// Fraction of pixels whose label is replaced by a different random label.
    double flip_rate = 0.05;
    std::uint64_t seed = 42;
    /// Uniform perturbation (pixels) applied to ellipse centers and semi-axes, drawn from the seed.
    double geometry_jitter = 0.0;

    /// Default geometry scaled from the 160x160 layout to `shape`.
    static PhantomSpec for_shape(GridShape shape);
};

struct Phantom {
    LabelMap labels;         // 1 cavities, 2 myocardium, 3 background
    EdgeLabelMap edges;
    ProbabilityStack stack;  // noisy, blurred one-hot labels
};

Phantom generate_phantom(const PhantomSpec& spec);

/// Truncated (radius ceil(3 sigma)) normalized Gaussian, replicated borders. sigma 0 returns the input.
ScalarField gaussian_blur(const ScalarField& field, double sigma);

}  // namespace nls
