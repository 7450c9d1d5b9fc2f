#pragma once

// Training objectives evaluated as plain functions of predictions and labels.
// All losses are sums over pixels, not means.

#include "nls/feature.hpp"
#include "nls/field.hpp"

namespace nls {

struct LossParams {
    double alpha = 1.0;  // weight of the edge loss
};

/// -sum_j log P(r_j) over the channel of the true label, clamped like the features.
double region_loss(const ProbabilityStack& prediction, const LabelMap& truth,
                   double clamp_floor = kDefaultClampFloor);

/// Class-balanced sigmoid cross-entropy with beta = |non-edge| / |all|,
/// so the (rare) edge class gets the larger weight.
double edge_loss(const ScalarField& edge_probability, const EdgeLabelMap& truth,
                 double clamp_floor = kDefaultClampFloor);

/// Same as edge_loss with an explicit beta in [0,1].
double edge_loss_with_beta(const ScalarField& edge_probability, const EdgeLabelMap& truth, double beta,
                           double clamp_floor = kDefaultClampFloor);

/// beta = |non-edge| / |all|.
double class_balance_beta(const EdgeLabelMap& truth) noexcept;

/// region_loss + alpha * edge_loss, with the stack's edge channel as the edge prediction.
double combined_loss(const ProbabilityStack& prediction, const LabelMap& region_truth,
                     const EdgeLabelMap& edge_truth, const LossParams& params,
                     double clamp_floor = kDefaultClampFloor);

}  // namespace nls
