#include "nls/loss.hpp"

#include <cmath>

#include "nls/errors.hpp"

namespace nls {

double region_loss(const ProbabilityStack& prediction, const LabelMap& truth, double clamp_floor) {
    require(prediction.shape() == truth.shape(), "region loss: shape mismatch");
    require(prediction.region_count() == truth.region_count(), "region loss: region count mismatch");
    double total = 0.0;
    const auto labels = truth.labels();
    for (std::size_t p = 0; p < labels.size(); ++p)
        total += clamped_neg_log(prediction.region(labels[p]).values()[p], clamp_floor);
    return total;
}

double class_balance_beta(const EdgeLabelMap& truth) noexcept {
    const double all = static_cast<double>(truth.shape().size());
    return (all - static_cast<double>(truth.edge_count())) / all;
}

double edge_loss_with_beta(const ScalarField& edge_probability, const EdgeLabelMap& truth, double beta,
                           double clamp_floor) {
    require(edge_probability.shape() == truth.shape(), "edge loss: shape mismatch");
    require(beta >= 0.0 && beta <= 1.0, "edge loss: beta must lie in [0,1]");
    double edge_sum = 0.0;
    double non_edge_sum = 0.0;
    const auto probs = edge_probability.values();
    const auto labels = truth.labels();
    for (std::size_t p = 0; p < probs.size(); ++p) {
        require(probs[p] >= 0.0 && probs[p] <= 1.0, "edge loss: probability outside [0,1]");
        if (labels[p]) edge_sum += clamped_neg_log(probs[p], clamp_floor);
        else non_edge_sum += clamped_neg_log(1.0 - probs[p], clamp_floor);
    }
    return beta * edge_sum + (1.0 - beta) * non_edge_sum;
}

double edge_loss(const ScalarField& edge_probability, const EdgeLabelMap& truth, double clamp_floor) {
    return edge_loss_with_beta(edge_probability, truth, class_balance_beta(truth), clamp_floor);
}

double combined_loss(const ProbabilityStack& prediction, const LabelMap& region_truth,
                     const EdgeLabelMap& edge_truth, const LossParams& params, double clamp_floor) {
    require(params.alpha >= 0.0, "alpha must be non-negative");
    return region_loss(prediction, region_truth, clamp_floor) +
           params.alpha * edge_loss(prediction.edge(), edge_truth, clamp_floor);
}

}  // namespace nls
