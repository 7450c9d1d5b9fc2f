#include "nls/pipeline.hpp"

#include "nls/metrics.hpp"
#include "nls/sdf.hpp"

namespace nls {

SegmentResult segment(const ProbabilityStack& stack, const SegmentOptions& options) {
    options.solver.validate();
    const FeatureSet features = features_from_probabilities(stack, options.clamp_floor);
    ScalarField phi0 = initialize_phi(stack, options.init_channel, options.threshold);
    SolveReport report = evolve(phi0, features, options.solver);
    LabelMap labels = label_from_phi(report.final_phi, options.solver.levels);
    return SegmentResult{std::move(phi0), std::move(report), std::move(labels)};
}

}  // namespace nls
