#pragma once

// End-to-end segmentation: probabilities -> features -> phi0 -> evolution -> labels.

#include "nls/feature.hpp"
#include "nls/solver.hpp"

namespace nls {

struct SegmentOptions {
    SolverParams solver;
    int init_channel = kCavityChannel;
    double threshold = 0.5;
    double clamp_floor = kDefaultClampFloor;
};

struct SegmentResult {
    ScalarField initial_phi;
    SolveReport report;
    LabelMap labels;
};

SegmentResult segment(const ProbabilityStack& stack, const SegmentOptions& options);

}  // namespace nls
