#pragma once

#include <map>

#include "nls/field.hpp"
#include "nls/regularize.hpp"

namespace nls {

/// Hard labeling: 1 if phi < c_1, i if c_{i-1} <= phi < c_i, n if phi >= c_{n-1}.
LabelMap label_from_phi(const ScalarField& phi, const Levels& levels);

/// 2|A and B| / (|A| + |B|) for the masks of `region`; 1.0 when both are empty.
double dice(const LabelMap& a, const LabelMap& b, int region);

struct DiceReport {
    std::map<int, double> per_region;
    double cavities = 0.0;    // region 1
    double myocardium = 0.0;  // region 2
};

DiceReport dice_report(const LabelMap& prediction, const LabelMap& truth);

}  // namespace nls
