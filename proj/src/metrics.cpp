#include "nls/metrics.hpp"

#include <algorithm>

#include "nls/errors.hpp"

namespace nls {

LabelMap label_from_phi(const ScalarField& phi, const Levels& levels) {
    const auto c = levels.values();
    std::vector<int> labels(phi.shape().size());
    const auto v = phi.values();
    for (std::size_t p = 0; p < v.size(); ++p) {
        // Number of levels <= phi, plus one.
        labels[p] = static_cast<int>(std::upper_bound(c.begin(), c.end(), v[p]) - c.begin()) + 1;
    }
    return LabelMap(phi.shape(), levels.region_count(), std::move(labels));
}

double dice(const LabelMap& a, const LabelMap& b, int region) {
    require(a.shape() == b.shape(), "dice: shape mismatch");
    require(a.region_count() == b.region_count(), "dice: region count mismatch");
    require(region >= 1 && region <= a.region_count(), "dice: region out of range");
    std::size_t size_a = 0;
    std::size_t size_b = 0;
    std::size_t both = 0;
    const auto la = a.labels();
    const auto lb = b.labels();
    for (std::size_t p = 0; p < la.size(); ++p) {
        const bool in_a = la[p] == region;
        const bool in_b = lb[p] == region;
        size_a += in_a;
        size_b += in_b;
        both += in_a && in_b;
    }
    if (size_a + size_b == 0) return 1.0;
    return 2.0 * static_cast<double>(both) / static_cast<double>(size_a + size_b);
}

DiceReport dice_report(const LabelMap& prediction, const LabelMap& truth) {
    DiceReport report;
    for (int r = 1; r <= truth.region_count(); ++r) report.per_region[r] = dice(prediction, truth, r);
    report.cavities = report.per_region.at(1);
    report.myocardium = report.per_region.at(2);
    return report;
}

}  // namespace nls
