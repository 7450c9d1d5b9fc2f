#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "nls/errors.hpp"
#include "nls/feature.hpp"

namespace nls {

namespace {

constexpr int kPhantomRegions = 3;
constexpr double kMargin = 2.0;

// mt19937_64's output sequence is fixed by the standard; the std
// distributions are not, so the conversions below are done by hand.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double symmetric(double half_width) { return half_width * (2.0 * uniform() - 1.0); }
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

using Mask = std::vector<bool>;

bool inside(const Ellipse& e, double row, double col, double left_squeeze) {
    const double dr = (row - e.center_row) / e.semi_row;
    double dc = (col - e.center_col) / e.semi_col;
    if (dc < 0.0) dc *= 1.0 + left_squeeze;
    return dr * dr + dc * dc <= 1.0;
}

Mask rasterize(const GridShape& s, const Ellipse& e, double left_squeeze) {
    Mask m(s.size(), false);
    for (std::size_t r = 0; r < s.height; ++r)
        for (std::size_t c = 0; c < s.width; ++c)
            m[s.index(r, c)] = inside(e, static_cast<double>(r), static_cast<double>(c), left_squeeze);
    return m;
}

// Pixels within Euclidean distance `radius` of any mask pixel.
Mask dilate(const GridShape& s, const Mask& m, double radius) {
    const int reach = static_cast<int>(std::floor(radius));
    std::vector<std::pair<int, int>> offsets;
    for (int dr = -reach; dr <= reach; ++dr)
        for (int dc = -reach; dc <= reach; ++dc)
            if (dr * dr + dc * dc <= radius * radius) offsets.emplace_back(dr, dc);

    Mask out(s.size(), false);
    const long h = static_cast<long>(s.height);
    const long w = static_cast<long>(s.width);
    for (long r = 0; r < h; ++r) {
        for (long c = 0; c < w; ++c) {
            if (!m[s.index(static_cast<std::size_t>(r), static_cast<std::size_t>(c))]) continue;
            for (auto [dr, dc] : offsets) {
                const long rr = r + dr;
                const long cc = c + dc;
                if (rr >= 0 && rr < h && cc >= 0 && cc < w)
                    out[s.index(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc))] = true;
            }
        }
    }
    return out;
}

void validate(const PhantomSpec& spec) {
    const GridShape& s = spec.shape;
    require_stencil_shape(s);
    require(spec.myocardium_thickness >= 2.0, "myocardium thickness must be at least 2 pixels");
    require(spec.blur_sigma >= 0.0 && std::isfinite(spec.blur_sigma), "blur sigma must be non-negative");
    require(spec.flip_rate >= 0.0 && spec.flip_rate < 1.0, "label flip rate must lie in [0,1)");
    require(spec.septal_flattening >= 0.0 && spec.septal_flattening < 1.0, "septal flattening must lie in [0,1)");
    require(spec.geometry_jitter >= 0.0, "geometry jitter must be non-negative");
    for (const Ellipse* e : {&spec.lv, &spec.rv})
        require(e->semi_row >= 1.0 && e->semi_col >= 1.0, "ellipse semi-axes must be at least 1 pixel");
}

void require_fits(const PhantomSpec& spec, const Ellipse& lv, const Ellipse& rv) {
    const double t = spec.myocardium_thickness;
    const double top = std::min(lv.center_row - lv.semi_row, rv.center_row - rv.semi_row) - t;
    const double bottom = std::max(lv.center_row + lv.semi_row, rv.center_row + rv.semi_row) + t;
    const double left =
        std::min(lv.center_col - lv.semi_col / (1.0 + spec.septal_flattening), rv.center_col - rv.semi_col) - t;
    const double right = std::max(lv.center_col + lv.semi_col, rv.center_col + rv.semi_col) + t;
    const double max_row = static_cast<double>(spec.shape.height) - 1.0 - kMargin;
    const double max_col = static_cast<double>(spec.shape.width) - 1.0 - kMargin;
    require(top >= kMargin && left >= kMargin && bottom <= max_row && right <= max_col,
            "phantom geometry does not fit inside the grid with a 2-pixel margin");
}

}  // namespace

PhantomSpec PhantomSpec::for_shape(GridShape shape) {
    PhantomSpec spec;
    const double sr = static_cast<double>(shape.height) / 160.0;
    const double sc = static_cast<double>(shape.width) / 160.0;
    const double s = std::min(sr, sc);
    for (Ellipse* e : {&spec.lv, &spec.rv}) {
        e->center_row *= sr;
        e->center_col *= sc;
        e->semi_row *= s;
        e->semi_col *= s;
    }
    spec.myocardium_thickness = std::max(2.0, spec.myocardium_thickness * s);
    spec.shape = shape;
    return spec;
}

Phantom generate_phantom(const PhantomSpec& spec) {
    validate(spec);
    const GridShape s = spec.shape;
    Stream rng(spec.seed);

    Ellipse lv = spec.lv;
    Ellipse rv = spec.rv;
    if (spec.geometry_jitter > 0.0) {
        for (Ellipse* e : {&lv, &rv}) {
            e->center_row += rng.symmetric(spec.geometry_jitter);
            e->center_col += rng.symmetric(spec.geometry_jitter);
            e->semi_row = std::max(1.0, e->semi_row + rng.symmetric(spec.geometry_jitter));
            e->semi_col = std::max(1.0, e->semi_col + rng.symmetric(spec.geometry_jitter));
        }
    }
    require_fits(spec, lv, rv);

    // The RV crescent is what is left of its ellipse once the LV and a
    // septal wall of myocardial thickness are carved out.
    const Mask lv_mask = rasterize(s, lv, spec.septal_flattening);
    const Mask lv_wall = dilate(s, lv_mask, spec.myocardium_thickness);
    const Mask rv_ellipse = rasterize(s, rv, 0.0);
    Mask cavity(s.size(), false);
    for (std::size_t p = 0; p < s.size(); ++p) cavity[p] = lv_mask[p] || (rv_ellipse[p] && !lv_wall[p]);
    const Mask epicardium = dilate(s, cavity, spec.myocardium_thickness);

    std::vector<int> labels(s.size(), kBackgroundChannel);
    for (std::size_t p = 0; p < s.size(); ++p) {
        if (cavity[p]) labels[p] = kCavityChannel;
        else if (epicardium[p]) labels[p] = kMyocardiumChannel;
    }
    LabelMap truth(s, kPhantomRegions, labels);
    require(truth.count(kCavityChannel) > 0 && truth.count(kMyocardiumChannel) > 0,
            "phantom geometry produced an empty region");
    EdgeLabelMap edges = derive_edge_labels(truth);

    // Label-flip noise, one raster-order pass.
    std::vector<int> noisy = labels;
    for (int& l : noisy) {
        if (rng.uniform() < spec.flip_rate) {
            const int k = static_cast<int>(rng.below(kPhantomRegions - 1)) + 1;
            l = k >= l ? k + 1 : k;
        }
    }

    std::vector<ScalarField> channels;
    for (int k = 1; k <= kPhantomRegions; ++k) {
        ScalarField one_hot(s);
        for (std::size_t p = 0; p < s.size(); ++p) one_hot.values()[p] = noisy[p] == k ? 1.0 : 0.0;
        channels.push_back(gaussian_blur(one_hot, spec.blur_sigma));
    }
    for (std::size_t p = 0; p < s.size(); ++p) {
        double sum = 0.0;
        for (const auto& ch : channels) sum += ch.values()[p];
        for (auto& ch : channels) ch.values()[p] = std::clamp(ch.values()[p] / sum, 0.0, 1.0);
    }

    ScalarField edge_indicator(s);
    for (std::size_t p = 0; p < s.size(); ++p) edge_indicator.values()[p] = edges.labels()[p] ? 1.0 : 0.0;
    ScalarField edge_channel = gaussian_blur(edge_indicator, spec.blur_sigma);
    for (double& v : edge_channel.values()) v = std::clamp(v, 0.0, 1.0);

    return Phantom{std::move(truth), std::move(edges),
                   ProbabilityStack(std::move(channels), std::move(edge_channel))};
}

}  // namespace nls
