#include <doctest.h>

#include <cmath>
#include <random>

#include "nls/errors.hpp"
#include "nls/metrics.hpp"
#include "nls/parallel.hpp"
#include "nls/sdf.hpp"
#include "nls/solver.hpp"
#include "oracles.hpp"

using namespace nls;

namespace {

FeatureSet constant_features(GridShape s, std::vector<double> f, double g) {
    FeatureSet out{{}, ScalarField(s, g), kDefaultClampFloor};
    for (double v : f) out.region_features.emplace_back(s, v);
    return out;
}

FeatureSet random_features(GridShape s, int n, std::mt19937_64& rng) {
    FeatureSet out{{}, testing::random_field(s, rng, 0.0, 1.0), kDefaultClampFloor};
    for (int i = 0; i < n; ++i) out.region_features.push_back(testing::random_field(s, rng, 0.0, 5.0));
    return out;
}

SolverParams no_boundary() {
    SolverParams p;
    p.lambda = 0.0;
    return p;
}

// Energy written pixel by pixel from its definition, with its own gradient.
double oracle_energy(const ScalarField& phi, const FeatureSet& f, const SolverParams& p) {
    const auto s = phi.shape();
    auto at = [&](long r, long c) {
        r = std::clamp<long>(r, 0, static_cast<long>(s.height) - 1);
        c = std::clamp<long>(c, 0, static_cast<long>(s.width) - 1);
        return phi(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    };
    double total = 0.0;
    for (long r = 0; r < static_cast<long>(s.height); ++r)
        for (long c = 0; c < static_cast<long>(s.width); ++c) {
            const auto ur = static_cast<std::size_t>(r), uc = static_cast<std::size_t>(c);
            const double v = phi(ur, uc);
            for (int i = 1; i <= p.levels.region_count(); ++i)
                total += f.region_features[static_cast<std::size_t>(i - 1)](ur, uc) *
                         characteristic(v, i, p.levels, p.smoothing);
            const double gx = (at(r, c + 1) - at(r, c - 1)) / 2;
            const double gy = (at(r + 1, c) - at(r - 1, c)) / 2;
            for (double level : p.levels.values())
                total += p.lambda * f.edge_feature(ur, uc) * dirac_smooth(v - level, p.smoothing) *
                         std::sqrt(gx * gx + gy * gy);
        }
    return total;
}

Phantom test_phantom(double blur, double noise, std::uint64_t seed = 42) {
    PhantomSpec spec;
    spec.blur_sigma = blur;
    spec.flip_rate = noise;
    spec.seed = seed;
    return generate_phantom(spec);
}

}  // namespace

TEST_CASE("energy with equal constant features is K times the pixel count") {
    std::mt19937_64 rng(1);
    const GridShape s{12, 10};
    const ScalarField phi = testing::random_field(s, rng, -15, 25);
    for (double k : {0.0, 1.0, 3.7}) {
        const double e = energy(phi, constant_features(s, {k, k, k}, 0.5), no_boundary());
        CHECK(e == doctest::Approx(k * 120).epsilon(1e-12));
    }
}

TEST_CASE("energy matches a per-pixel oracle") {
    std::mt19937_64 rng(2);
    const GridShape s{9, 13};
    const ScalarField phi = testing::random_field(s, rng, -6, 14);
    const FeatureSet f = random_features(s, 3, rng);
    SolverParams p;
    CHECK(std::abs(energy(phi, f, no_boundary()) - oracle_energy(phi, f, no_boundary())) < 1e-12);
    CHECK(std::abs(energy(phi, f, p) - oracle_energy(phi, f, p)) < 1e-12);

    FeatureSet no_edges = f;
    no_edges.edge_feature = ScalarField(s, 0.0);
    CHECK(energy(phi, no_edges, p) == energy(phi, no_edges, no_boundary()));
}

TEST_CASE("energy rejects mismatched inputs") {
    const GridShape s{5, 5};
    const ScalarField phi(s);
    CHECK_THROWS_AS(energy(phi, constant_features(s, {1, 1}, 0), SolverParams{}), ContractViolation);
    CHECK_THROWS_AS(energy(phi, constant_features(GridShape{5, 6}, {1, 1, 1}, 0), SolverParams{}), ContractViolation);
}

TEST_CASE("weighted curvature of a circle") {
    const GridShape s{80, 80};
    const auto phi = ScalarField::generate(s, [](std::size_t r, std::size_t c) {
        return std::hypot(static_cast<double>(r) - 40.0, static_cast<double>(c) - 40.0) - 20.0;
    });
    const ScalarField kappa = weighted_curvature(phi, ScalarField(s, 1.0), 1e-8);
    int checked = 0;
    for (std::size_t p = 0; p < s.size(); ++p) {
        if (std::abs(phi.values()[p]) > 1.0) continue;
        CHECK(std::abs(kappa.values()[p] - 0.05) <= 0.01);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("weighted curvature of planar ramps vanishes in the interior") {
    const GridShape s{15, 17};
    for (auto [a, b] : {std::pair{1.0, 0.0}, std::pair{0.3, -0.8}, std::pair{-2.0, 5.0}}) {
        const auto phi = ScalarField::generate(s, [a = a, b = b](std::size_t r, std::size_t c) {
            return a * static_cast<double>(c) + b * static_cast<double>(r) + 1.5;
        });
        const ScalarField kappa = weighted_curvature(phi, ScalarField(s, 1.0), 1e-8);
        for (std::size_t r = 1; r + 1 < s.height; ++r)
            for (std::size_t c = 1; c + 1 < s.width; ++c) CHECK(std::abs(kappa(r, c)) < 1e-6);
    }
    std::mt19937_64 rng(3);
    const ScalarField random_phi = testing::random_field(s, rng, -5, 5);
    for (const auto out = weighted_curvature(random_phi, ScalarField(s, 0.0), 1e-8); double v : out.values())
        CHECK(v == 0.0);
}

TEST_CASE("data force is the negative energy gradient") {
    std::mt19937_64 rng(4);
    const GridShape s{12, 12};
    const SolverParams p = no_boundary();
    for (int instance = 0; instance < 5; ++instance) {
        ScalarField phi = testing::random_field(s, rng, -4, 12);
        const FeatureSet f = random_features(s, 3, rng);
        const ScalarField force = force_field(phi, f, p);
        double worst = 0.0, scale = 0.0;
        const double h = 1e-4;
        for (std::size_t k = 0; k < s.size(); ++k) {
            const double saved = phi.values()[k];
            phi.values()[k] = saved + h;
            const double up = energy(phi, f, p);
            phi.values()[k] = saved - h;
            const double down = energy(phi, f, p);
            phi.values()[k] = saved;
            const double fd = -(up - down) / (2 * h);
            worst = std::max(worst, std::abs(force.values()[k] - fd));
            scale = std::max(scale, std::abs(fd));
        }
        CHECK(worst / scale < 1e-6);
    }
}

TEST_CASE("equal features give zero data force") {
    std::mt19937_64 rng(5);
    const GridShape s{8, 8};
    const ScalarField phi = testing::random_field(s, rng, -10, 20);
    for (const auto out = force_field(phi, constant_features(s, {2.5, 2.5, 2.5}, 0.3), no_boundary()); double v : out.values())
        CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("force far above the top level is bounded by the dirac tails") {
    std::mt19937_64 rng(6);
    const GridShape s{10, 10};
    SolverParams p;
    const double eps = p.smoothing.epsilon();
    const double floor = p.levels[1] + 10 * eps;
    const ScalarField phi = testing::random_field(s, rng, floor, floor + 30);
    const FeatureSet f = random_features(s, 3, rng);  // f <= 5, g <= 1
    const double tail = dirac_smooth(10 * eps, p.smoothing);
    // |dchi_i| <= 2 tail each; |kappa_g| <= 4 since every flux is at most g <= 1.
    const double bound = 5.0 * 3 * 2 * tail + p.lambda * 4.0 * 2 * tail;
    for (const auto out = force_field(phi, f, p); double v : out.values()) CHECK(std::abs(v) <= bound);
}

TEST_CASE("zero forces leave phi bitwise unchanged") {
    std::mt19937_64 rng(7);
    const GridShape s{10, 12};
    const ScalarField phi0 = testing::random_field(s, rng, -10, 20);
    SolverParams p = no_boundary();
    p.iterations = 25;
    const SolveReport report = evolve(phi0, constant_features(s, {0, 0, 0}, 0.7), p);
    CHECK(report.final_phi == phi0);
    CHECK(report.iterations_run == 25);
}

TEST_CASE("a cheap region grows monotonically") {
    const GridShape s{40, 40};
    ScalarField phi = fast_sweep_sdf(testing::disk_mask(s, 20, 20, 4));
    const FeatureSet f = constant_features(s, {0.0, 1.0, 1.0}, 0.0);
    SolverParams p = no_boundary();
    p.iterations = 1;
    const Levels& levels = p.levels;
    const std::size_t initial = label_from_phi(phi, levels).count(1);
    std::size_t area = initial;
    for (int it = 0; it < 60; ++it) {
        phi = evolve(phi, f, p).final_phi;
        const std::size_t next = label_from_phi(phi, levels).count(1);
        CHECK(next >= area);
        area = next;
    }
    CHECK(area > initial);
}

TEST_CASE("evolution on a blurred phantom lowers the energy") {
    const Phantom ph = test_phantom(2.0, 0.05);
    const FeatureSet f = features_from_probabilities(ph.stack);
    SolverParams p;
    p.trace_every = 50;
    const SolveReport report = evolve(initialize_phi(ph.stack), f, p);
    REQUIRE(report.energy_trace.size() == 5);
    CHECK(report.energy_trace.front().iteration == 0);
    CHECK(report.energy_trace.back().iteration == 200);
    CHECK(report.energy_trace.back().energy < report.energy_trace.front().energy);
    CHECK(report.max_update.size() == 200);
}

TEST_CASE("evolution is deterministic across runs and thread counts") {
    const Phantom ph = test_phantom(2.0, 0.05, 9);
    const FeatureSet f = features_from_probabilities(ph.stack);
    SolverParams p;
    p.iterations = 30;
    const ScalarField phi0 = initialize_phi(ph.stack);
    const SolveReport a = evolve(phi0, f, p);
    set_thread_count(3);
    const SolveReport b = evolve(phi0, f, p);
    set_thread_count(1);
    CHECK(a.final_phi == b.final_phi);
    REQUIRE(a.energy_trace.size() == b.energy_trace.size());
    for (std::size_t k = 0; k < a.energy_trace.size(); ++k) CHECK(a.energy_trace[k].energy == b.energy_trace[k].energy);
    CHECK(a.max_update == b.max_update);
}

TEST_CASE("noiseless phantom labeling is stable under evolution") {
    const Phantom ph = test_phantom(0.0, 0.0);
    const FeatureSet f = features_from_probabilities(ph.stack);
    const SolverParams p;
    const SolveReport report = evolve(initialize_phi(ph.stack), f, p);
    const LabelMap labels = label_from_phi(report.final_phi, p.levels);
    std::size_t agree = 0;
    for (std::size_t k = 0; k < labels.labels().size(); ++k) agree += labels.labels()[k] == ph.labels.labels()[k];
    CHECK(static_cast<double>(agree) >= 0.99 * static_cast<double>(labels.labels().size()));
}

TEST_CASE("non-finite updates raise a numeric instability error") {
    const GridShape s{6, 6};
    const ScalarField phi0(s, 0.0);
    SolverParams p = no_boundary();
    p.time_step = 1e300;
    p.iterations = 5;
    try {
        evolve(phi0, constant_features(s, {1e300, 0.0, 0.0}, 0.0), p);
        FAIL("expected NumericInstability");
    } catch (const NumericInstability& e) {
        CHECK(e.iteration() == 1);
    }
}

TEST_CASE("optional re-distancing keeps the zero level set") {
    const Phantom ph = test_phantom(2.0, 0.05);
    const FeatureSet f = features_from_probabilities(ph.stack);
    SolverParams p;
    p.iterations = 40;
    p.redistance_every = 20;
    const SolveReport report = evolve(initialize_phi(ph.stack), f, p);
    const LabelMap labels = label_from_phi(report.final_phi, p.levels);
    CHECK(dice(labels, ph.labels, 1) > 0.95);
}

TEST_CASE("solver parameters are validated") {
    SolverParams p;
    p.time_step = 0.0;
    CHECK_THROWS_AS(p.validate(), ContractViolation);
    p = SolverParams{};
    p.lambda = -1.0;
    CHECK_THROWS_AS(p.validate(), ContractViolation);
    p = SolverParams{};
    p.trace_every = 0;
    CHECK_THROWS_AS(p.validate(), ContractViolation);
    p = SolverParams{};
    p.grad_floor = 0.0;
    CHECK_THROWS_AS(p.validate(), ContractViolation);
}
