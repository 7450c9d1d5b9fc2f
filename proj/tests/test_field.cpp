#include <doctest.h>

#include <random>

#include "nls/errors.hpp"
#include "nls/field.hpp"
#include "oracles.hpp"

using namespace nls;

TEST_CASE("central gradient of a constant field is exactly zero") {
    const ScalarField f(GridShape{6, 7}, 3.25);
    const Gradient g = central_gradient(f);
    for (double v : g.dx.values()) CHECK(v == 0.0);
    for (double v : g.dy.values()) CHECK(v == 0.0);
}

TEST_CASE("central gradient of a column ramp") {
    const GridShape s{5, 6};
    const auto f = ScalarField::generate(s, [](std::size_t, std::size_t c) { return static_cast<double>(c); });
    const Gradient g = central_gradient(f);
    for (std::size_t r = 0; r < s.height; ++r) {
        for (std::size_t c = 1; c + 1 < s.width; ++c) CHECK(g.dx(r, c) == 1.0);
        for (std::size_t c = 0; c < s.width; ++c) CHECK(g.dy(r, c) == 0.0);
        // replicated border: half the one-sided difference
        CHECK(g.dx(r, 0) == doctest::Approx(0.5));
        CHECK(g.dx(r, s.width - 1) == doctest::Approx(0.5));
    }
}

TEST_CASE("central gradient of x^2 at x=2 is 4") {
    const auto f = ScalarField::generate(GridShape{5, 5}, [](std::size_t, std::size_t c) {
        return static_cast<double>(c * c);
    });
    CHECK(central_gradient(f).dx(2, 2) == 4.0);
}

TEST_CASE("central gradient is linear") {
    std::mt19937_64 rng(7);
    const GridShape s{9, 11};
    const ScalarField a = testing::random_field(s, rng, -5, 5);
    const ScalarField b = testing::random_field(s, rng, -5, 5);
    const double ka = 1.7;
    const double kb = -0.3;
    ScalarField combo(s);
    for (std::size_t p = 0; p < s.size(); ++p) combo.values()[p] = ka * a.values()[p] + kb * b.values()[p];
    const Gradient ga = central_gradient(a);
    const Gradient gb = central_gradient(b);
    const Gradient gc = central_gradient(combo);
    for (std::size_t p = 0; p < s.size(); ++p) {
        CHECK(std::abs(gc.dx.values()[p] - (ka * ga.dx.values()[p] + kb * gb.dx.values()[p])) < 1e-12);
        CHECK(std::abs(gc.dy.values()[p] - (ka * ga.dy.values()[p] + kb * gb.dy.values()[p])) < 1e-12);
    }
}

TEST_CASE("half point average") {
    SUBCASE("constant stays constant") {
        const ScalarField f(GridShape{4, 4}, 2.5);
        for (auto axis : {Axis::Row, Axis::Column})
            for (auto step : {HalfStep::Forward, HalfStep::Backward})
                for (const auto out = half_point_average(f, axis, step); double v : out.values()) CHECK(v == 2.5);
    }
    SUBCASE("ramp gives midpoints") {
        const auto f = ScalarField::generate(GridShape{3, 4}, [](std::size_t, std::size_t c) {
            return static_cast<double>(c);
        });
        const ScalarField fwd = half_point_average(f, Axis::Column, HalfStep::Forward);
        CHECK(fwd(1, 0) == 0.5);
        CHECK(fwd(1, 1) == 1.5);
        CHECK(fwd(1, 2) == 2.5);
        CHECK(fwd(1, 3) == 3.0);  // replicated
        const ScalarField bwd = half_point_average(f, Axis::Column, HalfStep::Backward);
        CHECK(bwd(1, 0) == 0.0);
        CHECK(bwd(1, 1) == 0.5);
    }
    SUBCASE("matches a direct two-point average on a random field") {
        std::mt19937_64 rng(3);
        const GridShape s{4, 4};
        const ScalarField f = testing::random_field(s, rng, -1, 1);
        const ScalarField down = half_point_average(f, Axis::Row, HalfStep::Forward);
        for (std::size_t r = 0; r + 1 < s.height; ++r)
            for (std::size_t c = 0; c < s.width; ++c) CHECK(down(r, c) == (f(r, c) + f(r + 1, c)) / 2);
    }
    SUBCASE("commutes with adding a constant") {
        std::mt19937_64 rng(4);
        const GridShape s{6, 5};
        const ScalarField f = testing::random_field(s, rng, -1, 1);
        ScalarField shifted = f;
        for (double& v : shifted.values()) v += 10.0;
        const ScalarField a = half_point_average(f, Axis::Row, HalfStep::Backward);
        const ScalarField b = half_point_average(shifted, Axis::Row, HalfStep::Backward);
        for (std::size_t p = 0; p < s.size(); ++p)
            CHECK(b.values()[p] - 10.0 == doctest::Approx(a.values()[p]).epsilon(1e-12));
    }
}

TEST_CASE("containers enforce their invariants") {
    CHECK_THROWS_AS(ScalarField(GridShape{2, 2}, std::vector<double>{1, 2, 3}), ContractViolation);
    CHECK_THROWS_AS(ScalarField(GridShape{1, 2}, std::vector<double>{1, NAN}), ContractViolation);
    CHECK_THROWS_AS(LabelMap(GridShape{1, 2}, 3, std::vector<int>{1, 4}), ContractViolation);
    CHECK_THROWS_AS(LabelMap(GridShape{1, 1}, 1), ContractViolation);
    CHECK_THROWS_AS(central_gradient(ScalarField(GridShape{2, 5})), ContractViolation);
    LabelMap labels(GridShape{2, 2}, 3);
    CHECK_THROWS_AS(labels.set(0, 0, 0), ContractViolation);
    labels.set(1, 1, 3);
    CHECK(labels.count(3) == 1);
}
