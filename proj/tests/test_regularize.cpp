#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "nls/errors.hpp"
#include "nls/regularize.hpp"

using namespace nls;

namespace {

const Smoothing kEps{1.5};
const Levels kTwoLevels{{0.0, 8.0}};

double fd_heaviside(double z, const Smoothing& s, double h) {
    return (heaviside_smooth(z + h, s) - heaviside_smooth(z - h, s)) / (2 * h);
}

double fd_characteristic(double phi, int i, const Levels& levels, const Smoothing& s, double h) {
    return (characteristic(phi + h, i, levels, s) - characteristic(phi - h, i, levels, s)) / (2 * h);
}

}  // namespace

TEST_CASE("heaviside values") {
    CHECK(heaviside_smooth(0.0, kEps) == 0.5);
    CHECK(heaviside_smooth(1e12, kEps) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(heaviside_smooth(-1e12, kEps) == doctest::Approx(0.0));
    CHECK(heaviside_smooth(3.0, kEps) == doctest::Approx(0.852416382349567).epsilon(1e-12));
    CHECK(heaviside_smooth(3.0, kEps) == doctest::Approx(0.5 + std::atan(2.0) / std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("heaviside is complementary and monotone") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> z(-50, 50);
    for (int k = 0; k < 1000; ++k) {
        const double a = z(rng);
        const double b = z(rng);
        CHECK(heaviside_smooth(a, kEps) + heaviside_smooth(-a, kEps) == doctest::Approx(1.0).epsilon(1e-15));
        if (a < b) CHECK(heaviside_smooth(a, kEps) < heaviside_smooth(b, kEps));
    }
}

TEST_CASE("dirac is the derivative of heaviside") {
    CHECK(dirac_smooth(0.0, kEps) == doctest::Approx(1.0 / (std::numbers::pi * 1.5)).epsilon(1e-15));
    CHECK(dirac_smooth(0.0, kEps) == doctest::Approx(0.212206590789194).epsilon(1e-12));
    CHECK(std::abs(fd_heaviside(1.0, kEps, 1e-5) - dirac_smooth(1.0, kEps)) < 1e-8);
    for (double z : {0.1, 2.0, 7.5, 30.0}) CHECK(dirac_smooth(z, kEps) == dirac_smooth(-z, kEps));
}

TEST_CASE("characteristic function values") {
    CHECK(characteristic(-3.0, 1, kTwoLevels, kEps) == doctest::Approx(0.852416382349567).epsilon(1e-12));
    CHECK(characteristic(0.0, 1, kTwoLevels, kEps) == 0.5);
    const Levels single{{0.0}};
    for (double phi : {-4.0, -0.25, 0.0, 1.0, 17.0})
        CHECK(characteristic(phi, 1, single, kEps) + characteristic(phi, 2, single, kEps) == 1.0);
    CHECK_THROWS_AS(characteristic(0.0, 0, kTwoLevels, kEps), ContractViolation);
    CHECK_THROWS_AS(characteristic(0.0, 4, kTwoLevels, kEps), ContractViolation);
    CHECK_THROWS_AS(characteristic_derivative(0.0, 4, kTwoLevels, kEps), ContractViolation);
}

TEST_CASE("characteristic derivative") {
    CHECK(characteristic_derivative(0.0, 1, kTwoLevels, kEps) == -dirac_smooth(0.0, kEps));
    CHECK(std::abs(characteristic_derivative(4.0, 2, kTwoLevels, kEps) -
                   fd_characteristic(4.0, 2, kTwoLevels, kEps, 1e-5)) < 1e-8);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> phi(-20, 30);
    const Levels three{{-2.0, 0.5, 6.0}};
    for (int k = 0; k < 500; ++k) {
        const double v = phi(rng);
        double sum = 0.0;
        for (int i = 1; i <= three.region_count(); ++i) {
            const double d = characteristic_derivative(v, i, three, kEps);
            CHECK(std::abs(d - fd_characteristic(v, i, three, kEps, 1e-5)) < 1e-8);
            sum += d;
        }
        CHECK(std::abs(sum) < 1e-12);
    }
}

TEST_CASE("memberships form a partition of unity inside (0,1)") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> phi(-30, 40);
    std::uniform_real_distribution<double> eps(0.1, 5.0);
    for (int k = 0; k < 2000; ++k) {
        const Smoothing s(eps(rng));
        const double v = phi(rng);
        double sum = 0.0;
        for (int i = 1; i <= 3; ++i) {
            const double chi = characteristic(v, i, kTwoLevels, s);
            CHECK(chi >= 0.0);
            CHECK(chi <= 1.0);
            sum += chi;
        }
        CHECK(std::abs(sum - 1.0) < 1e-12);
    }
}

TEST_CASE("batched memberships equal the per-region functions bitwise") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> phi(-30, 40);
    const Levels four{{-1.0, 2.0, 8.0}};
    std::vector<double> chi(4), dchi(4);
    for (int k = 0; k < 1000; ++k) {
        const double v = phi(rng);
        characteristics(v, four, kEps, chi);
        characteristic_derivatives(v, four, kEps, dchi);
        for (int i = 1; i <= 4; ++i) {
            CHECK(chi[static_cast<std::size_t>(i - 1)] == characteristic(v, i, four, kEps));
            CHECK(dchi[static_cast<std::size_t>(i - 1)] == characteristic_derivative(v, i, four, kEps));
        }
    }
    std::vector<double> wrong(3);
    CHECK_THROWS_AS(characteristics(0.0, four, kEps, wrong), ContractViolation);
}

TEST_CASE("interior membership matches the product form in the sharp limit") {
    // For a sharp Heaviside H(phi-c1) H(c2-phi) == H(phi-c1) - H(phi-c2).
    const Smoothing sharp(1e-4);
    for (double v : {-5.0, -0.5, 0.5, 3.0, 7.5, 8.5, 20.0}) {
        const double product = heaviside_smooth(v - 0.0, sharp) * heaviside_smooth(8.0 - v, sharp);
        CHECK(std::abs(characteristic(v, 2, kTwoLevels, sharp) - product) < 1e-3);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(Smoothing(0.0), ContractViolation);
    CHECK_THROWS_AS(Smoothing(-1.0), ContractViolation);
    CHECK_THROWS_AS(Levels({}), ContractViolation);
    CHECK_THROWS_AS(Levels({1.0, 1.0}), ContractViolation);
    CHECK_THROWS_AS(Levels({2.0, 1.0}), ContractViolation);
    CHECK(Levels({0.0, 8.0}).region_count() == 3);
}
