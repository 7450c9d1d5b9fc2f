#pragma once

// Smoothed Heaviside / Dirac pair and the nested characteristic functions
// that split the domain into n regions with one level set function.

#include <span>
#include <vector>

namespace nls {

/// Regularisation width epsilon > 0.
class Smoothing {
public:
    explicit Smoothing(double epsilon);
    double epsilon() const noexcept { return epsilon_; }

private:
    double epsilon_;
};

/// Strictly increasing levels c_1 < ... < c_{n-1}; region count n = size + 1.
class Levels {
public:
    explicit Levels(std::vector<double> values);

    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }
    int region_count() const noexcept { return static_cast<int>(values_.size()) + 1; }

private:
    std::vector<double> values_;
};

/// H_eps(z) = 1/2 (1 + 2/pi atan(z / eps)).
double heaviside_smooth(double z, const Smoothing& s) noexcept;

/// delta_eps(z) = eps / (pi (eps^2 + z^2)), the exact derivative of heaviside_smooth.
double dirac_smooth(double z, const Smoothing& s) noexcept;

// Soft membership of region i (1-based):
//   i = 1      : H(c_1 - phi)
//   1 < i < n  : H(phi - c_{i-1}) - H(phi - c_i)
//   i = n      : H(phi - c_{n-1})
// The interior form is the telescoping difference rather than the product
// H(phi - c_{i-1}) H(c_i - phi); both agree for a sharp Heaviside, but only
// the difference keeps sum_i chi_i == 1 once H has global support.
double characteristic(double phi, int region, const Levels& levels, const Smoothing& s);

/// d chi_i / d phi for the memberships above. Sums to zero over i.
double characteristic_derivative(double phi, int region, const Levels& levels, const Smoothing& s);

/// All n memberships at once (out.size() == n); bitwise equal to calling
/// characteristic() per region, with one arctan per level.
void characteristics(double phi, const Levels& levels, const Smoothing& s, std::span<double> out);

/// All n derivatives at once; bitwise equal to characteristic_derivative().
void characteristic_derivatives(double phi, const Levels& levels, const Smoothing& s, std::span<double> out);

}  // namespace nls
