#pragma once

// Nested level set energy and its gradient-descent evolution.
//
//   E(phi) = sum_i sum_x f_i chi_i(phi) + lambda sum_{i<n} sum_x g |grad H(phi - c_i)|
//
//   dphi/dt = -sum_i f_i dchi_i/dphi + lambda kappa_g sum_{i<n} delta(phi - c_i),
//   kappa_g = div(g grad phi / |grad phi|).

#include <vector>

#include "nls/feature.hpp"
#include "nls/field.hpp"
#include "nls/regularize.hpp"

namespace nls {

struct SolverParams {
    double lambda = 1.0;
    Smoothing smoothing{1.5};
    Levels levels{{0.0, 8.0}};
    double time_step = 0.1;
    int iterations = 200;
    double grad_floor = 1e-8;
    int trace_every = 1;
    /// Re-distance phi from {phi < c_1} every K iterations; 0 disables.
    int redistance_every = 0;

    void validate() const;
};

struct EnergySample {
    int iteration;
    double energy;
};

struct SolveReport {
    ScalarField final_phi;
    /// Always contains iteration 0 and the last iteration.
    std::vector<EnergySample> energy_trace;
    int iterations_run = 0;
    /// max_update[k] = max |phi_{k+1} - phi_k| over pixels.
    std::vector<double> max_update;
};

double energy(const ScalarField& phi, const FeatureSet& features, const SolverParams& params);

/// Divergence of g grad(phi)/|grad(phi)| on the half-point grid.
///
/// At (i+1/2, j) the normal derivative is the forward difference, the
/// transverse one is the mean of the central differences at i and i+1,
/// and g is the two-point average. |grad phi| is floored at grad_floor.
/// Fluxes through the outer border vanish.
ScalarField weighted_curvature(const ScalarField& phi, const ScalarField& g, double grad_floor);

/// Right-hand side of the evolution equation.
ScalarField force_field(const ScalarField& phi, const FeatureSet& features, const SolverParams& params);

/// Explicit Jacobi updates phi <- phi + dt * force_field(phi). Throws
/// NumericInstability when phi stops being finite.
SolveReport evolve(const ScalarField& phi0, const FeatureSet& features, const SolverParams& params);

}  // namespace nls
