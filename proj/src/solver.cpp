#include "nls/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nls/errors.hpp"
#include "nls/parallel.hpp"
#include "nls/sdf.hpp"

namespace nls {

void SolverParams::validate() const {
    require(std::isfinite(lambda) && lambda >= 0.0, "lambda must be non-negative");
    require(std::isfinite(time_step) && time_step > 0.0, "time step must be positive");
    require(iterations >= 0, "iteration count must be non-negative");
    require(std::isfinite(grad_floor) && grad_floor > 0.0, "gradient floor must be positive");
    require(trace_every >= 1, "trace interval must be at least 1");
    require(redistance_every >= 0, "redistance interval must be non-negative");
}

namespace {

void require_compatible(const ScalarField& phi, const FeatureSet& features, const SolverParams& params) {
    require_stencil_shape(phi.shape());
    require(features.shape() == phi.shape(), "feature and level set shapes differ");
    require(features.region_count() == params.levels.region_count(),
            "feature count " + std::to_string(features.region_count()) + " does not match " +
                std::to_string(params.levels.region_count()) + " regions implied by the levels");
    for (const auto& f : features.region_features) require(f.shape() == phi.shape(), "feature shapes differ");
}

}  // namespace

double energy(const ScalarField& phi, const FeatureSet& features, const SolverParams& params) {
    params.validate();
    require_compatible(phi, features, params);
    const GridShape s = phi.shape();
    const Gradient grad = central_gradient(phi);
    const auto n = static_cast<std::size_t>(params.levels.region_count());
    const auto& g = features.edge_feature;

    // Per-row partial sums, reduced in row order below, keep the result
    // independent of the thread count.
    std::vector<double> row_sums(s.height, 0.0);
    parallel_rows(s.height, [&](std::size_t begin, std::size_t end) {
        std::vector<double> chi(n);
        for (std::size_t r = begin; r < end; ++r) {
            double data = 0.0;
            double length = 0.0;
            for (std::size_t c = 0; c < s.width; ++c) {
                const double v = phi(r, c);
                characteristics(v, params.levels, params.smoothing, chi);
                for (std::size_t i = 0; i < n; ++i) data += features.region_features[i](r, c) * chi[i];
                const double gx = grad.dx(r, c);
                const double gy = grad.dy(r, c);
                const double grad_norm = std::sqrt(gx * gx + gy * gy);
                double deltas = 0.0;
                for (double level : params.levels.values()) deltas += dirac_smooth(v - level, params.smoothing);
                length += g(r, c) * deltas * grad_norm;
            }
            row_sums[r] = data + params.lambda * length;
        }
    });
    double total = 0.0;
    for (double v : row_sums) total += v;
    return total;
}

ScalarField weighted_curvature(const ScalarField& phi, const ScalarField& g, double grad_floor) {
    require_stencil_shape(phi.shape());
    require(g.shape() == phi.shape(), "edge weight and level set shapes differ");
    require(grad_floor > 0.0, "gradient floor must be positive");

    const GridShape s = phi.shape();
    const std::size_t h = s.height;
    const std::size_t w = s.width;
    const Gradient central = central_gradient(phi);
    const ScalarField g_right = half_point_average(g, Axis::Column, HalfStep::Forward);
    const ScalarField g_down = half_point_average(g, Axis::Row, HalfStep::Forward);

    // flux_x(r, c) lives at (r, c+1/2); flux_y(r, c) at (r+1/2, c).
    ScalarField flux_x(s);
    ScalarField flux_y(s);
    parallel_rows(h, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            for (std::size_t c = 0; c < w; ++c) {
                if (c + 1 < w) {
                    const double normal = phi(r, c + 1) - phi(r, c);
                    const double transverse = 0.5 * (central.dy(r, c) + central.dy(r, c + 1));
                    const double norm = std::max(std::sqrt(normal * normal + transverse * transverse), grad_floor);
                    flux_x(r, c) = g_right(r, c) * normal / norm;
                }
                if (r + 1 < h) {
                    const double normal = phi(r + 1, c) - phi(r, c);
                    const double transverse = 0.5 * (central.dx(r, c) + central.dx(r + 1, c));
                    const double norm = std::max(std::sqrt(normal * normal + transverse * transverse), grad_floor);
                    flux_y(r, c) = g_down(r, c) * normal / norm;
                }
            }
        }
    });

    ScalarField kappa(s);
    parallel_rows(h, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r) {
            for (std::size_t c = 0; c < w; ++c) {
                const double east = c + 1 < w ? flux_x(r, c) : 0.0;
                const double west = c > 0 ? flux_x(r, c - 1) : 0.0;
                const double south = r + 1 < h ? flux_y(r, c) : 0.0;
                const double north = r > 0 ? flux_y(r - 1, c) : 0.0;
                kappa(r, c) = (east - west) + (south - north);
            }
        }
    });
    return kappa;
}

ScalarField force_field(const ScalarField& phi, const FeatureSet& features, const SolverParams& params) {
    params.validate();
    require_compatible(phi, features, params);
    const GridShape s = phi.shape();
    const auto n = static_cast<std::size_t>(params.levels.region_count());
    const bool regularized = params.lambda > 0.0;
    const ScalarField kappa =
        regularized ? weighted_curvature(phi, features.edge_feature, params.grad_floor) : ScalarField(s);

    ScalarField force(s);
    parallel_rows(s.height, [&](std::size_t begin, std::size_t end) {
        std::vector<double> dchi(n);
        for (std::size_t r = begin; r < end; ++r) {
            for (std::size_t c = 0; c < s.width; ++c) {
                const double v = phi(r, c);
                characteristic_derivatives(v, params.levels, params.smoothing, dchi);
                double data = 0.0;
                for (std::size_t i = 0; i < n; ++i) data -= features.region_features[i](r, c) * dchi[i];
                double out = data;
                if (regularized) {
                    double deltas = 0.0;
                    for (double level : params.levels.values()) deltas += dirac_smooth(v - level, params.smoothing);
                    out += params.lambda * kappa(r, c) * deltas;
                }
                force(r, c) = out;
            }
        }
    });
    return force;
}

namespace {

ScalarField redistance(const ScalarField& phi, double level) {
    BinaryMask mask(phi.shape());
    for (std::size_t r = 0; r < phi.height(); ++r)
        for (std::size_t c = 0; c < phi.width(); ++c) mask.set(r, c, phi(r, c) < level);
    const std::size_t inside = mask.inside_count();
    if (inside == 0 || inside == phi.shape().size()) return phi;
    ScalarField out = fast_sweep_sdf(mask);
    for (double& v : out.values()) v += level;
    return out;
}

}  // namespace

SolveReport evolve(const ScalarField& phi0, const FeatureSet& features, const SolverParams& params) {
    params.validate();
    require_compatible(phi0, features, params);

    SolveReport report{phi0, {}, 0, {}};
    report.max_update.reserve(static_cast<std::size_t>(params.iterations));
    ScalarField& phi = report.final_phi;

    auto record = [&](int iteration) {
        const double e = energy(phi, features, params);
        if (!std::isfinite(e))
            throw NumericInstability(iteration, "energy became non-finite at iteration " + std::to_string(iteration));
        report.energy_trace.push_back({iteration, e});
    };
    record(0);

    for (int it = 1; it <= params.iterations; ++it) {
        const ScalarField force = force_field(phi, features, params);
        double max_step = 0.0;
        bool finite = true;
        auto values = phi.values();
        const auto f = force.values();
        for (std::size_t p = 0; p < values.size(); ++p) {
            const double step = params.time_step * f[p];
            values[p] += step;
            finite = finite && std::isfinite(values[p]);
            max_step = std::max(max_step, std::abs(step));
        }
        if (!finite)
            throw NumericInstability(it, "level set became non-finite at iteration " + std::to_string(it));
        if (params.redistance_every > 0 && it % params.redistance_every == 0)
            phi = redistance(phi, params.levels[0]);

        report.max_update.push_back(max_step);
        report.iterations_run = it;
        if (it % params.trace_every == 0 || it == params.iterations) record(it);
    }
    return report;
}

}  // namespace nls
