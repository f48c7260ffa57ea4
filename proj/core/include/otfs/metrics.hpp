#pragma once

#include "otfs/ode.hpp"

#include <span>
#include <vector>

namespace otfs {

struct ErrorMetrics {
    Vector per_state_rmse;
    double average_rmse = 0.0; ///< unweighted mean over states
    double runtime_s = 0.0;
};

/// Resamples both trajectories (linear interpolation, exact at shared sample
/// times) on the uniform grid of spacing dt over their common span, then
/// reports per-state RMSE and their mean. Throws ValidationError if the spans
/// do not overlap or nx differs.
ErrorMetrics rmse(const Trajectory& a, const Trajectory& b, double dt = 0.01);

/// State of `traj` at time t by linear interpolation (exact at sample times).
Vector sample_at(const Trajectory& traj, double t);

struct KdeCurve {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
};

inline constexpr int kKdeGridPoints = 512;
inline constexpr double kKdeTailBandwidths = 4.0;

/// Gaussian kernel density estimate with Silverman's bandwidth
/// h = 1.06 sigma n^(-1/5), on a uniform grid over [min - 4h, max + 4h].
/// Throws DegenerateSampleError for fewer than 2 samples or zero spread.
KdeCurve gaussian_kde(std::span<const double> samples, int grid_points = kKdeGridPoints);

/// Trapezoid integral of a tabulated curve.
double trapezoid(std::span<const double> x, std::span<const double> y);

/// Linear-interpolated quantile (q in [0, 1]) of an unsorted sample.
double quantile(std::vector<double> values, double q);

} // namespace otfs
