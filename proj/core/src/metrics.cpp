#include "otfs/metrics.hpp"

#include "otfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace otfs {

Vector sample_at(const Trajectory& traj, double t) {
    const auto& ts = traj.times;
    if (ts.empty()) throw ValidationError("empty trajectory");
    if (t <= ts.front()) return traj.states.row(0).transpose();
    if (t >= ts.back()) return traj.states.row(traj.states.rows() - 1).transpose();
    const auto it = std::lower_bound(ts.begin(), ts.end(), t);
    const auto j = static_cast<Eigen::Index>(it - ts.begin());
    if (*it == t) return traj.states.row(j).transpose();
    const double t0 = ts[static_cast<std::size_t>(j - 1)];
    const double t1 = *it;
    const double w = (t - t0) / (t1 - t0);
    return ((1.0 - w) * traj.states.row(j - 1) + w * traj.states.row(j)).transpose();
}

ErrorMetrics rmse(const Trajectory& a, const Trajectory& b, double dt) {
    if (a.size() == 0 || b.size() == 0) throw ValidationError("rmse: empty trajectory");
    if (a.nx() != b.nx()) throw ValidationError("rmse: trajectories have different state dimensions");
    if (!(dt > 0.0)) throw PreconditionError("rmse: grid spacing must be positive");
    const double lo = std::max(a.times.front(), b.times.front());
    const double hi = std::min(a.times.back(), b.times.back());
    if (lo > hi) throw ValidationError("rmse: trajectories have disjoint time spans");

    const std::vector<double> grid = lo == hi ? std::vector<double>{lo} : uniform_grid(lo, hi, dt);
    Vector sq = Vector::Zero(a.nx());
    for (double t : grid) sq += (sample_at(a, t) - sample_at(b, t)).cwiseAbs2();

    ErrorMetrics m;
    m.per_state_rmse = (sq / static_cast<double>(grid.size())).cwiseSqrt();
    m.average_rmse = m.per_state_rmse.mean();
    return m;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionError("trapezoid: x and y differ in length");
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    return acc;
}

KdeCurve gaussian_kde(std::span<const double> samples, int grid_points) {
    const std::size_t n = samples.size();
    if (n < 2) throw DegenerateSampleError("kernel density estimate needs at least 2 samples");
    if (grid_points < 2) throw PreconditionError("kernel density grid needs at least 2 points");
    for (double s : samples)
        if (!std::isfinite(s)) throw ValidationError("kernel density sample is not finite");

    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(n);
    double ss = 0.0;
    for (double s : samples) ss += (s - mean) * (s - mean);
    const double sigma = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sigma > 0.0)) throw DegenerateSampleError("kernel density sample has zero spread");

    const double h = 1.06 * sigma * std::pow(static_cast<double>(n), -0.2);
    const auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *mn - kKdeTailBandwidths * h;
    const double hi = *mx + kKdeTailBandwidths * h;

    KdeCurve curve;
    curve.bandwidth = h;
    curve.grid.resize(static_cast<std::size_t>(grid_points));
    curve.density.resize(static_cast<std::size_t>(grid_points));
    const double norm = 1.0 / (static_cast<double>(n) * h * std::sqrt(2.0 * std::numbers::pi));
    for (int i = 0; i < grid_points; ++i) {
        const double x = lo + (hi - lo) * i / (grid_points - 1);
        double acc = 0.0;
        for (double s : samples) {
            const double u = (x - s) / h;
            acc += std::exp(-0.5 * u * u);
        }
        curve.grid[static_cast<std::size_t>(i)] = x;
        curve.density[static_cast<std::size_t>(i)] = acc * norm;
    }
    return curve;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw ValidationError("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw PreconditionError("quantile level must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto i = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(i);
    if (i + 1 >= values.size()) return values.back();
    return values[i] + frac * (values[i + 1] - values[i]);
}

} // namespace otfs
