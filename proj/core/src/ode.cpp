#include "otfs/ode.hpp"

#include "otfs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace otfs {

void SolverSpec::validate() const {
    if (!(rtol > 0.0) || !(atol > 0.0)) throw PreconditionError("solver tolerances must be positive");
    if (max_step && !(*max_step > 0.0)) throw PreconditionError("max step must be positive");
    if (!(dt_out > 0.0)) throw PreconditionError("output step must be positive");
    if (max_steps < 1) throw PreconditionError("max_steps must be positive");
}

std::vector<double> uniform_grid(double t0, double tf, double dt) {
    const double span = tf - t0;
    const auto n = static_cast<long>(std::floor(span / dt * (1.0 + 1e-9) + 1e-9));
    std::vector<double> grid(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) grid[static_cast<std::size_t>(i)] = t0 + static_cast<double>(i) * dt;
    return grid;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0, a75 = -2187.0 / 6784.0,
                 a76 = 11.0 / 84.0;
// Error coefficients: 5th-order minus embedded 4th-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// PI controller constants.
constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;  // smallest step ratio
constexpr double kFacMax = 10.0; // largest step ratio
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;

double error_norm(const Vector& err, const Vector& y0, const Vector& y1, double rtol, double atol) {
    const Vector sc = (atol + rtol * y0.cwiseAbs().cwiseMax(y1.cwiseAbs()).array()).matrix();
    return std::sqrt((err.cwiseQuotient(sc)).squaredNorm() / static_cast<double>(err.size()));
}

} // namespace

Trajectory integrate_ct(const CtRhs& rhs, const Vector& x0, double t0, double tf, const SolverSpec& spec) {
    spec.validate();
    if (!(tf > t0)) throw PreconditionError("integration requires tf > t0");
    if (x0.size() < 1 || !x0.allFinite()) throw PreconditionError("initial state must be non-empty and finite");

    Trajectory traj;
    const std::vector<double> grid = uniform_grid(t0, tf, spec.dt_out);
    const auto nx = x0.size();
    traj.times = grid;
    traj.states.resize(static_cast<Eigen::Index>(grid.size()), nx);
    traj.states.row(0) = x0.transpose();
    std::size_t next_out = 1;

    auto f = [&](double t, const Vector& y) {
        ++traj.rhs_evals;
        Vector dy;
        try {
            dy = rhs(t, y);
        } catch (const EvaluationError& e) {
            throw IntegrationError(t, e.what());
        }
        if (dy.size() != nx) throw DimensionError("right-hand side returned a vector of the wrong length");
        return dy;
    };

    const double span = tf - t0;
    const double hmax = spec.max_step.value_or(span / 10.0);
    const double rtol = spec.rtol;
    const double atol = spec.atol;

    double t = t0;
    Vector y = x0;
    Vector k1 = f(t, y);
    if (!k1.allFinite()) throw IntegrationError(t, "right-hand side is not finite at the initial state");

    // Initial step guess.
    double h;
    {
        const Vector sc = (atol + rtol * y.cwiseAbs().array()).matrix();
        const double dnf = k1.cwiseQuotient(sc).squaredNorm() / static_cast<double>(nx);
        const double dny = y.cwiseQuotient(sc).squaredNorm() / static_cast<double>(nx);
        h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
        h = std::min(h, hmax);
        const Vector y1 = y + h * k1;
        const Vector k2 = f(t + h, y1);
        const double der2 = std::sqrt((k2 - k1).cwiseQuotient(sc).squaredNorm() / static_cast<double>(nx)) / h;
        const double der12 = std::max(std::abs(der2), std::sqrt(dnf));
        const double h1 = der12 <= 1e-15 ? std::max(1e-6, std::abs(h) * 1e-3) : std::pow(0.01 / der12, 0.2);
        h = std::min({100.0 * std::abs(h), h1, hmax});
    }

    double facold = 1e-4;
    bool last_rejected = false;
    long steps = 0;
    const double eps = std::numeric_limits<double>::epsilon();

    while (t < tf) {
        if (++steps > spec.max_steps) throw IntegrationError(t, "maximum number of steps exceeded");
        if (h < 16.0 * eps * std::max(1.0, std::abs(t)))
            throw IntegrationError(t, "step size underflow");
        bool final_step = false;
        if (t + h >= tf || t + 1.01 * h >= tf) {
            h = tf - t;
            final_step = true;
        }

        const Vector k2 = f(t + c2 * h, y + h * (a21 * k1));
        const Vector k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const Vector k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Vector k5 = f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Vector k6 = f(t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Vector y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
        const Vector k7 = f(t + h, y_new);
        const Vector err_vec = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        if (!y_new.allFinite() || !k7.allFinite()) {
            // Treat as a rejected step; shrink aggressively.
            h *= kFacMin;
            last_rejected = true;
            continue;
        }

        const double err = error_norm(err_vec, y, y_new, rtol, atol);
        const double fac11 = std::pow(err, kExpo);
        if (err <= 1.0) {
            double fac = fac11 / std::pow(facold, kBeta);
            fac = std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
            double h_new = h / fac;
            facold = std::max(err, 1e-4);

            // Dense output between t and t + h.
            const double t_new = final_step ? tf : t + h;
            while (next_out < grid.size() && grid[next_out] <= t_new + 1e-12 * std::max(1.0, std::abs(t_new))) {
                const double theta = std::clamp((grid[next_out] - t) / h, 0.0, 1.0);
                const double theta1 = 1.0 - theta;
                const Vector ydiff = y_new - y;
                const Vector bspl = h * k1 - ydiff;
                const Vector r4 = ydiff - h * k7 - bspl;
                const Vector r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
                const Vector val = y + theta * (ydiff + theta1 * (bspl + theta * (r4 + theta1 * r5)));
                traj.states.row(static_cast<Eigen::Index>(next_out)) = val.transpose();
                ++next_out;
            }

            t = t_new;
            y = y_new;
            k1 = k7;
            if (last_rejected) h_new = std::min(h_new, h);
            last_rejected = false;
            h = std::min(h_new, hmax);
        } else {
            h /= std::min(1.0 / kFacMin, fac11 / kSafety);
            last_rejected = true;
        }
    }
    // Guard against a grid point lost to round-off at tf.
    while (next_out < grid.size()) traj.states.row(static_cast<Eigen::Index>(next_out++)) = y.transpose();
    if (!traj.states.allFinite()) throw IntegrationError(t, "non-finite state in trajectory");
    return traj;
}

Trajectory integrate_dt(const DtMap& map, const Vector& x0, long n_steps) {
    if (n_steps < 0) throw PreconditionError("number of steps must be non-negative");
    if (x0.size() < 1 || !x0.allFinite()) throw PreconditionError("initial state must be non-empty and finite");
    Trajectory traj;
    traj.times.resize(static_cast<std::size_t>(n_steps + 1));
    traj.states.resize(n_steps + 1, x0.size());
    traj.times[0] = 0.0;
    traj.states.row(0) = x0.transpose();
    Vector x = x0;
    for (long k = 0; k < n_steps; ++k) {
        x = map(k, x);
        ++traj.rhs_evals;
        if (x.size() != x0.size()) throw DimensionError("step map returned a vector of the wrong length");
        if (!x.allFinite()) throw IntegrationError(static_cast<double>(k), "non-finite state after step " + std::to_string(k + 1));
        traj.times[static_cast<std::size_t>(k + 1)] = static_cast<double>(k + 1);
        traj.states.row(k + 1) = x.transpose();
    }
    return traj;
}

} // namespace otfs
