#pragma once

#include "otfs/core_model.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace otfs {

/// Embedded Dormand-Prince 4(5) settings. Defaults mirror the usual desktop
/// ode45 configuration: rtol 1e-3, atol 1e-6, max step span/10.
struct SolverSpec {
    double rtol = 1e-3;
    double atol = 1e-6;
    std::optional<double> max_step; ///< default (tf - t0) / 10
    double dt_out = 0.01;           ///< uniform output grid spacing
    long max_steps = 1'000'000;

    void validate() const;
};

struct Trajectory {
    std::vector<double> times; ///< strictly increasing
    Matrix states;             ///< one row per time sample
    long rhs_evals = 0;

    int nx() const noexcept { return static_cast<int>(states.cols()); }
    std::size_t size() const noexcept { return times.size(); }
};

using CtRhs = std::function<Vector(double t, const Vector& x)>;
using DtMap = std::function<Vector(long step, const Vector& x)>;

/// Samples t0 + i * dt for i = 0..floor((tf - t0) / dt) (with a 1e-9 relative
/// slack so that 14 / 0.01 gives 1401 samples).
std::vector<double> uniform_grid(double t0, double tf, double dt);

/// Adaptive DOPRI5 with PI step-size control; the solution is reported on the
/// uniform dt_out grid through the method's 4th-order continuous extension.
/// Throws IntegrationError on step-size underflow, a non-finite state, or too
/// many steps.
Trajectory integrate_ct(const CtRhs& rhs, const Vector& x0, double t0, double tf, const SolverSpec& spec = {});

/// x_{k+1} = map(k, x_k) for k = 0..n_steps-1; times are 0..n_steps.
Trajectory integrate_dt(const DtMap& map, const Vector& x0, long n_steps);

} // namespace otfs
