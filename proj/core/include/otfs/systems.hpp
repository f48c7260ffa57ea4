#pragma once

// Built-in reference systems: the Van der Pol oscillator and a chain of
// nonlinear mass-spring-damper systems, with their observation sets.

#include "otfs/autodiff.hpp"
#include "otfs/core_model.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace otfs {

// ---------------------------------------------------------------------------
// Van der Pol
//   x1' = x2
//   x2' = -x1 - eta x2 (1 - x1^2) + x1 u
// Closed loop substitutes the feedback u = -x1 x2 (nu = 0).
// ---------------------------------------------------------------------------

enum class VdpMode { OpenLoop, ClosedLoop };

struct VdpParams {
    double eta = 0.5;
    VdpMode mode = VdpMode::ClosedLoop;

    void validate() const;
};

template <class T>
std::vector<T> vdp_rhs_generic(const T& x1, const T& x2, const T& u, const T& eta) {
    return {x2, -x1 - eta * x2 * (1.0 - x1 * x1) + x1 * u};
}

/// u is ignored in closed-loop mode.
Vector vdp_rhs(const VdpParams& params, const Vector& x, double u = 0.0);

/// dims (2, nu, neta) with nu = 1 for open loop and 0 for closed loop.
/// With `eta_in_z` the damping is read from the parameter slot (neta = 1)
/// instead of params.eta.
DynamicsFn vdp_dynamics(const VdpParams& params, bool eta_in_z = false);

/// Table levels 1..3: {-2,0,2}^2, {-2,0,2} x {-2..2}, {-2..2}^2; level 4 adds
/// eta in {0.3, 0.5, 0.6} as a third coordinate.
std::vector<Vector> vdp_observation_set(int level);

// ---------------------------------------------------------------------------
// Mass-spring-damper chain. State: positions x1..x_nm, then velocities.
//   m a_1  = -F_1 - F_{1,2}
//   m a_i  = -F_i - F_{i,i-1} - F_{i,i+1}
//   m a_nm = -F_nm - F_{nm,nm-1} + u
//   F_{i,j} = k1 (x_i - x_j) + b1 (v_i - v_j) + (x_i - x_j)^3 + b2 (v_i - v_j)^3
//   F_i     = k1 x_i + b1 v_i
// The linear coupling damper acts on the velocity difference.
// ---------------------------------------------------------------------------

struct MsdParams {
    int nm = 5;
    double m = 1.0;
    double k1 = 0.5;
    double b1 = 1.0;
    double b2 = 2.0;
    double position_bound = 2.2;
    double velocity_bound = 1.5;
    double input_bound = 1.5;

    void validate() const;
    int nx() const noexcept { return 2 * nm; }
};

template <class T>
std::vector<T> msd_rhs_generic(const MsdParams& p, std::span<const T> x, const T& u) {
    const int nm = p.nm;
    std::vector<T> dx(static_cast<std::size_t>(2 * nm));
    auto pos = [&](int i) -> const T& { return x[static_cast<std::size_t>(i)]; };
    auto vel = [&](int i) -> const T& { return x[static_cast<std::size_t>(nm + i)]; };
    auto coupling = [&](int i, int j) {
        const T dp = pos(i) - pos(j);
        const T dv = vel(i) - vel(j);
        return p.k1 * dp + p.b1 * dv + dp * dp * dp + p.b2 * dv * dv * dv;
    };
    for (int i = 0; i < nm; ++i) {
        dx[static_cast<std::size_t>(i)] = vel(i);
        T force = -(p.k1 * pos(i) + p.b1 * vel(i));
        if (i > 0) force = force - coupling(i, i - 1);
        if (i < nm - 1) force = force - coupling(i, i + 1);
        if (i == nm - 1) force = force + u;
        dx[static_cast<std::size_t>(nm + i)] = force / p.m;
    }
    return dx;
}

Vector msd_rhs(const MsdParams& params, const Vector& x, double u);
/// dims (2 nm, 1, 0)
DynamicsFn msd_dynamics(const MsdParams& params);
/// u(t) = 0.7 sin(2 pi t)
double msd_input(double t);
/// Box over z = (positions, velocities, u).
OperatingSpace msd_space(const MsdParams& params);
/// n points drawn uniformly from msd_space with a seeded generator.
std::vector<Vector> msd_observation_set(int n, std::uint64_t seed, const MsdParams& params = {});

// ---------------------------------------------------------------------------
// Registry used by the command-line tool.
// ---------------------------------------------------------------------------

struct SystemConfig {
    std::string name = "vdp"; ///< "vdp" or "msd"
    VdpParams vdp;
    MsdParams msd;
    bool eta_in_z = false;    ///< vdp only
};

DynamicsFn make_system(const SystemConfig& config);

} // namespace otfs
