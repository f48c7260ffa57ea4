#pragma once

// Canned end-to-end experiments: dictionary generation, width tuning, fitting,
// and paired true/surrogate simulations with RMSE metrics.

#include "otfs/interpolant.hpp"
#include "otfs/loocv.hpp"
#include "otfs/metrics.hpp"
#include "otfs/ode.hpp"
#include "otfs/quadrature.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace otfs::experiments {

struct Settings {
    SolverSpec solver;
    QuadratureSpec quad;
    int tail_order;
    WidthSearchSpec search;
    NormKind loocv_norm = NormKind::Inf;
    std::optional<double> fixed_c; ///< skip tuning when set
    std::uint64_t seed;
    std::optional<int> runs;       ///< msd only; default 1000
    std::optional<int> snapshots;  ///< msd only; default 100
    int keep_trajectories = 3;     ///< msd only: run pairs kept for export

    Settings();
};

struct RunRecord {
    std::string variant;
    int index = 0;
    Vector x0;
    std::optional<double> eta;
    ErrorMetrics metrics;
    long rhs_evals_true = 0;
    long rhs_evals_model = 0;
    double runtime_true_s = 0.0;
    double runtime_model_s = 0.0;
};

struct VariantRecord {
    std::string name;
    std::size_t snapshots = 0;
    std::optional<double> c;
    std::optional<double> loocv_objective;
    std::optional<FitReport> fit;
    double node_residual = 0.0;
    double avg_rmse = 0.0;
    double avg_runtime_s = 0.0;
};

struct NamedTrajectory {
    std::string name;
    Trajectory trajectory;
};

struct Report {
    std::string experiment;
    std::vector<VariantRecord> variants;
    std::vector<RunRecord> runs;
    double avg_rmse = 0.0;  ///< mean over runs of the per-run average RMSE
    double runtime_s = 0.0; ///< mean surrogate simulation time per run
    std::map<std::string, double> statistics;
    std::vector<double> rmse_samples; ///< msd: per-state RMSE of every run
    std::optional<KdeCurve> kde;
    std::vector<NamedTrajectory> trajectories;
};

std::vector<Vector> vdp_corners();

/// Closed-loop Van der Pol (eta 0.5) simulated with the true rhs and with the
/// exact-linearization surrogate.
Report run_vdp_ftc(const Settings& settings = {});
/// Interpolated surrogates from the three nested observation sets.
Report run_vdp_surrogate(const Settings& settings = {});
/// Parameter-varying surrogate (eta in z) evaluated at eta values off the grid.
Report run_vdp_param(const Settings& settings = {});
/// Mass-spring-damper chain with random snapshots and random initial positions.
Report run_msd(const Settings& settings = {});

Report run(const std::string& name, const Settings& settings = {});
const std::vector<std::string>& names();

} // namespace otfs::experiments
