#include "otfs/experiments.hpp"

#include "otfs/autodiff.hpp"
#include "otfs/defaults.hpp"
#include "otfs/errors.hpp"
#include "otfs/random.hpp"
#include "otfs/simulation.hpp"
#include "otfs/surrogate.hpp"
#include "otfs/systems.hpp"

#include <chrono>
#include <memory>
#include <numeric>

namespace otfs::experiments {

Settings::Settings()
    : tail_order(defaults::kTailOrder),
      search{defaults::kWidthLo, defaults::kWidthHi, defaults::kWidthGrid, defaults::kWidthRelTol},
      seed(defaults::kSeed) {
    solver.rtol = defaults::kRtol;
    solver.atol = defaults::kAtol;
    solver.dt_out = defaults::kDtOut;
    quad.intervals = defaults::kQuadratureIntervals;
}

std::vector<Vector> vdp_corners() {
    const double a = defaults::kVdpCorner;
    return {Vector{{-a, -a}}, Vector{{-a, a}}, Vector{{a, -a}}, Vector{{a, a}}};
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct TimedTrajectory {
    Trajectory traj;
    double seconds;
};

template <class Model>
TimedTrajectory timed_ct(const Model& model, const Vector& eta, const InputSignal& input, const Vector& x0, double tf,
                         const SolverSpec& solver) {
    const auto start = Clock::now();
    Trajectory traj = integrate_ct(make_ct_rhs(model, eta, input), x0, 0.0, tf, solver);
    return {std::move(traj), seconds_since(start)};
}

struct FittedVariant {
    std::shared_ptr<const Interpolant> interp;
    VariantRecord record;
};

FittedVariant fit_variant(const std::string& name, const Dictionary& dict, const Settings& s) {
    const PolyBasis basis(dict.dims().d(), s.tail_order);
    VariantRecord rec;
    rec.name = name;
    rec.snapshots = dict.size();
    double c;
    if (s.fixed_c) {
        c = *s.fixed_c;
    } else {
        const TuneResult tuned = tune_width(dict, basis, s.loocv_norm, s.search);
        c = tuned.c;
        rec.loocv_objective = tuned.objective;
    }
    rec.c = c;
    FitResult fitted = fit(dict, KernelSpec{c}, basis);
    rec.fit = fitted.report;
    rec.node_residual = max_node_residual(fitted.interpolant, dict);
    return {std::make_shared<const Interpolant>(std::move(fitted.interpolant)), std::move(rec)};
}

RunRecord compare_run(const std::string& variant, int index, const Vector& x0, std::optional<double> eta_value,
                      const TimedTrajectory& truth, const TimedTrajectory& model, double dt) {
    RunRecord r;
    r.variant = variant;
    r.index = index;
    r.x0 = x0;
    r.eta = eta_value;
    r.metrics = rmse(truth.traj, model.traj, dt);
    r.metrics.runtime_s = model.seconds;
    r.rhs_evals_true = truth.traj.rhs_evals;
    r.rhs_evals_model = model.traj.rhs_evals;
    r.runtime_true_s = truth.seconds;
    r.runtime_model_s = model.seconds;
    return r;
}

void finalize(Report& report) {
    if (report.runs.empty()) return;
    double rmse_sum = 0.0, time_sum = 0.0;
    for (const auto& r : report.runs) {
        rmse_sum += r.metrics.average_rmse;
        time_sum += r.runtime_model_s;
    }
    report.avg_rmse = rmse_sum / static_cast<double>(report.runs.size());
    report.runtime_s = time_sum / static_cast<double>(report.runs.size());
    for (auto& v : report.variants) {
        double s = 0.0, t = 0.0;
        int n = 0;
        for (const auto& r : report.runs) {
            if (r.variant != v.name) continue;
            s += r.metrics.average_rmse;
            t += r.runtime_model_s;
            ++n;
        }
        if (n > 0) {
            v.avg_rmse = s / n;
            v.avg_runtime_s = t / n;
        }
    }
}

std::string run_label(const std::string& variant, int index) { return variant + "_run" + std::to_string(index); }

} // namespace

Report run_vdp_ftc(const Settings& s) {
    Report report;
    report.experiment = "vdp-ftc";
    const VdpParams params{defaults::kVdpEta, VdpMode::ClosedLoop};
    const DynamicsFn f = vdp_dynamics(params);
    const SurrogateModel model = make_exact_model(f, s.quad);
    const Vector no_eta(0);
    const InputSignal input = zero_input(0);

    report.variants.push_back(VariantRecord{"exact", 0, {}, {}, {}, 0.0, 0.0, 0.0});
    int idx = 0;
    for (const auto& x0 : vdp_corners()) {
        const auto truth = timed_ct(f, no_eta, input, x0, defaults::kVdpHorizon, s.solver);
        const auto surr = timed_ct(model, no_eta, input, x0, defaults::kVdpHorizon, s.solver);
        report.runs.push_back(compare_run("exact", idx, x0, params.eta, truth, surr, s.solver.dt_out));
        report.trajectories.push_back({run_label("true", idx), truth.traj});
        report.trajectories.push_back({run_label("exact", idx), surr.traj});
        ++idx;
    }
    finalize(report);
    return report;
}

Report run_vdp_surrogate(const Settings& s) {
    Report report;
    report.experiment = "vdp-surrogate";
    const VdpParams params{defaults::kVdpEta, VdpMode::ClosedLoop};
    const DynamicsFn f = vdp_dynamics(params);
    const Vector no_eta(0);
    const InputSignal input = zero_input(0);

    std::vector<TimedTrajectory> truths;
    for (const auto& x0 : vdp_corners()) truths.push_back(timed_ct(f, no_eta, input, x0, defaults::kVdpHorizon, s.solver));
    for (std::size_t i = 0; i < truths.size(); ++i) report.trajectories.push_back({run_label("true", static_cast<int>(i)), truths[i].traj});

    for (int level = 1; level <= 3; ++level) {
        const std::string name = "D" + std::to_string(level);
        const Dictionary dict = generate_dictionary(f, vdp_observation_set(level));
        auto fitted = fit_variant(name, dict, s);
        report.variants.push_back(fitted.record);
        const SurrogateModel model = make_interp_model(fitted.interp, s.quad);
        const auto corners = vdp_corners();
        for (std::size_t i = 0; i < corners.size(); ++i) {
            const auto surr = timed_ct(model, no_eta, input, corners[i], defaults::kVdpHorizon, s.solver);
            report.runs.push_back(compare_run(name, static_cast<int>(i), corners[i], params.eta, truths[i], surr, s.solver.dt_out));
            report.trajectories.push_back({run_label(name, static_cast<int>(i)), surr.traj});
        }
    }
    finalize(report);
    return report;
}

Report run_vdp_param(const Settings& s) {
    Report report;
    report.experiment = "vdp-param";
    const VdpParams params{defaults::kVdpEta, VdpMode::ClosedLoop};
    const DynamicsFn f = vdp_dynamics(params, /*eta_in_z=*/true);
    const InputSignal input = zero_input(0);

    const Dictionary dict = generate_dictionary(f, vdp_observation_set(4));
    auto fitted = fit_variant("D4", dict, s);
    report.variants.push_back(fitted.record);
    const SurrogateModel model = make_interp_model(fitted.interp, s.quad);

    int idx = 0;
    for (double eta : defaults::kVdpParamEtas) {
        const Vector eta_vec = Vector::Constant(1, eta);
        for (const auto& x0 : vdp_corners()) {
            const auto truth = timed_ct(f, eta_vec, input, x0, defaults::kVdpHorizon, s.solver);
            const auto surr = timed_ct(model, eta_vec, input, x0, defaults::kVdpHorizon, s.solver);
            report.runs.push_back(compare_run("D4", idx, x0, eta, truth, surr, s.solver.dt_out));
            report.trajectories.push_back({run_label("true", idx), truth.traj});
            report.trajectories.push_back({run_label("D4", idx), surr.traj});
            ++idx;
        }
    }
    finalize(report);
    return report;
}

Report run_msd(const Settings& s) {
    Report report;
    report.experiment = "msd";
    const MsdParams params;
    const DynamicsFn f = msd_dynamics(params);
    const int n_snap = s.snapshots.value_or(defaults::kMsdSnapshots);
    const int runs = s.runs.value_or(defaults::kMsdRuns);
    if (runs < 1) throw ValidationError("msd experiment needs at least one run");

    const Dictionary dict =
        generate_dictionary(f, msd_observation_set(n_snap, s.seed, params), msd_space(params));
    auto fitted = fit_variant("Dmsd", dict, s);
    report.variants.push_back(fitted.record);
    const SurrogateModel model = make_interp_model(fitted.interp, s.quad);

    const InputSignal input = sine_input(defaults::kMsdInputAmplitude, defaults::kMsdInputFrequency);
    const Vector no_eta(0);
    for (int r = 0; r < runs; ++r) {
        Rng rng = Rng::stream(s.seed, static_cast<std::uint64_t>(r));
        Vector x0 = Vector::Zero(params.nx());
        for (int i = 0; i < params.nm; ++i) x0[i] = rng.uniform(-params.position_bound, params.position_bound);
        const auto truth = timed_ct(f, no_eta, input, x0, defaults::kMsdHorizon, s.solver);
        const auto surr = timed_ct(model, no_eta, input, x0, defaults::kMsdHorizon, s.solver);
        auto rec = compare_run("Dmsd", r, x0, std::nullopt, truth, surr, s.solver.dt_out);
        for (double v : rec.metrics.per_state_rmse) report.rmse_samples.push_back(v);
        report.runs.push_back(std::move(rec));
        if (r < s.keep_trajectories) {
            report.trajectories.push_back({run_label("true", r), truth.traj});
            report.trajectories.push_back({run_label("Dmsd", r), surr.traj});
        }
    }
    finalize(report);

    const auto& samples = report.rmse_samples;
    report.statistics["rmse_median"] = quantile(samples, 0.5);
    report.statistics["rmse_p90"] = quantile(samples, 0.9);
    report.statistics["rmse_max"] = quantile(samples, 1.0);
    report.statistics["rmse_mean"] =
        std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    report.kde = gaussian_kde(samples);
    report.statistics["kde_integral"] = trapezoid(report.kde->grid, report.kde->density);
    return report;
}

const std::vector<std::string>& names() {
    static const std::vector<std::string> n{"vdp-ftc", "vdp-surrogate", "vdp-param", "msd"};
    return n;
}

Report run(const std::string& name, const Settings& settings) {
    if (name == "vdp-ftc") return run_vdp_ftc(settings);
    if (name == "vdp-surrogate") return run_vdp_surrogate(settings);
    if (name == "vdp-param") return run_vdp_param(settings);
    if (name == "msd") return run_msd(settings);
    throw ValidationError("unknown experiment '" + name + "'");
}

} // namespace otfs::experiments
