#include "app.hpp"

#include "model_spec.hpp"
#include "report_json.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace otfs::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct SolverFlags {
    double rtol = defaults::kRtol;
    double atol = defaults::kAtol;
    double dt = defaults::kDtOut;
    int k = defaults::kQuadratureIntervals;

    SolverSpec solver() const {
        SolverSpec s;
        s.rtol = rtol;
        s.atol = atol;
        s.dt_out = dt;
        s.validate();
        return s;
    }
    QuadratureSpec quad() const {
        if (k < 1) throw ValidationError("quadrature needs k >= 1 intervals");
        return QuadratureSpec{k};
    }
};

void add_system_flags(CLI::App* cmd, SystemFlags& f) {
    cmd->add_option("--system", f.system, "Built-in system: vdp or msd")->capture_default_str();
    cmd->add_option("--eta", f.eta, "Van der Pol damping (also the parameter fed to eta-dependent surrogates)")
        ->capture_default_str();
    cmd->add_option("--mode", f.mode, "Van der Pol loop: closed (u = -x1 x2) or open")->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--rtol", f.rtol, "Relative tolerance")->capture_default_str();
    cmd->add_option("--atol", f.atol, "Absolute tolerance")->capture_default_str();
    cmd->add_option("--dt", f.dt, "Output sampling step [s]")->capture_default_str();
    cmd->add_option("--k", f.k, "Composite 3/8-rule intervals for surrogate evaluation")->capture_default_str();
}

std::pair<double, double> parse_tspan(const std::string& text) {
    const auto v = parse_list(text);
    if (v.size() == 1) return {0.0, v[0]};
    if (v.size() == 2) return {v[0], v[1]};
    throw ValidationError("tspan is <tf> or <t0>,<tf>");
}

Vector to_vector(const std::vector<double>& v) {
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::uint64_t seed_from_env() {
    const char* env = std::getenv("OTFS_SEED");
    if (env == nullptr || *env == '\0') return defaults::kSeed;
    try {
        std::size_t pos = 0;
        const auto v = std::stoull(env, &pos);
        if (pos == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string("OTFS_SEED='") + env + "' is not an unsigned integer");
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    out << text;
    if (!out) throw Error("failed writing '" + path.string() + "'");
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    SystemFlags sys;
    std::string points;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
    const PointsSpec ps = parse_points_spec(a.points);
    SystemFlags flags = a.sys;
    std::vector<Vector> points;
    std::optional<OperatingSpace> space;

    if (ps.level > 0) {
        if (flags.system != "vdp") throw ValidationError("named point sets theta1..theta4 belong to the vdp system");
        if (ps.level == 4) flags.eta_in_z = true;
        const SystemConfig cfg = system_config(flags);
        const bool open = cfg.vdp.mode == VdpMode::OpenLoop;
        for (const auto& p : vdp_observation_set(ps.level)) {
            std::vector<double> z{p[0], p[1]};
            if (open) z.push_back(0.0);
            if (flags.eta_in_z) z.push_back(ps.level == 4 ? p[2] : flags.eta);
            points.push_back(to_vector(z));
        }
    } else {
        if (flags.system != "msd") throw ValidationError("random point sets are only defined for the msd system");
        const MsdParams params;
        points = msd_observation_set(ps.random, a.seed, params);
        space = msd_space(params);
    }

    const DynamicsFn f = make_system(system_config(flags));
    const Dictionary dict = generate_dictionary(f, points, space);
    save_dictionary(dict, a.out);
    const Dims& d = dict.dims();
    out << "wrote " << a.out << ": N=" << dict.size() << " d=" << d.d() << " (nx=" << d.nx << ", nu=" << d.nu
        << ", neta=" << d.neta << ")\n";
    return kOk;
}

// --------------------------------------------------------------------- fit

struct FitArgs {
    std::string dict;
    std::string out;
    std::optional<double> c;
    int m = defaults::kTailOrder;
    std::string norm = "inf";
    double c_lo = defaults::kWidthLo;
    double c_hi = defaults::kWidthHi;
    int grid = defaults::kWidthGrid;
    std::string format = "text";
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
    const Dictionary dict = load_dictionary(a.dict);
    NormKind norm;
    if (a.norm == "inf") norm = NormKind::Inf;
    else if (a.norm == "2") norm = NormKind::Two;
    else throw ValidationError("norm must be 'inf' or '2'");
    const PolyBasis basis(dict.dims().d(), a.m);

    double c;
    std::optional<double> objective;
    int evaluations = 0;
    if (a.c) {
        c = *a.c;
        if (dict.size() >= 2) objective = loocv_objective(dict, KernelSpec{c}, basis, norm);
    } else {
        const TuneResult tuned = tune_width(dict, basis, norm, WidthSearchSpec{a.c_lo, a.c_hi, a.grid, defaults::kWidthRelTol});
        c = tuned.c;
        objective = tuned.objective;
        evaluations = tuned.evaluations;
    }
    const FitResult fitted = fit(dict, KernelSpec{c}, basis);
    save_interpolant(fitted.interpolant, a.out);
    const double node_res = max_node_residual(fitted.interpolant, dict);

    if (a.format == "json") {
        ordered_json j;
        j["c"] = c;
        j["width"] = a.c ? "fixed" : "tuned";
        j["loocv_objective"] = objective ? ordered_json(*objective) : ordered_json(nullptr);
        j["tuning_evaluations"] = evaluations;
        j["fit"] = fit_report_to_json(fitted.report);
        j["node_residual"] = node_res;
        j["out"] = a.out;
        out << j.dump(2) << "\n";
    } else {
        out << "c* = " << fmt(c) << " (" << (a.c ? "fixed" : "tuned") << ")\n";
        out << "loocv objective = " << (objective ? fmt(*objective) : std::string("n/a (N < 2)")) << "\n";
        out << "fit residual = " << fmt(fitted.report.residual_norm) << "\n";
        out << "condition estimate = " << fmt(fitted.report.condition_estimate) << "\n";
        out << "node residual = " << fmt(node_res) << "\n";
        out << "wrote " << a.out << "\n";
    }
    return kOk;
}

// -------------------------------------------------------------------- eval

struct EvalArgs {
    std::string interp;
    std::string z;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
    const Interpolant interp = load_interpolant(a.interp);
    const Matrix M = interp.eval(to_vector(parse_list(a.z)));
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index j = 0; j < M.cols(); ++j) out << (j ? "," : "") << fmt(M(i, j));
        out << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string model;
    SystemFlags sys;
    SolverFlags solver;
    std::string x0;
    std::string tspan;
    std::string input;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
    const Model model = build_model(parse_model_spec(a.model), a.sys, a.solver.quad(), a.input);
    const Vector x0 = to_vector(parse_list(a.x0));
    if (x0.size() != model.dims.nx)
        throw DimensionError("x0 has " + std::to_string(x0.size()) + " entries, model has nx = " +
                             std::to_string(model.dims.nx));
    const auto [t0, tf] = parse_tspan(a.tspan);
    const Trajectory traj = integrate_ct(model.rhs, x0, t0, tf, a.solver.solver());
    const std::string summary =
        "rows=" + std::to_string(traj.size()) + " rhs_evals=" + std::to_string(traj.rhs_evals) + "\n";
    if (a.out.empty()) {
        out << trajectory_to_csv(traj);
        err << summary;
    } else {
        write_file(a.out, trajectory_to_csv(traj));
        out << "wrote " << a.out << ": " << summary;
    }
    return kOk;
}

// ----------------------------------------------------------------- compare

struct CompareArgs {
    std::string a;
    std::string b;
    SystemFlags sys;
    SolverFlags solver;
    std::string x0 = "corners";
    std::string tspan = "14";
    std::string input;
    std::string format = "csv";
    std::string out;
};

int cmd_compare(const CompareArgs& a, std::ostream& out) {
    if (a.format != "csv" && a.format != "json") throw ValidationError("format must be csv or json");
    const Model ma = build_model(parse_model_spec(a.a), a.sys, a.solver.quad(), a.input);
    const Model mb = build_model(parse_model_spec(a.b), a.sys, a.solver.quad(), a.input);
    if (ma.dims.nx != mb.dims.nx) throw DimensionError("compared models have different state dimensions");
    const auto [t0, tf] = parse_tspan(a.tspan);
    const SolverSpec spec = a.solver.solver();

    using Clock = std::chrono::steady_clock;
    auto timed = [&](const Model& m, const Vector& x0) {
        const auto start = Clock::now();
        Trajectory t = integrate_ct(m.rhs, x0, t0, tf, spec);
        return std::make_pair(std::move(t), std::chrono::duration<double>(Clock::now() - start).count());
    };

    ordered_json runs = ordered_json::array();
    std::ostringstream csv;
    csv << "run,average_rmse";
    for (int i = 0; i < ma.dims.nx; ++i) csv << ",x" << i + 1 << "_rmse";
    csv << ",runtime_a_s,runtime_b_s\n";
    double rmse_sum = 0.0, time_sum = 0.0;
    const auto x0s = parse_point_set(a.x0);
    for (std::size_t r = 0; r < x0s.size(); ++r) {
        if (x0s[r].size() != ma.dims.nx) throw DimensionError("initial state " + std::to_string(r) + " has wrong length");
        const auto [ta, sa] = timed(ma, x0s[r]);
        const auto [tb, sb] = timed(mb, x0s[r]);
        const ErrorMetrics m = rmse(ta, tb, spec.dt_out);
        rmse_sum += m.average_rmse;
        time_sum += sb;
        csv << r << "," << fmt(m.average_rmse);
        for (double v : m.per_state_rmse) csv << "," << fmt(v);
        csv << "," << fmt(sa) << "," << fmt(sb) << "\n";
        ordered_json j;
        j["index"] = r;
        j["x0"] = std::vector<double>(x0s[r].data(), x0s[r].data() + x0s[r].size());
        j["per_state_rmse"] = m.per_state_rmse;
        j["average_rmse"] = m.average_rmse;
        j["runtime_a_s"] = sa;
        j["runtime_s"] = sb;
        runs.push_back(std::move(j));
    }
    const double n = static_cast<double>(x0s.size());
    csv << "mean," << fmt(rmse_sum / n) << "\n";

    std::string text;
    if (a.format == "json") {
        ordered_json doc;
        doc["experiment"] = "compare";
        doc["a"] = a.a;
        doc["b"] = a.b;
        doc["runs"] = std::move(runs);
        doc["aggregate"] = {{"avg_rmse", rmse_sum / n}, {"runtime_s", time_sum / n}};
        text = doc.dump(2) + "\n";
    } else {
        text = csv.str();
    }
    if (a.out.empty()) out << text;
    else {
        write_file(a.out, text);
        out << "wrote " << a.out << ": average RMSE " << fmt(rmse_sum / n) << "\n";
    }
    return kOk;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
    std::string name;
    std::optional<int> runs;
    std::optional<int> snapshots;
    std::optional<double> c;
    std::uint64_t seed = 0;
    std::string out_dir;
    int keep = 3;
};

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    const auto& names = experiments::names();
    if (std::find(names.begin(), names.end(), a.name) == names.end())
        throw ValidationError("unknown benchmark '" + a.name + "'");
    experiments::Settings s;
    s.seed = a.seed;
    s.runs = a.runs;
    s.snapshots = a.snapshots;
    s.fixed_c = a.c;
    s.keep_trajectories = a.keep;
    const fs::path dir = a.out_dir.empty() ? fs::path("bench_" + a.name) : fs::path(a.out_dir);
    const auto& known = experiments::names();
    if (std::find(known.begin(), known.end(), a.name) == known.end())
        throw ValidationError("unknown experiment '" + a.name + "'");
    fs::create_directories(dir / "trajectories");

    experiments::Report report;
    try {
        report = experiments::run(a.name, s);
    } catch (const std::exception& e) {
        ordered_json doc;
        doc["experiment"] = a.name;
        doc["error"] = e.what();
        write_file(dir / "metrics.json", doc.dump(2) + "\n");
        throw;
    }

    write_file(dir / "metrics.json", report_to_json(report).dump(2) + "\n");
    for (const auto& t : report.trajectories) save_trajectory_csv(t.trajectory, dir / "trajectories" / (t.name + ".csv"));
    if (report.kde) {
        save_kde_csv(*report.kde, dir / "kde.csv");
        std::string samples = "rmse\n";
        for (double v : report.rmse_samples) samples += fmt(v) + "\n";
        write_file(dir / "rmse_samples.csv", samples);
    }

    out << report.experiment << ": " << report.runs.size() << " runs\n";
    for (const auto& v : report.variants) {
        out << "  " << v.name;
        if (v.snapshots) out << " N=" << v.snapshots;
        if (v.c) out << " c=" << fmt(*v.c);
        out << " avg_rmse=" << fmt(v.avg_rmse) << "\n";
    }
    for (const auto& [k, v] : report.statistics) out << "  " << k << "=" << fmt(v) << "\n";
    out << "  aggregate avg_rmse=" << fmt(report.avg_rmse) << "\n";
    out << "wrote " << (dir / "metrics.json").string() << "\n";
    return kOk;
}

void show_defaults(std::ostream& out) {
    out << "# otfs defaults table v" << defaults::kTableVersion << "\n";
    for (const auto& e : defaults::table()) {
        out << e.key << " = " << e.value;
        if (!e.note.empty()) out << "  # " << e.note;
        out << "\n";
    }
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"On-the-fly surrogate modelling of nonlinear dynamics from local linearizations", "otfs"};
    app.require_subcommand(0, 1);
    bool defaults_flag = false;
    app.add_flag("--show-defaults", defaults_flag, "Print the table of default settings and exit");

    std::uint64_t env_seed = defaults::kSeed;
    try {
        env_seed = seed_from_env();
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    GenerateArgs gen;
    gen.seed = env_seed;
    auto* g = app.add_subcommand("generate", "Linearize a built-in system on a point set and save the dictionary");
    add_system_flags(g, gen.sys);
    g->add_option("--points", gen.points, "theta1..theta4 (vdp) or random:N (msd)")->required();
    g->add_option("--seed", gen.seed, "PRNG seed (falls back to OTFS_SEED)")->capture_default_str();
    g->add_option("--out", gen.out, "Output dictionary JSON")->required();

    FitArgs fa;
    auto* f = app.add_subcommand("fit", "Fit the interpolant of a dictionary, tuning the width unless --c is given");
    f->add_option("dict,--dict", fa.dict, "Dictionary JSON")->required();
    f->add_option("--out", fa.out, "Output interpolant JSON")->required();
    f->add_option("--c", fa.c, "Fixed kernel width (skips tuning)");
    f->add_option("--m", fa.m, "Polynomial tail order")->capture_default_str();
    f->add_option("--norm", fa.norm, "LOOCV norm: inf or 2")->capture_default_str();
    f->add_option("--c-lo", fa.c_lo, "Width search lower bound")->capture_default_str();
    f->add_option("--c-hi", fa.c_hi, "Width search upper bound")->capture_default_str();
    f->add_option("--grid", fa.grid, "Coarse width grid size")->capture_default_str();
    f->add_option("--format", fa.format, "Report format: text or json")->capture_default_str();

    EvalArgs ea;
    auto* e = app.add_subcommand("eval", "Evaluate an interpolant at a point and print the linearization matrix");
    e->add_option("interp,--interp", ea.interp, "Interpolant JSON")->required();
    e->add_option("--z", ea.z, "Comma-separated point (x, u, eta)")->required();

    SimulateArgs sa;
    auto* s = app.add_subcommand("simulate", "Simulate a model and write the trajectory CSV");
    s->add_option("model,--model", sa.model, "true:<system>, exact:<system> or surrogate:<interpolant>")->required();
    add_system_flags(s, sa.sys);
    add_solver_flags(s, sa.solver);
    s->add_option("--x0", sa.x0, "Comma-separated initial state")->required();
    s->add_option("--tspan", sa.tspan, "<tf> or <t0>,<tf> in seconds")->required();
    s->add_option("--input", sa.input, "zero, msd, const:<v..>, sine:<amp>,<freq>");
    s->add_option("--out", sa.out, "Output CSV (stdout when omitted)");

    CompareArgs ca;
    auto* c = app.add_subcommand("compare", "RMSE between two models over a set of initial states");
    c->add_option("--a", ca.a, "Reference model spec")->required();
    c->add_option("--b", ca.b, "Compared model spec")->required();
    add_system_flags(c, ca.sys);
    add_solver_flags(c, ca.solver);
    c->add_option("--x0", ca.x0, "'corners' or x,y;x,y;...")->capture_default_str();
    c->add_option("--tspan", ca.tspan, "<tf> or <t0>,<tf> in seconds")->capture_default_str();
    c->add_option("--input", ca.input, "zero, msd, const:<v..>, sine:<amp>,<freq>");
    c->add_option("--format", ca.format, "csv or json")->capture_default_str();
    c->add_option("--out", ca.out, "Output file (stdout when omitted)");

    BenchArgs ba;
    ba.seed = env_seed;
    auto* b = app.add_subcommand("bench", "Run a canned experiment: vdp-ftc, vdp-surrogate, vdp-param or msd");
    b->add_option("name", ba.name, "Experiment name")->required();
    b->add_option("--runs", ba.runs, "Number of msd runs (default 1000)");
    b->add_option("--snapshots", ba.snapshots, "Number of msd snapshots (default 100)");
    b->add_option("--c", ba.c, "Fixed kernel width instead of tuning");
    b->add_option("--seed", ba.seed, "PRNG seed (falls back to OTFS_SEED)")->capture_default_str();
    b->add_option("--out-dir", ba.out_dir, "Output directory (default bench_<name>)");
    b->add_option("--keep", ba.keep, "msd runs whose trajectories are written")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        const int code = app.exit(ex, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (defaults_flag) {
            show_defaults(out);
            return kOk;
        }
        if (*g) return cmd_generate(gen, out);
        if (*f) return cmd_fit(fa, out);
        if (*e) return cmd_eval(ea, out);
        if (*s) return cmd_simulate(sa, out, err);
        if (*c) return cmd_compare(ca, out);
        if (*b) return cmd_bench(ba, out);
        err << app.help();
        return kUsage;
    } catch (const IntegrationError& ex) {
        err << "integration error at t=" << ex.last_time() << ": " << ex.what() << "\n";
        return kIntegration;
    } catch (const NumericalError& ex) {
        err << "numerical error: " << ex.what() << "\n";
        return kFit;
    } catch (const ValidationError& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return kUsage;
    } catch (const std::exception& ex) {
        err << "internal error: " << ex.what() << "\n";
        return 1;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"otfs"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace otfs::cli
