#include "otfs/defaults.hpp"

#include "otfs/trajectory_io.hpp"

namespace otfs::defaults {

std::vector<Entry> table() {
    auto num = [](double v) { return format_double(v); };
    return {
        {"table_version", kTableVersion, ""},
        {"quadrature.rule", "composite-simpson-3/8", ""},
        {"quadrature.intervals", std::to_string(kQuadratureIntervals), "panels; 3k+1 nodes"},
        {"kernel.kind", "multiquadric", "-sqrt(c^2 + |z|^2)"},
        {"basis.m", std::to_string(kTailOrder), "affine tail"},
        {"width.search", "log-grid + golden-section", "replaces Bayesian optimization"},
        {"width.c_lo", num(kWidthLo), ""},
        {"width.c_hi", num(kWidthHi), ""},
        {"width.n_grid", std::to_string(kWidthGrid), ""},
        {"width.rel_tol", num(kWidthRelTol), ""},
        {"width.loocv_norm", "inf", "induced matrix norm"},
        {"fit.condition_threshold", num(kConditionThreshold), ""},
        {"solver.method", "dormand-prince-4(5)", ""},
        {"solver.rtol", num(kRtol), ""},
        {"solver.atol", num(kAtol), ""},
        {"solver.max_step", "span/10", ""},
        {"solver.dt_out", num(kDtOut), "s"},
        {"seed", std::to_string(kSeed), "OTFS_SEED overrides when --seed is absent"},
        {"vdp.eta", num(kVdpEta), ""},
        {"vdp.mode", "closed-loop", "u = -x1 x2"},
        {"vdp.horizon", num(kVdpHorizon), "s"},
        {"vdp.initial_conditions", "(-2,-2) (-2,2) (2,-2) (2,2)", ""},
        {"vdp-param.eta", "0.35 0.47", ""},
        {"msd.masses", "5", ""},
        {"msd.m", "1", "kg"},
        {"msd.k1", "0.5", "N/m"},
        {"msd.b1", "1", "Ns/m, acts on velocity difference"},
        {"msd.b2", "2", "Ns/m"},
        {"msd.cubic_spring", "1", "N/m^3"},
        {"msd.snapshots", std::to_string(kMsdSnapshots), ""},
        {"msd.runs", std::to_string(kMsdRuns), ""},
        {"msd.horizon", num(kMsdHorizon), "s"},
        {"msd.input", "0.7 sin(2 pi t)", "N"},
    };
}

} // namespace otfs::defaults
