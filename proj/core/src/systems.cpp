#include "otfs/systems.hpp"

#include "otfs/errors.hpp"
#include "otfs/random.hpp"

#include <cmath>
#include <numbers>

namespace otfs {

void VdpParams::validate() const {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw PreconditionError("Van der Pol eta must be positive");
}

Vector vdp_rhs(const VdpParams& params, const Vector& x, double u) {
    if (x.size() != 2) throw DimensionError("Van der Pol state has 2 entries");
    const double uu = params.mode == VdpMode::ClosedLoop ? -x[0] * x[1] : u;
    const auto out = vdp_rhs_generic<double>(x[0], x[1], uu, params.eta);
    return Vector{{out[0], out[1]}};
}

DynamicsFn vdp_dynamics(const VdpParams& params, bool eta_in_z) {
    params.validate();
    const bool closed = params.mode == VdpMode::ClosedLoop;
    const Dims dims(2, closed ? 0 : 1, eta_in_z ? 1 : 0);
    const double fixed_eta = params.eta;
    return DynamicsFn(dims, [closed, eta_in_z, fixed_eta](auto x, auto u, auto eta) {
        using T = std::remove_cv_t<typename decltype(x)::element_type>;
        const T e = eta_in_z ? eta[0] : T(fixed_eta);
        const T uu = closed ? T(-(x[0] * x[1])) : u[0];
        return vdp_rhs_generic<T>(x[0], x[1], uu, e);
    });
}

std::vector<Vector> vdp_observation_set(int level) {
    if (level < 1 || level > 4) throw ValidationError("Van der Pol observation set level must be 1..4");
    std::vector<double> x1_vals, x2_vals;
    if (level == 1) {
        x1_vals = {-2, 0, 2};
        x2_vals = {-2, 0, 2};
    } else if (level == 2) {
        x1_vals = {-2, 0, 2};
        x2_vals = {-2, -1, 0, 1, 2};
    } else {
        x1_vals = {-2, -1, 0, 1, 2};
        x2_vals = {-2, -1, 0, 1, 2};
    }
    std::vector<Vector> pts;
    if (level < 4) {
        for (double a : x1_vals)
            for (double b : x2_vals) pts.push_back(Vector{{a, b}});
    } else {
        for (double e : {0.3, 0.5, 0.6})
            for (double a : x1_vals)
                for (double b : x2_vals) pts.push_back(Vector{{a, b, e}});
    }
    return pts;
}

void MsdParams::validate() const {
    if (nm < 2) throw PreconditionError("mass-spring-damper chain needs at least 2 masses");
    if (!(m > 0.0) || !(k1 > 0.0) || !(b1 > 0.0) || !(b2 > 0.0))
        throw PreconditionError("mass-spring-damper parameters must be positive");
    if (!(position_bound > 0.0) || !(velocity_bound > 0.0) || !(input_bound > 0.0))
        throw PreconditionError("mass-spring-damper operating bounds must be positive");
    if (2 * nm + 1 > kMaxDirections)
        throw PreconditionError("mass-spring-damper chain too long for forward-mode linearization");
}

Vector msd_rhs(const MsdParams& params, const Vector& x, double u) {
    if (x.size() != params.nx()) throw DimensionError("mass-spring-damper state has wrong length");
    const auto out = msd_rhs_generic<double>(params, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())), u);
    return Eigen::Map<const Vector>(out.data(), static_cast<Eigen::Index>(out.size()));
}

DynamicsFn msd_dynamics(const MsdParams& params) {
    params.validate();
    return DynamicsFn(Dims(params.nx(), 1, 0), [params](auto x, auto u, auto /*eta*/) {
        using T = std::remove_cv_t<typename decltype(x)::element_type>;
        return msd_rhs_generic<T>(params, x, u[0]);
    });
}

double msd_input(double t) { return 0.7 * std::sin(2.0 * std::numbers::pi * t); }

OperatingSpace msd_space(const MsdParams& params) {
    params.validate();
    const int d = params.nx() + 1;
    Vector hi(d);
    hi.head(params.nm).setConstant(params.position_bound);
    hi.segment(params.nm, params.nm).setConstant(params.velocity_bound);
    hi[d - 1] = params.input_bound;
    return OperatingSpace(-hi, hi);
}

std::vector<Vector> msd_observation_set(int n, std::uint64_t seed, const MsdParams& params) {
    if (n < 1) throw ValidationError("observation set size must be >= 1");
    const OperatingSpace box = msd_space(params);
    Rng rng(seed);
    std::vector<Vector> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        Vector z(box.dim());
        for (int i = 0; i < box.dim(); ++i) z[i] = rng.uniform(box.lower()[i], box.upper()[i]);
        pts.push_back(std::move(z));
    }
    return pts;
}

DynamicsFn make_system(const SystemConfig& config) {
    if (config.name == "vdp") return vdp_dynamics(config.vdp, config.eta_in_z);
    if (config.name == "msd") return msd_dynamics(config.msd);
    throw ValidationError("unknown system '" + config.name + "' (expected vdp or msd)");
}

} // namespace otfs
