#include "otfs/autodiff.hpp"

#include "otfs/errors.hpp"

#include <sstream>
#include <string>

namespace otfs {

namespace {

std::string describe_point(const Vector& z) {
    std::ostringstream os;
    os.precision(17);
    os << "(";
    for (Eigen::Index i = 0; i < z.size(); ++i) os << (i ? ", " : "") << z[i];
    os << ")";
    return os.str();
}

void check_lengths(const Dims& dims, const Vector& x, const Vector& u, const Vector& eta) {
    if (x.size() != dims.nx || u.size() != dims.nu || eta.size() != dims.neta)
        throw DimensionError("dynamics argument lengths do not match dims");
}

} // namespace

Vector DynamicsFn::operator()(const Vector& x, const Vector& u, const Vector& eta) const {
    check_lengths(dims_, x, u, eta);
    auto out = real_(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())),
                     std::span<const double>(u.data(), static_cast<std::size_t>(u.size())),
                     std::span<const double>(eta.data(), static_cast<std::size_t>(eta.size())));
    if (static_cast<int>(out.size()) != dims_.nx)
        throw DimensionError("dynamics returned " + std::to_string(out.size()) + " entries, expected " +
                             std::to_string(dims_.nx));
    return Eigen::Map<const Vector>(out.data(), static_cast<Eigen::Index>(out.size()));
}

Vector DynamicsFn::operator()(const Vector& z) const {
    auto p = unstack_z(dims_, z);
    return (*this)(p.x, p.u, p.eta);
}

std::vector<Dual> DynamicsFn::eval_dual(std::span<const Dual> x, std::span<const Dual> u,
                                        std::span<const Dual> eta) const {
    auto out = dual_(x, u, eta);
    if (static_cast<int>(out.size()) != dims_.nx)
        throw DimensionError("dynamics returned " + std::to_string(out.size()) + " entries, expected " +
                             std::to_string(dims_.nx));
    return out;
}

Snapshot linearize(const DynamicsFn& f, const Vector& x, const Vector& u, const Vector& eta) {
    const Dims& dims = f.dims();
    check_lengths(dims, x, u, eta);
    const int k = dims.jac_cols();
    if (k > kMaxDirections)
        throw DimensionError("nx + nu = " + std::to_string(k) + " exceeds the forward-mode capacity of " +
                             std::to_string(kMaxDirections) + " directions");

    std::vector<Dual> xd, ud, ed;
    xd.reserve(static_cast<std::size_t>(dims.nx));
    ud.reserve(static_cast<std::size_t>(dims.nu));
    ed.reserve(static_cast<std::size_t>(dims.neta));
    for (int i = 0; i < dims.nx; ++i) xd.push_back(Dual::variable(x[i], i, k));
    for (int i = 0; i < dims.nu; ++i) ud.push_back(Dual::variable(u[i], dims.nx + i, k));
    for (int i = 0; i < dims.neta; ++i) ed.emplace_back(eta[i]);

    const auto out = f.eval_dual(xd, ud, ed);

    Snapshot s{stack_z(dims, x, u, eta), Matrix(dims.nx, k)};
    for (int i = 0; i < dims.nx; ++i) {
        if (!std::isfinite(out[static_cast<std::size_t>(i)].value()))
            throw EvaluationError("non-finite dynamics value at z = " + describe_point(s.z));
        for (int j = 0; j < k; ++j) s.M(i, j) = out[static_cast<std::size_t>(i)].d(j);
    }
    if (!s.M.allFinite()) throw EvaluationError("non-finite linearization at z = " + describe_point(s.z));
    return s;
}

Snapshot linearize(const DynamicsFn& f, const Vector& z) {
    auto p = unstack_z(f.dims(), z);
    return linearize(f, p.x, p.u, p.eta);
}

Matrix finite_diff_jacobian(const DynamicsFn& f, const Vector& x, const Vector& u, const Vector& eta,
                            double h) {
    if (!(h > 0.0)) throw PreconditionError("finite-difference step must be positive");
    const Dims& dims = f.dims();
    check_lengths(dims, x, u, eta);
    Matrix J(dims.nx, dims.jac_cols());
    Vector xp = x, up = u;
    for (int j = 0; j < dims.jac_cols(); ++j) {
        double& coord = j < dims.nx ? xp[j] : up[j - dims.nx];
        const double saved = coord;
        coord = saved + h;
        const Vector fp = f(xp, up, eta);
        coord = saved - h;
        const Vector fm = f(xp, up, eta);
        coord = saved;
        J.col(j) = (fp - fm) / (2.0 * h);
    }
    if (!J.allFinite())
        throw EvaluationError("non-finite finite-difference Jacobian at z = " +
                              describe_point(stack_z(dims, x, u, eta)));
    return J;
}

Dictionary generate_dictionary(const DynamicsFn& f, const std::vector<Vector>& points,
                               std::optional<OperatingSpace> space) {
    if (points.empty()) throw ValidationError("generate_dictionary: no observation points given");
    std::vector<Snapshot> snaps;
    snaps.reserve(points.size());
    for (const auto& z : points) snaps.push_back(linearize(f, z));
    return Dictionary(f.dims(), std::move(snaps), std::move(space));
}

} // namespace otfs
