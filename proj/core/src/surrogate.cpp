#include "otfs/surrogate.hpp"

#include "otfs/errors.hpp"

#include <vector>

namespace otfs {

LinOpSource LinOpSource::interpolated(std::shared_ptr<const Interpolant> interp) {
    if (!interp) throw PreconditionError("null interpolant");
    const Interpolant* raw = interp.get();
    const Dims dims = raw->dims();
    return LinOpSource(dims, [raw](const Vector& z) { return raw->eval(z); }, std::move(interp));
}

LinOpSource LinOpSource::exact(DynamicsFn f) {
    const Dims dims = f.dims();
    return LinOpSource(dims, [f = std::move(f)](const Vector& z) { return linearize(f, z).M; }, nullptr);
}

LinOpSource LinOpSource::custom(Dims dims, Fn fn) {
    if (!fn) throw PreconditionError("empty linearization callable");
    return LinOpSource(dims, std::move(fn), nullptr);
}

Matrix LinOpSource::operator()(const Vector& z) const {
    Matrix M = fn_(z);
    if (M.rows() != dims_.nx || M.cols() != dims_.jac_cols())
        throw ShapeError("linearization source returned a matrix of the wrong shape");
    return M;
}

Matrix LinOpSource::weighted_sum(std::span<const Vector> points, std::span<const double> weights) const {
    if (interp_) return interp_->eval_weighted_sum(points, weights);
    Matrix acc = Matrix::Zero(dims_.nx, dims_.jac_cols());
    for (std::size_t j = 0; j < points.size(); ++j) acc += weights[j] * (*this)(points[j]);
    return acc;
}

SurrogateModel::SurrogateModel(LinOpSource source, QuadratureSpec quad, Anchor anchor)
    : source_(std::move(source)),
      quad_(quad),
      rule_(cs38_rule(quad.intervals)),
      x_star_(anchor.x.size() ? std::move(anchor.x) : Vector::Zero(source_.dims().nx)),
      u_star_(anchor.u.size() ? std::move(anchor.u) : Vector::Zero(source_.dims().nu)),
      offset_(anchor.offset.size() ? std::move(anchor.offset) : Vector::Zero(source_.dims().nx)) {
    const Dims& dims = source_.dims();
    if (x_star_.size() != dims.nx || u_star_.size() != dims.nu || offset_.size() != dims.nx)
        throw DimensionError("anchor or offset length does not match dims");
    if (!x_star_.allFinite() || !u_star_.allFinite()) throw ValidationError("anchor point must be finite");
    if (!offset_.allFinite()) throw ValidationError("anchor offset must be finite");
}

Matrix SurrogateModel::integrated_linearization(const Vector& x, const Vector& u, const Vector& eta) const {
    const Dims& dims = source_.dims();
    if (x.size() != dims.nx || u.size() != dims.nu || eta.size() != dims.neta)
        throw DimensionError("surrogate arguments do not match dims");
    const Vector dx = x - x_star_;
    const Vector du = u - u_star_;
    std::vector<Vector> points;
    points.reserve(rule_.nodes.size());
    for (double lambda : rule_.nodes) {
        Vector z(dims.d());
        z << x_star_ + lambda * dx, u_star_ + lambda * du, eta;
        points.push_back(std::move(z));
    }
    Matrix F = source_.weighted_sum(points, rule_.weights);
    if (!F.allFinite()) throw EvaluationError("non-finite integrated linearization");
    return F;
}

Vector SurrogateModel::rhs(const Vector& x, const Vector& u, const Vector& eta) const {
    const Matrix F = integrated_linearization(x, u, eta);
    const Dims& dims = source_.dims();
    Vector delta(dims.jac_cols());
    delta << x - x_star_, u - u_star_;
    return offset_ + F * delta;
}

SurrogateModel make_exact_model(DynamicsFn f, QuadratureSpec quad) {
    return SurrogateModel(LinOpSource::exact(std::move(f)), quad);
}

SurrogateModel make_interp_model(Interpolant interp, QuadratureSpec quad) {
    return make_interp_model(std::make_shared<const Interpolant>(std::move(interp)), quad);
}

SurrogateModel make_interp_model(std::shared_ptr<const Interpolant> interp, QuadratureSpec quad) {
    return SurrogateModel(LinOpSource::interpolated(std::move(interp)), quad);
}

SurrogateModel make_anchored_exact_model(DynamicsFn f, const Vector& x_star, const Vector& u_star, const Vector& eta,
                                         QuadratureSpec quad) {
    Vector offset = f(x_star, u_star, eta);
    return SurrogateModel(LinOpSource::exact(std::move(f)), quad, Anchor{x_star, u_star, std::move(offset)});
}

} // namespace otfs
