#pragma once

// On-the-fly surrogate right-hand side built from a linearization operator L:
//
//   f_hat(x, u, eta) = offset + F_hat(x, u, eta) [x - x*; u - u*],
//   F_hat(x, u, eta) = int_0^1 L(x* + l (x - x*), u* + l (u - u*), eta) dl,
//
// with the integral evaluated by composite Simpson 3/8 at every call. eta is
// held fixed along the ray. The default anchor is the origin with a zero
// offset, which is exact whenever f(0, 0, eta) = 0.

#include "otfs/autodiff.hpp"
#include "otfs/core_model.hpp"
#include "otfs/interpolant.hpp"
#include "otfs/quadrature.hpp"

#include <functional>
#include <memory>
#include <span>

namespace otfs {

/// A map z -> nx x (nx + nu): a fitted interpolant, the exact linearization of
/// a DynamicsFn, or any user callable.
class LinOpSource {
  public:
    using Fn = std::function<Matrix(const Vector&)>;

    static LinOpSource interpolated(std::shared_ptr<const Interpolant> interp);
    static LinOpSource exact(DynamicsFn f);
    static LinOpSource custom(Dims dims, Fn fn);

    const Dims& dims() const noexcept { return dims_; }
    const Interpolant* interpolant() const noexcept { return interp_.get(); }

    Matrix operator()(const Vector& z) const;
    /// sum_j weights[j] * L(points[j])
    Matrix weighted_sum(std::span<const Vector> points, std::span<const double> weights) const;

  private:
    LinOpSource(Dims dims, Fn fn, std::shared_ptr<const Interpolant> interp)
        : dims_(dims), fn_(std::move(fn)), interp_(std::move(interp)) {}

    Dims dims_;
    Fn fn_;
    std::shared_ptr<const Interpolant> interp_;
};

/// Ray origin (x*, u*) and f(x*, u*, eta). Empty vectors mean zero.
struct Anchor {
    Vector x;
    Vector u;
    Vector offset;
};

class SurrogateModel {
  public:
    /// Throws DimensionError on anchor length mismatch and ValidationError for
    /// a non-finite anchor or offset.
    SurrogateModel(LinOpSource source, QuadratureSpec quad = {}, Anchor anchor = {});

    const Dims& dims() const noexcept { return source_.dims(); }
    const LinOpSource& source() const noexcept { return source_; }
    const QuadratureSpec& quadrature() const noexcept { return quad_; }
    const Vector& anchor_x() const noexcept { return x_star_; }
    const Vector& anchor_u() const noexcept { return u_star_; }
    const Vector& offset() const noexcept { return offset_; }

    Matrix integrated_linearization(const Vector& x, const Vector& u, const Vector& eta) const;
    Vector rhs(const Vector& x, const Vector& u, const Vector& eta) const;

  private:
    LinOpSource source_;
    QuadratureSpec quad_;
    QuadratureRule rule_;
    Vector x_star_;
    Vector u_star_;
    Vector offset_;
};

inline Matrix integrated_linearization(const SurrogateModel& model, const Vector& x, const Vector& u,
                                       const Vector& eta) {
    return model.integrated_linearization(x, u, eta);
}

inline Vector surrogate_rhs(const SurrogateModel& model, const Vector& x, const Vector& u, const Vector& eta) {
    return model.rhs(x, u, eta);
}

/// Origin-anchored model on the exact linearization of f. The caller asserts
/// f(0, 0, eta) = 0.
SurrogateModel make_exact_model(DynamicsFn f, QuadratureSpec quad = {});

/// Origin-anchored model on a fitted interpolant. Points far outside the
/// sampled region are extrapolated without warning.
SurrogateModel make_interp_model(Interpolant interp, QuadratureSpec quad = {});
SurrogateModel make_interp_model(std::shared_ptr<const Interpolant> interp, QuadratureSpec quad = {});

/// Exact model anchored at (x*, u*) with offset f(x*, u*, eta) for the given eta.
SurrogateModel make_anchored_exact_model(DynamicsFn f, const Vector& x_star, const Vector& u_star,
                                         const Vector& eta, QuadratureSpec quad = {});

} // namespace otfs
