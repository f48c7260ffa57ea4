#pragma once

// Linearization snapshots [df/dx  df/du] via forward-mode differentiation.

#include "otfs/core_model.hpp"
#include "otfs/dual.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace otfs {

/// Right-hand side f(x, u, eta) evaluable with plain doubles and with Dual.
///
/// Construct it from a generic callable
///   [](auto x, auto u, auto eta) { ... return std::vector<T>{...}; }
/// where x, u, eta are std::span<const T> and T is double or Dual.
class DynamicsFn {
  public:
    template <class T>
    using Eval = std::function<std::vector<T>(std::span<const T>, std::span<const T>, std::span<const T>)>;

    template <class F>
    DynamicsFn(Dims dims, F f)
        : dims_(dims), real_(wrap<double>(f)), dual_(wrap<Dual>(std::move(f))) {}

    const Dims& dims() const noexcept { return dims_; }

    /// Plain evaluation; throws DimensionError on length mismatch.
    Vector operator()(const Vector& x, const Vector& u, const Vector& eta) const;
    Vector operator()(const Vector& z) const;

    std::vector<Dual> eval_dual(std::span<const Dual> x, std::span<const Dual> u,
                                std::span<const Dual> eta) const;

  private:
    template <class T, class F>
    static Eval<T> wrap(F f) {
        return [f](std::span<const T> x, std::span<const T> u, std::span<const T> eta) {
            return std::vector<T>(f(x, u, eta));
        };
    }

    Dims dims_;
    Eval<double> real_;
    Eval<Dual> dual_;
};

/// Snapshot at (x, u, eta): M = [df/dx  df/du], nx x (nx + nu). No eta block.
/// Throws EvaluationError if f or its derivatives are not finite.
Snapshot linearize(const DynamicsFn& f, const Vector& x, const Vector& u, const Vector& eta);
Snapshot linearize(const DynamicsFn& f, const Vector& z);

inline constexpr double kDefaultFdStep = 1e-6;

/// Central-difference oracle with the same shape as linearize(). Requires h > 0.
Matrix finite_diff_jacobian(const DynamicsFn& f, const Vector& x, const Vector& u, const Vector& eta,
                            double h = kDefaultFdStep);

/// One snapshot per point, order preserved. Points must be distinct.
Dictionary generate_dictionary(const DynamicsFn& f, const std::vector<Vector>& points,
                               std::optional<OperatingSpace> space = std::nullopt);

} // namespace otfs
