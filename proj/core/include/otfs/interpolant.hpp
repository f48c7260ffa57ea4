#pragma once

// Matrix-valued RBF interpolant of the linearization operator:
//
//   I(z) = mat_nx( sum_i alpha_i phi(z - z_i) + sum_j beta_j q_j(z) )
//
// with coefficients from the saddle system
//
//   [ R   P ] [alpha]   [gamma]
//   [ P^T 0 ] [beta ] = [  0  ],   R_ij = phi(z_i - z_j), P_ij = q_j(z_i),
//
// gamma_i = vectorize_row(M_i). Every column of gamma is one entry of M.

#include "otfs/core_model.hpp"
#include "otfs/kernel.hpp"
#include "otfs/poly_basis.hpp"

#include <span>

namespace otfs {

/// Per-coordinate affine map z -> (z - shift) .* scale applied before the
/// kernel and the tail. Empty vectors mean identity.
struct CoordinateScaling {
    Vector shift;
    Vector scale;

    bool is_identity() const noexcept { return shift.size() == 0 && scale.size() == 0; }
    Vector apply(const Vector& z) const;
    void validate(int d) const;

    friend bool operator==(const CoordinateScaling& a, const CoordinateScaling& b) {
        return a.shift.size() == b.shift.size() && a.scale.size() == b.scale.size() && a.shift == b.shift &&
               a.scale == b.scale;
    }
};

struct FitReport {
    double residual_norm = 0.0;      ///< normwise relative residual of the saddle solve, worst column
    double condition_estimate = 0.0; ///< 1-norm condition estimate of the saddle matrix
    double side_condition_norm = 0.0; ///< max |P^T alpha|
};

struct FitOptions {
    double condition_threshold = 1e12;
    CoordinateScaling scaling;
};

struct SaddleSystem {
    Matrix R;     ///< N x N
    Matrix R_shifted; ///< R + c, assembled from the shifted kernel
    Matrix P;     ///< N x Q
    Matrix gamma; ///< N x nx(nx+nu)
};

SaddleSystem assemble(const Dictionary& dict, const KernelSpec& kernel, const PolyBasis& basis,
                      const CoordinateScaling& scaling = {});

/// I(z) = mat(sum_i alpha_i phi(z - z_i) + sum_j beta_j q_j(z)). Evaluated with
/// phi + c in place of phi, which is the same function whenever sum_i alpha_i = 0
/// (the side condition for the constant tail term).
class Interpolant {
  public:
    /// Assembles an interpolant from stored parts; validates shapes.
    Interpolant(Dims dims, KernelSpec kernel, int tail_order, Matrix centers, Matrix alpha, Matrix beta,
                CoordinateScaling scaling = {}, FitReport report = {});

    const Dims& dims() const noexcept { return dims_; }
    const KernelSpec& kernel() const noexcept { return kernel_; }
    const PolyBasis& basis() const noexcept { return basis_; }
    const Matrix& centers() const noexcept { return centers_; }
    const Matrix& alpha() const noexcept { return alpha_; }
    const Matrix& beta() const noexcept { return beta_; }
    const CoordinateScaling& scaling() const noexcept { return scaling_; }
    const FitReport& report() const noexcept { return report_; }
    std::size_t num_centers() const noexcept { return static_cast<std::size_t>(centers_.rows()); }

    /// nx x (nx + nu) approximation of the linearization at z.
    Matrix eval(const Vector& z) const;
    /// Same as eval(), row-major vectorized.
    Vector eval_vec(const Vector& z) const;
    /// sum_j weights[j] * eval(points[j]), accumulated in kernel space so the
    /// coefficient product is formed once.
    Matrix eval_weighted_sum(std::span<const Vector> points, std::span<const double> weights) const;

  private:
    Vector kernel_row(const Vector& scaled_z) const;

    Dims dims_;
    KernelSpec kernel_;
    PolyBasis basis_;
    Matrix centers_;
    Matrix scaled_centers_;
    Matrix alpha_;
    Matrix beta_;
    CoordinateScaling scaling_;
    FitReport report_;
};

struct FitResult {
    Interpolant interpolant;
    FitReport report;
};

/// Solves the saddle system with one dense partially pivoted LU factorization
/// plus a step of iterative refinement.
///
/// Throws UnisolvencyError if P has dependent columns (including N < Q) and
/// ConditioningError if the condition estimate exceeds the threshold.
FitResult fit(const Dictionary& dict, const KernelSpec& kernel, const PolyBasis& basis,
              const FitOptions& options = {});

/// max_i |I(z_i) - M_i|_F / (1 + |M_i|_F) over the dictionary.
double max_node_residual(const Interpolant& interp, const Dictionary& dict);

} // namespace otfs
