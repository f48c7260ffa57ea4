#include "otfs/interpolant.hpp"

#include "otfs/errors.hpp"

#include <Eigen/LU>
#include <Eigen/QR>

#include <algorithm>
#include <limits>
#include <string>

namespace otfs {

Vector CoordinateScaling::apply(const Vector& z) const {
    if (is_identity()) return z;
    return (z - shift).cwiseProduct(scale);
}

void CoordinateScaling::validate(int d) const {
    if (is_identity()) return;
    if (shift.size() != d || scale.size() != d)
        throw DimensionError("coordinate scaling must have shift and scale of length d = " + std::to_string(d));
    if (!shift.allFinite() || !scale.allFinite() || (scale.array() == 0.0).any())
        throw PreconditionError("coordinate scaling must be finite with nonzero scale factors");
}

SaddleSystem assemble(const Dictionary& dict, const KernelSpec& kernel, const PolyBasis& basis,
                      const CoordinateScaling& scaling) {
    validate(kernel);
    const Dims& dims = dict.dims();
    if (basis.dim() != dims.d())
        throw DimensionError("polynomial basis dimension " + std::to_string(basis.dim()) +
                             " does not match d = " + std::to_string(dims.d()));
    scaling.validate(dims.d());

    const auto n = static_cast<Eigen::Index>(dict.size());
    std::vector<Vector> pts;
    pts.reserve(dict.size());
    for (const auto& s : dict.snapshots()) pts.push_back(scaling.apply(s.z));

    SaddleSystem sys{Matrix(n, n), Matrix(n, n), Matrix(n, basis.size()), Matrix(n, dims.vec_size())};
    for (Eigen::Index i = 0; i < n; ++i) {
        sys.R(i, i) = kernel_from_sqnorm(kernel.c, 0.0);
        sys.R_shifted(i, i) = 0.0;
        for (Eigen::Index j = 0; j < i; ++j) {
            const double r2 = (pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]).squaredNorm();
            sys.R(i, j) = sys.R(j, i) = kernel_from_sqnorm(kernel.c, r2);
            sys.R_shifted(i, j) = sys.R_shifted(j, i) = shifted_kernel_from_sqnorm(kernel.c, r2);
        }
        sys.P.row(i) = basis.eval(pts[static_cast<std::size_t>(i)]).transpose();
        sys.gamma.row(i) = vectorize_row(dict[static_cast<std::size_t>(i)].M).transpose();
    }
    return sys;
}

Interpolant::Interpolant(Dims dims, KernelSpec kernel, int tail_order, Matrix centers, Matrix alpha,
                         Matrix beta, CoordinateScaling scaling, FitReport report)
    : dims_(dims),
      kernel_(kernel),
      basis_(dims.d(), tail_order),
      centers_(std::move(centers)),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      scaling_(std::move(scaling)),
      report_(report) {
    validate(kernel_);
    scaling_.validate(dims_.d());
    if (centers_.rows() < 1 || centers_.cols() != dims_.d())
        throw ShapeError("interpolant centers must be N x d with N >= 1");
    if (alpha_.rows() != centers_.rows() || alpha_.cols() != dims_.vec_size())
        throw ShapeError("interpolant alpha must be N x nx(nx+nu)");
    if (beta_.rows() != basis_.size() || beta_.cols() != dims_.vec_size())
        throw ShapeError("interpolant beta must be Q x nx(nx+nu)");
    scaled_centers_.resize(centers_.rows(), centers_.cols());
    for (Eigen::Index i = 0; i < centers_.rows(); ++i)
        scaled_centers_.row(i) = scaling_.apply(centers_.row(i).transpose()).transpose();
}

Vector Interpolant::kernel_row(const Vector& scaled_z) const {
    Vector phi(scaled_centers_.rows());
    for (Eigen::Index i = 0; i < scaled_centers_.rows(); ++i)
        phi[i] = shifted_kernel_from_sqnorm(kernel_.c, (scaled_centers_.row(i).transpose() - scaled_z).squaredNorm());
    return phi;
}

Vector Interpolant::eval_vec(const Vector& z) const {
    if (z.size() != dims_.d())
        throw DimensionError("interpolant expects a point of length " + std::to_string(dims_.d()) + ", got " +
                             std::to_string(z.size()));
    const Vector zs = scaling_.apply(z);
    return alpha_.transpose() * kernel_row(zs) + beta_.transpose() * basis_.eval(zs);
}

Matrix Interpolant::eval(const Vector& z) const { return mat_rows(eval_vec(z), dims_.nx); }

Matrix Interpolant::eval_weighted_sum(std::span<const Vector> points, std::span<const double> weights) const {
    if (points.size() != weights.size()) throw DimensionError("points and weights differ in length");
    Vector phi_sum = Vector::Zero(scaled_centers_.rows());
    Vector q_sum = Vector::Zero(basis_.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (points[j].size() != dims_.d()) throw DimensionError("interpolant point has wrong length");
        const Vector zs = scaling_.apply(points[j]);
        phi_sum.noalias() += weights[j] * kernel_row(zs);
        q_sum.noalias() += weights[j] * basis_.eval(zs);
    }
    const Vector v = alpha_.transpose() * phi_sum + beta_.transpose() * q_sum;
    return mat_rows(v, dims_.nx);
}

namespace {

double relative_residual(const Matrix& A, const Matrix& X, const Matrix& B) {
    const Matrix res = A * X - B;
    const double a_norm = A.cwiseAbs().rowwise().sum().maxCoeff();
    double worst = 0.0;
    for (Eigen::Index k = 0; k < B.cols(); ++k) {
        const double denom = a_norm * X.col(k).cwiseAbs().maxCoeff() + B.col(k).cwiseAbs().maxCoeff();
        const double num = res.col(k).cwiseAbs().maxCoeff();
        if (denom > 0.0) worst = std::max(worst, num / denom);
        else if (num > 0.0) worst = std::numeric_limits<double>::infinity();
    }
    return worst;
}

} // namespace

FitResult fit(const Dictionary& dict, const KernelSpec& kernel, const PolyBasis& basis, const FitOptions& options) {
    const SaddleSystem sys = assemble(dict, kernel, basis, options.scaling);
    const Eigen::Index n = sys.R.rows();
    const Eigen::Index q = sys.P.cols();
    const Eigen::Index k = sys.gamma.cols();

    if (n < q)
        throw UnisolvencyError("polynomial tail needs at least Q = " + std::to_string(q) +
                               " observation points, dictionary has " + std::to_string(n));
    Eigen::ColPivHouseholderQR<Matrix> pqr(sys.P);
    if (pqr.rank() < q)
        throw UnisolvencyError("observation points are not unisolvent for the polynomial tail (rank " +
                               std::to_string(pqr.rank()) + " < Q = " + std::to_string(q) + ")");

    auto saddle = [&](const Matrix& R) {
        Matrix A = Matrix::Zero(n + q, n + q);
        A.topLeftCorner(n, n) = R;
        A.topRightCorner(n, q) = sys.P;
        A.bottomLeftCorner(q, n) = sys.P.transpose();
        return A;
    };
    Matrix B = Matrix::Zero(n + q, k);
    B.topRows(n) = sys.gamma;

    // The conditioning gate looks at the system built from phi itself. The
    // solve uses the equivalent shifted system (same alpha and beta in exact
    // arithmetic), which keeps node values accurate for flat kernels.
    const double rcond = Eigen::PartialPivLU<Matrix>(saddle(sys.R)).rcond();
    const double cond = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
    if (!(cond <= options.condition_threshold) || !std::isfinite(cond)) throw ConditioningError(cond);

    const Matrix A = saddle(sys.R_shifted);
    Eigen::PartialPivLU<Matrix> lu(A);

    Matrix X = lu.solve(B);
    X += lu.solve(B - A * X);
    if (!X.allFinite()) throw ConditioningError(cond);

    FitReport report;
    report.residual_norm = relative_residual(A, X, B);
    report.condition_estimate = cond;
    report.side_condition_norm = (sys.P.transpose() * X.topRows(n)).cwiseAbs().maxCoeff();

    Interpolant interp(dict.dims(), kernel, basis.order(), dict.points(), X.topRows(n), X.bottomRows(q),
                       options.scaling, report);
    return {std::move(interp), report};
}

double max_node_residual(const Interpolant& interp, const Dictionary& dict) {
    double worst = 0.0;
    for (const auto& s : dict.snapshots()) {
        const double err = (interp.eval(s.z) - s.M).norm();
        worst = std::max(worst, err / (1.0 + s.M.norm()));
    }
    return worst;
}

} // namespace otfs
