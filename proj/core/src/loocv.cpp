#include "otfs/loocv.hpp"

#include "otfs/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace otfs {

namespace {

double induced_norm(const Matrix& E, NormKind p) {
    if (p == NormKind::Inf) return E.cwiseAbs().rowwise().sum().maxCoeff();
    // Largest singular value through the small nx x nx Gram matrix.
    const Matrix gram = E * E.transpose();
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

} // namespace

double loocv_objective(const Dictionary& dict, const KernelSpec& kernel, const PolyBasis& basis, NormKind p,
                       const FitOptions& options) {
    const std::size_t n = dict.size();
    if (n < 2) throw PreconditionError("leave-one-out cross-validation needs at least 2 snapshots");
    const Dims& dims = dict.dims();
    Matrix stacked(dims.nx, static_cast<Eigen::Index>(n) * dims.jac_cols());
    for (std::size_t k = 0; k < n; ++k) {
        Matrix err;
        try {
            const auto reduced = fit(dict.without(k), kernel, basis, options);
            err = dict[k].M - reduced.interpolant.eval(dict[k].z);
        } catch (const NumericalError& e) {
            throw LoocvError(k, e.what());
        }
        stacked.middleCols(static_cast<Eigen::Index>(k) * dims.jac_cols(), dims.jac_cols()) = err;
    }
    return induced_norm(stacked, p);
}

TuneResult tune_width(const Dictionary& dict, const PolyBasis& basis, NormKind p, const WidthSearchSpec& search,
                      const FitOptions& options) {
    if (dict.size() < 2) throw PreconditionError("width tuning needs at least 2 snapshots");
    if (!(search.c_lo > 0.0) || !(search.c_hi >= search.c_lo) || search.n_grid < 1 || !(search.rel_tol > 0.0))
        throw PreconditionError("invalid width search settings");

    TuneResult result;
    auto objective = [&](double c) {
        ++result.evaluations;
        try {
            // A width whose full-dictionary fit is rejected is not a usable answer.
            (void)fit(dict, KernelSpec{c}, basis, options);
            return loocv_objective(dict, KernelSpec{c}, basis, p, options);
        } catch (const NumericalError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    const double log_lo = std::log(search.c_lo);
    const double log_hi = std::log(search.c_hi);
    const int n = search.n_grid;
    std::vector<double> log_grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        log_grid[static_cast<std::size_t>(i)] = n == 1 ? log_lo : log_lo + (log_hi - log_lo) * i / (n - 1);

    int best = -1;
    for (int i = 0; i < n; ++i) {
        const double c = std::exp(log_grid[static_cast<std::size_t>(i)]);
        const double obj = objective(c);
        result.grid.push_back({c, obj});
        if (std::isfinite(obj) && (best < 0 || obj < result.grid[static_cast<std::size_t>(best)].objective)) best = i;
    }
    if (best < 0) throw TuningError("no width candidate produced a successful fit");

    result.c = result.grid[static_cast<std::size_t>(best)].c;
    result.objective = result.grid[static_cast<std::size_t>(best)].objective;
    if (n == 1) return result;

    // Golden-section search in log c on the bracketing interval.
    double a = log_grid[static_cast<std::size_t>(std::max(best - 1, 0))];
    double b = log_grid[static_cast<std::size_t>(std::min(best + 1, n - 1))];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double log_tol = std::log1p(search.rel_tol);
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = objective(std::exp(x1));
    double f2 = objective(std::exp(x2));
    auto consider = [&](double x, double f) {
        if (f < result.objective) {
            result.objective = f;
            result.c = std::exp(x);
        }
    };
    consider(x1, f1);
    consider(x2, f2);
    while (b - a > log_tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = objective(std::exp(x1));
            consider(x1, f1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = objective(std::exp(x2));
            consider(x2, f2);
        }
    }
    return result;
}

} // namespace otfs
