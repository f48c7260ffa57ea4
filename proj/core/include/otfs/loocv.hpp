#pragma once

// Leave-one-out cross-validation of the kernel width.

#include "otfs/interpolant.hpp"

#include <vector>

namespace otfs {

enum class NormKind { Two, Inf };

/// Induced p-norm of the block matrix [E_1 ... E_N], where E_k is the error of
/// the interpolant fitted without snapshot k, evaluated at z_k.
/// Requires N >= 2. A failing reduced fit is rethrown as LoocvError.
double loocv_objective(const Dictionary& dict, const KernelSpec& kernel, const PolyBasis& basis,
                       NormKind p = NormKind::Inf, const FitOptions& options = {});

/// Log-spaced coarse scan followed by golden-section refinement (in log c)
/// on the interval bracketing the best grid point.
struct WidthSearchSpec {
    double c_lo = 1e-2;
    double c_hi = 1e2;
    int n_grid = 25;
    double rel_tol = 1e-3;
};

struct WidthCandidate {
    double c;
    double objective; ///< +inf when the fit failed
};

struct TuneResult {
    double c = 0.0;
    double objective = 0.0;
    std::vector<WidthCandidate> grid;
    int evaluations = 0;
};

/// Throws TuningError if every candidate fails to fit.
TuneResult tune_width(const Dictionary& dict, const PolyBasis& basis, NormKind p = NormKind::Inf,
                      const WidthSearchSpec& search = {}, const FitOptions& options = {});

} // namespace otfs
