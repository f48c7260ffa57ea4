#pragma once

#include "otfs/core_model.hpp"

#include <cmath>
#include <string_view>

namespace otfs {

/// Hardy multiquadric phi(z; c) = -sqrt(c^2 + |z|^2), conditionally positive
/// definite of order 1. Even and translation-invariant; always <= -c.
struct KernelSpec {
    static constexpr std::string_view kind = "multiquadric";
    static constexpr int cpd_order = 1;

    double c = 1.0;
};

/// Throws PreconditionError unless c > 0 and finite.
void validate(const KernelSpec& spec);

inline double kernel_from_sqnorm(double c, double sqnorm) { return -std::sqrt(c * c + sqnorm); }

/// phi + c, evaluated without cancellation. Interpolants whose tail contains the
/// constants are unchanged by this shift, but their coefficients no longer
/// multiply O(c) kernel values when c is large.
inline double shifted_kernel_from_sqnorm(double c, double sqnorm) {
    return -sqnorm / (c + std::sqrt(c * c + sqnorm));
}

inline double kernel_eval(const KernelSpec& spec, const Vector& z) {
    return kernel_from_sqnorm(spec.c, z.squaredNorm());
}

} // namespace otfs
