#include "otfs/poly_basis.hpp"

#include "otfs/errors.hpp"
#include "otfs/kernel.hpp"

#include <string>

namespace otfs {

void validate(const KernelSpec& spec) {
    if (!(spec.c > 0.0) || !std::isfinite(spec.c))
        throw PreconditionError("kernel width c must be positive and finite");
}

namespace {

// All exponent tuples of `d` variables summing to `degree`, lexicographically
// descending in (e1, e2, ...).
void enumerate_degree(int d, int degree, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    const int var = static_cast<int>(current.size());
    if (var == d - 1) {
        current.push_back(degree);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int e = degree; e >= 0; --e) {
        current.push_back(e);
        enumerate_degree(d, degree - e, current, out);
        current.pop_back();
    }
}

} // namespace

long long PolyBasis::count(int d, int m) {
    // C(m - 1 + d, d) computed incrementally to stay in integers.
    long long q = 1;
    for (int i = 1; i <= m - 1; ++i) q = q * (d + i) / i;
    return q;
}

PolyBasis::PolyBasis(int d, int m) : d_(d), m_(m) {
    if (d < 1) throw DimensionError("polynomial basis dimension must be >= 1");
    if (m < 1) throw PreconditionError("polynomial tail order m must be >= 1");
    if (m < KernelSpec::cpd_order)
        throw PreconditionError("tail order m is below the kernel's CPD order");
    std::vector<int> current;
    for (int g = 0; g <= m - 1; ++g) enumerate_degree(d, g, current, exponents_);
}

Vector PolyBasis::eval(const Vector& z) const {
    if (z.size() != d_)
        throw DimensionError("polynomial basis expects a point of length " + std::to_string(d_) + ", got " +
                             std::to_string(z.size()));
    Vector q(size());
    for (int j = 0; j < size(); ++j) {
        double v = 1.0;
        const auto& e = exponents_[static_cast<std::size_t>(j)];
        for (int i = 0; i < d_; ++i)
            for (int p = 0; p < e[static_cast<std::size_t>(i)]; ++p) v *= z[i];
        q[j] = v;
    }
    return q;
}

} // namespace otfs
