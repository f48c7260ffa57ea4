#pragma once

#include "otfs/core_model.hpp"

#include <vector>

namespace otfs {

/// Monomials in d variables of total degree <= m - 1, in graded lexicographic
/// order with the constant first. For d = 2, m = 3: 1, x1, x2, x1^2, x1 x2, x2^2.
class PolyBasis {
  public:
    PolyBasis(int d, int m);

    int dim() const noexcept { return d_; }
    int order() const noexcept { return m_; }
    /// Q = (m - 1 + d)! / ((m - 1)! d!)
    int size() const noexcept { return static_cast<int>(exponents_.size()); }
    const std::vector<std::vector<int>>& exponents() const noexcept { return exponents_; }

    Vector eval(const Vector& z) const;

    static long long count(int d, int m);

  private:
    int d_;
    int m_;
    std::vector<std::vector<int>> exponents_;
};

} // namespace otfs
