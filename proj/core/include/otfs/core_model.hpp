#pragma once

// Problem dimensions, operating-space boxes and the snapshot dictionary.
//
// Conventions shared by every module:
//   z = (x, u, eta) stacked column-wise, length d = nx + nu + neta;
//   a linearization M is nx x (nx + nu) and is vectorized row-major.

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

namespace otfs {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct Dims {
    int nx = 1;
    int nu = 0;
    int neta = 0;

    Dims() = default;
    /// Throws DimensionError unless nx >= 1 and nu, neta >= 0.
    Dims(int nx, int nu, int neta);

    int d() const noexcept { return nx + nu + neta; }
    int jac_cols() const noexcept { return nx + nu; }
    int vec_size() const noexcept { return nx * (nx + nu); }

    friend bool operator==(const Dims&, const Dims&) = default;
};

/// Closed box over z.
class OperatingSpace {
  public:
    OperatingSpace(Vector lower, Vector upper);

    const Vector& lower() const noexcept { return lower_; }
    const Vector& upper() const noexcept { return upper_; }
    int dim() const noexcept { return static_cast<int>(lower_.size()); }
    bool contains(const Vector& z) const;

    friend bool operator==(const OperatingSpace& a, const OperatingSpace& b) {
        return a.lower_ == b.lower_ && a.upper_ == b.upper_;
    }

  private:
    Vector lower_;
    Vector upper_;
};

struct Snapshot {
    Vector z;
    Matrix M;
};

// Row-major vectorization and its inverse.
Vector vectorize_row(const Matrix& M);
Matrix mat_rows(const Vector& v, int rows);

Vector stack_z(const Dims& dims, const Vector& x, const Vector& u, const Vector& eta);

struct SplitPoint {
    Vector x;
    Vector u;
    Vector eta;
};
SplitPoint unstack_z(const Dims& dims, const Vector& z);

/// Immutable collection of N >= 1 snapshots with pairwise distinct points.
class Dictionary {
  public:
    Dictionary(Dims dims, std::vector<Snapshot> snapshots,
               std::optional<OperatingSpace> space = std::nullopt);

    /// Returns a new dictionary with `s` appended; this one is unchanged.
    [[nodiscard]] Dictionary add(Snapshot s) const;
    /// Returns a new dictionary without snapshot `index`.
    [[nodiscard]] Dictionary without(std::size_t index) const;

    const Dims& dims() const noexcept { return dims_; }
    std::size_t size() const noexcept { return snapshots_.size(); }
    const std::vector<Snapshot>& snapshots() const noexcept { return snapshots_; }
    const Snapshot& operator[](std::size_t i) const { return snapshots_[i]; }
    const std::optional<OperatingSpace>& space() const noexcept { return space_; }

    /// N x d matrix of observation points.
    Matrix points() const;

    friend bool operator==(const Dictionary& a, const Dictionary& b);

  private:
    void validate() const;

    Dims dims_;
    std::vector<Snapshot> snapshots_;
    std::optional<OperatingSpace> space_;
};

} // namespace otfs
