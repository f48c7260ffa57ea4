#include "otfs/core_model.hpp"

#include "otfs/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace otfs {

Dims::Dims(int nx_, int nu_, int neta_) : nx(nx_), nu(nu_), neta(neta_) {
    if (nx < 1) throw DimensionError("nx must be >= 1, got " + std::to_string(nx));
    if (nu < 0) throw DimensionError("nu must be >= 0, got " + std::to_string(nu));
    if (neta < 0) throw DimensionError("neta must be >= 0, got " + std::to_string(neta));
}

OperatingSpace::OperatingSpace(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.size() != upper_.size())
        throw DimensionError("operating space bounds have different lengths");
    for (Eigen::Index i = 0; i < lower_.size(); ++i) {
        if (!(lower_[i] <= upper_[i]))
            throw ValidationError("operating space lower bound exceeds upper bound at coordinate " +
                                  std::to_string(i));
    }
}

bool OperatingSpace::contains(const Vector& z) const {
    if (z.size() != lower_.size()) throw DimensionError("point dimension does not match operating space");
    return (z.array() >= lower_.array()).all() && (z.array() <= upper_.array()).all();
}

Vector vectorize_row(const Matrix& M) {
    Vector v(M.size());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) v[k++] = M(i, j);
    return v;
}

Matrix mat_rows(const Vector& v, int rows) {
    if (rows < 1 || v.size() % rows != 0)
        throw DimensionError("vector of length " + std::to_string(v.size()) +
                             " cannot be reshaped into " + std::to_string(rows) + " rows");
    const Eigen::Index cols = v.size() / rows;
    Matrix M(rows, cols);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = v[k++];
    return M;
}

Vector stack_z(const Dims& dims, const Vector& x, const Vector& u, const Vector& eta) {
    if (x.size() != dims.nx || u.size() != dims.nu || eta.size() != dims.neta)
        throw DimensionError("stack_z: component lengths (" + std::to_string(x.size()) + "," +
                             std::to_string(u.size()) + "," + std::to_string(eta.size()) +
                             ") do not match dims (" + std::to_string(dims.nx) + "," +
                             std::to_string(dims.nu) + "," + std::to_string(dims.neta) + ")");
    Vector z(dims.d());
    z << x, u, eta;
    return z;
}

SplitPoint unstack_z(const Dims& dims, const Vector& z) {
    if (z.size() != dims.d())
        throw DimensionError("unstack_z: expected length " + std::to_string(dims.d()) + ", got " +
                             std::to_string(z.size()));
    return {z.head(dims.nx), z.segment(dims.nx, dims.nu), z.tail(dims.neta)};
}

Dictionary::Dictionary(Dims dims, std::vector<Snapshot> snapshots, std::optional<OperatingSpace> space)
    : dims_(dims), snapshots_(std::move(snapshots)), space_(std::move(space)) {
    validate();
}

void Dictionary::validate() const {
    if (snapshots_.empty()) throw ValidationError("dictionary must contain at least one snapshot");
    if (space_ && space_->dim() != dims_.d())
        throw DimensionError("operating space dimension " + std::to_string(space_->dim()) +
                             " does not match d = " + std::to_string(dims_.d()));
    for (std::size_t i = 0; i < snapshots_.size(); ++i) {
        const auto& s = snapshots_[i];
        if (s.z.size() != dims_.d())
            throw DimensionError("snapshot " + std::to_string(i) + ": z has length " +
                                 std::to_string(s.z.size()) + ", expected " + std::to_string(dims_.d()));
        if (s.M.rows() != dims_.nx || s.M.cols() != dims_.jac_cols())
            throw ShapeError("snapshot " + std::to_string(i) + ": M is " + std::to_string(s.M.rows()) +
                             "x" + std::to_string(s.M.cols()) + ", expected " + std::to_string(dims_.nx) +
                             "x" + std::to_string(dims_.jac_cols()));
        if (!s.z.allFinite() || !s.M.allFinite())
            throw ValidationError("snapshot " + std::to_string(i) + " contains non-finite entries");
    }

    // Exact distinctness: sort indices lexicographically and compare neighbours.
    std::vector<std::size_t> order(snapshots_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto lex_less = [this](std::size_t a, std::size_t b) {
        const auto& za = snapshots_[a].z;
        const auto& zb = snapshots_[b].z;
        return std::lexicographical_compare(za.begin(), za.end(), zb.begin(), zb.end());
    };
    std::sort(order.begin(), order.end(), lex_less);
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (snapshots_[order[k - 1]].z == snapshots_[order[k]].z)
            throw DuplicatePointError(std::max(order[k - 1], order[k]));
    }
}

Dictionary Dictionary::add(Snapshot s) const {
    auto copy = snapshots_;
    copy.push_back(std::move(s));
    return Dictionary(dims_, std::move(copy), space_);
}

Dictionary Dictionary::without(std::size_t index) const {
    if (index >= snapshots_.size()) throw PreconditionError("snapshot index out of range");
    std::vector<Snapshot> copy;
    copy.reserve(snapshots_.size() - 1);
    for (std::size_t i = 0; i < snapshots_.size(); ++i)
        if (i != index) copy.push_back(snapshots_[i]);
    return Dictionary(dims_, std::move(copy), space_);
}

Matrix Dictionary::points() const {
    Matrix Z(static_cast<Eigen::Index>(snapshots_.size()), dims_.d());
    for (std::size_t i = 0; i < snapshots_.size(); ++i) Z.row(static_cast<Eigen::Index>(i)) = snapshots_[i].z.transpose();
    return Z;
}

bool operator==(const Dictionary& a, const Dictionary& b) {
    if (!(a.dims_ == b.dims_) || a.space_ != b.space_ || a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.snapshots_[i].z != b.snapshots_[i].z || a.snapshots_[i].M != b.snapshots_[i].M) return false;
    }
    return true;
}

} // namespace otfs
