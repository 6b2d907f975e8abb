#pragma once

#include "wmeval/core/errors.hpp"
#include "wmeval/core/joint_layout.hpp"

#include <Eigen/Core>

#include <string>
#include <utility>

namespace wmeval {

template <typename Scalar>
using ActionMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, kActiveDims, Eigen::RowMajor>;

template <typename Scalar>
using ActionRow = Eigen::Matrix<Scalar, 1, kActiveDims>;

/// T x 29 joint-command trajectory in normalized joint units.
///
/// Invariants: T >= 2, all entries finite. The width of the vector the rows
/// were carved from is kept so exports can be re-padded.
template <typename Scalar>
class BasicActionTrajectory {
 public:
  using Matrix = ActionMatrix<Scalar>;

  explicit BasicActionTrajectory(Matrix data, Eigen::Index source_dim = kPaddedDims)
      : data_(std::move(data)), source_dim_(source_dim) {
    if (data_.rows() < 2) {
      throw TrajectoryError("action trajectory needs at least 2 frames, got " +
                            std::to_string(data_.rows()));
    }
    if (!data_.allFinite()) {
      throw TrajectoryError("action trajectory contains non-finite entries");
    }
    if (source_dim_ < kActiveDims) {
      throw DimensionError("source dimension " + std::to_string(source_dim_) +
                           " is narrower than the 29 active joints");
    }
  }

  Eigen::Index frames() const { return data_.rows(); }
  Eigen::Index source_dim() const { return source_dim_; }
  const Matrix& data() const { return data_; }

  auto group(JointGroup g, const JointLayout& layout) const {
    const auto r = layout.range(g);
    return data_.middleCols(r.begin, r.size());
  }

  friend bool operator==(const BasicActionTrajectory& a, const BasicActionTrajectory& b) {
    return a.source_dim_ == b.source_dim_ && a.data_.rows() == b.data_.rows() &&
           a.data_ == b.data_;
  }

 private:
  Matrix data_;
  Eigen::Index source_dim_;
};

using ActionTrajectory = BasicActionTrajectory<double>;

/// First 29 entries of a padded action vector; everything past them is ignored.
template <typename Derived>
ActionRow<typename Derived::Scalar> extract_active(const Eigen::MatrixBase<Derived>& raw) {
  static_assert(Derived::IsVectorAtCompileTime || Derived::ColsAtCompileTime == Eigen::Dynamic,
                "extract_active expects a vector");
  if (raw.size() < kActiveDims) {
    throw DimensionError("action vector has " + std::to_string(raw.size()) +
                         " entries, need at least 29");
  }
  ActionRow<typename Derived::Scalar> row;
  for (Eigen::Index i = 0; i < kActiveDims; ++i) row(i) = raw(i);
  return row;
}

/// Inverse of extract_active for GR-1 style vectors: active prefix, zero tail.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> zero_pad(
    const Eigen::MatrixBase<Derived>& row, Eigen::Index source_dim = kPaddedDims) {
  if (source_dim < row.size()) {
    throw DimensionError("cannot pad a " + std::to_string(row.size()) +
                         "-entry row into " + std::to_string(source_dim) + " entries");
  }
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> out =
      Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>::Zero(source_dim);
  for (Eigen::Index i = 0; i < row.size(); ++i) out(i) = row(i);
  return out;
}

}  // namespace wmeval
