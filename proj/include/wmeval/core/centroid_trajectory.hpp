#pragma once

#include "wmeval/core/errors.hpp"

#include <Eigen/Core>

#include <string>
#include <utility>

namespace wmeval {

enum class Axis { Horizontal = 0, Vertical = 1 };

/// Time-stamped object centroid track in normalized image coordinates.
///
/// Image y grows downward, so a falling object has increasing y.
/// Invariants: at least 4 samples, t strictly increasing, x and y finite
/// and inside [0, 1].
template <typename Scalar>
class BasicCentroidTrajectory {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  static constexpr Eigen::Index kMinSamples = 4;

  BasicCentroidTrajectory(Vector t, Vector x, Vector y)
      : t_(std::move(t)), x_(std::move(x)), y_(std::move(y)) {
    if (t_.size() != x_.size() || t_.size() != y_.size()) {
      throw TrajectoryError("centroid columns differ in length");
    }
    if (t_.size() < kMinSamples) {
      throw TrajectoryError("centroid trajectory needs at least 4 samples, got " +
                            std::to_string(t_.size()));
    }
    if (!t_.allFinite() || !x_.allFinite() || !y_.allFinite()) {
      throw TrajectoryError("centroid trajectory contains non-finite values");
    }
    for (Eigen::Index i = 1; i < t_.size(); ++i) {
      if (!(t_(i) > t_(i - 1))) {
        throw TrajectoryError("timestamps must be strictly increasing (index " +
                              std::to_string(i) + ")");
      }
    }
    const auto in_unit = [](const Vector& v) {
      return (v.array() >= Scalar(0)).all() && (v.array() <= Scalar(1)).all();
    };
    if (!in_unit(x_) || !in_unit(y_)) {
      throw TrajectoryError("centroid coordinates must lie in [0, 1]");
    }
  }

  Eigen::Index size() const { return t_.size(); }
  const Vector& t() const { return t_; }
  const Vector& x() const { return x_; }
  const Vector& y() const { return y_; }
  const Vector& along(Axis axis) const { return axis == Axis::Vertical ? y_ : x_; }

 private:
  Vector t_;
  Vector x_;
  Vector y_;
};

using CentroidTrajectory = BasicCentroidTrajectory<double>;

}  // namespace wmeval
