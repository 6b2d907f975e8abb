#pragma once

#include "wmeval/core/errors.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <vector>

namespace wmeval::kin {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Frame-to-frame velocities diff(p) / diff(t); one shorter than the input.
template <typename DerivedT, typename DerivedP>
Vec<typename DerivedP::Scalar> velocities(const Eigen::MatrixBase<DerivedT>& t,
                                          const Eigen::MatrixBase<DerivedP>& p) {
  const Eigen::Index n = p.size();
  if (n < 2) return {};
  return (p.tail(n - 1) - p.head(n - 1)).cwiseQuotient(t.tail(n - 1) - t.head(n - 1));
}

/// Percentile with linear interpolation between order statistics.
template <typename Derived>
typename Derived::Scalar percentile(const Eigen::DenseBase<Derived>& values, double q) {
  using Scalar = typename Derived::Scalar;
  if (values.size() == 0) throw Error("percentile of an empty sample");
  const Vec<Scalar> dense = values.derived();
  std::vector<Scalar> sorted(dense.data(), dense.data() + dense.size());
  std::sort(sorted.begin(), sorted.end());
  const double pos = q / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const auto frac = static_cast<Scalar>(pos - static_cast<double>(lo));
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

template <typename Derived>
typename Derived::Scalar span(const Eigen::DenseBase<Derived>& values) {
  if (values.size() == 0) return typename Derived::Scalar(0);
  return values.maxCoeff() - values.minCoeff();
}

/// Piecewise-linear ramp: 1 at or below `full`, 0 at or beyond `zero`.
/// Works in either direction (full < zero or full > zero).
template <typename Scalar>
Scalar ramp_down(Scalar x, double full, double zero) {
  const auto f = static_cast<Scalar>(full);
  const auto z = static_cast<Scalar>(zero);
  if (full < zero) {
    if (x <= f) return Scalar(1);
    if (x >= z) return Scalar(0);
  } else {
    if (x >= f) return Scalar(1);
    if (x <= z) return Scalar(0);
  }
  return (z - x) / (z - f);
}

template <typename Scalar>
Scalar clamp01(Scalar x) {
  return std::clamp(x, Scalar(0), Scalar(1));
}

}  // namespace wmeval::kin
