#pragma once

#include "wmeval/core/errors.hpp"
#include "wmeval/kinematics/stats.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace wmeval::kin {

/// y(t) = a t^2 + b t + c, with the centred form kept for stable evaluation.
template <typename Scalar>
struct QuadraticFit {
  Scalar a = 0;
  Scalar b = 0;
  Scalar c = 0;
  Scalar r2 = 0;

  // y = A u^2 + B u + C with u = (t - t_mid) / t_scale.
  Scalar t_mid = 0;
  Scalar t_scale = 1;
  Eigen::Matrix<Scalar, 3, 1> centred = Eigen::Matrix<Scalar, 3, 1>::Zero();

  Scalar acceleration() const { return Scalar(2) * a; }

  Scalar operator()(Scalar t) const {
    const Scalar u = (t - t_mid) / t_scale;
    return (centred(0) * u + centred(1)) * u + centred(2);
  }

  Scalar velocity(Scalar t) const {
    const Scalar u = (t - t_mid) / t_scale;
    return (Scalar(2) * centred(0) * u + centred(1)) / t_scale;
  }

  /// Extremum of the parabola; the caller checks a != 0.
  Scalar vertex_value() const {
    return centred(2) - centred(1) * centred(1) / (Scalar(4) * centred(0));
  }
};

/// Ordinary least-squares quadratic. Throws FitError below 4 points or when
/// the design matrix is rank deficient.
template <typename DerivedT, typename DerivedY>
QuadraticFit<typename DerivedY::Scalar> fit_quadratic(const Eigen::MatrixBase<DerivedT>& t,
                                                      const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedY::Scalar;
  const Eigen::Index n = t.size();
  if (n != y.size()) throw FitError("fit inputs differ in length");
  if (n < 4) throw FitError("quadratic fit needs at least 4 points, got " + std::to_string(n));

  QuadraticFit<Scalar> fit;
  fit.t_mid = (t.maxCoeff() + t.minCoeff()) / Scalar(2);
  fit.t_scale = (t.maxCoeff() - t.minCoeff()) / Scalar(2);
  if (!(fit.t_scale > Scalar(0))) throw FitError("quadratic fit needs distinct t values");

  const Vec<Scalar> u = (t.array() - fit.t_mid) / fit.t_scale;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 3> design(n, 3);
  design.col(0) = u.array().square();
  design.col(1) = u;
  design.col(2).setOnes();

  Eigen::ColPivHouseholderQR<Eigen::Matrix<Scalar, Eigen::Dynamic, 3>> qr(design);
  if (qr.rank() < 3) throw FitError("quadratic fit is rank deficient");
  fit.centred = qr.solve(y.derived().template cast<Scalar>());

  const Scalar A = fit.centred(0), B = fit.centred(1), C = fit.centred(2);
  const Scalar m = fit.t_mid, s = fit.t_scale;
  fit.a = A / (s * s);
  fit.b = B / s - Scalar(2) * A * m / (s * s);
  fit.c = A * m * m / (s * s) - B * m / s + C;

  const Vec<Scalar> residual = design * fit.centred - y.derived();
  const Scalar ss_res = residual.squaredNorm();
  const Scalar ss_tot = (y.array() - y.mean()).square().sum();
  fit.r2 = ss_tot > Scalar(0) ? Scalar(1) - ss_res / ss_tot : Scalar(1);
  return fit;
}

}  // namespace wmeval::kin
