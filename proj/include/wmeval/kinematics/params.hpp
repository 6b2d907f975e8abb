#pragma once

#include <Eigen/Core>

namespace wmeval::kin {

/// Every calibration constant of the physics-law evaluator. The oracle suite
/// perturbs single fields to check that the acceptance gate notices.
struct PhysLawParams {
  // Axis dispatch.
  double dominance = 1.5;
  double min_axis_span = 0.05;

  // Segmentation.
  double reference_percentile = 95.0;
  double move_floor = 0.08;
  double move_fraction = 0.15;
  double flip_floor = 0.05;
  double flip_fraction = 0.12;
  Eigen::Index min_points = 4;
  double min_span = 0.03;

  // Segment factors.
  double sign_confidence = 0.3;
  double ratio_low = 0.3;
  double ratio_high = 3.0;
  double ratio_zero = 6.0;
  double decay_full = 0.30;
  double decay_floor = 0.05;
  double decay_floor_credit = 0.4;
  double decay_collapse = 0.0;
  double half_cv_full = 0.15;
  double half_cv_zero = 0.80;

  // Curve aggregation.
  double coverage_vertical = 0.3;
  double coverage_horizontal = 0.6;
  double slide_coverage_min = 0.20;
  double slide_coverage_full = 0.5;

  // Event features.
  double impact_floor = 0.05;
  double impact_fraction = 0.10;
  Eigen::Index impact_run = 4;
  Eigen::Index drift_window = 8;
  double drift_norm = 0.10;
  double bounce_full = 0.7;
  double bounce_zero = 1.5;
  double airborne_eps = 1e-3;
  double weight_velocity_drop = 0.30;
  double weight_drift = 0.20;
  double weight_impact = 0.30;
  double weight_bounce = 0.20;

  // Fusion and final score.
  double fusion_gate = 0.3;
  double curve_weight_below_gate = 0.70;
  double curve_weight_above_gate = 0.30;
  double kinematic_weight = 0.9;
};

}  // namespace wmeval::kin
