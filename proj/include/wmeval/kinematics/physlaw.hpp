#pragma once

#include "wmeval/kinematics/events.hpp"
#include "wmeval/kinematics/score.hpp"

#include "json.hpp"

#include <optional>
#include <vector>

namespace wmeval::kin {

/// Gated curve/event mix; a lone present branch passes through.
template <typename Scalar>
std::optional<Scalar> fuse(std::optional<Scalar> curve, std::optional<Scalar> event,
                           const PhysLawParams& params = {}) {
  if (curve && event) {
    const double w_curve = *curve < static_cast<Scalar>(params.fusion_gate)
                               ? params.curve_weight_below_gate
                               : params.curve_weight_above_gate;
    // Written as an interpolation so equal inputs pass through unchanged.
    return *curve + static_cast<Scalar>(1.0 - w_curve) * (*event - *curve);
  }
  return curve ? curve : event;
}

struct PhysLawResult {
  int vqs = 0;
  std::optional<double> curve;
  std::optional<double> event;
  std::optional<double> kinematic;
  double effective = 0;
  double final = 0;
};

/// final = kinematic_weight * effective + vqs. Kinematics only count for a
/// valid video with motion (vqs 10 and has_motion).
PhysLawResult final_score(std::optional<double> kinematic, int vqs, bool has_motion,
                          const PhysLawParams& params = {});

template <typename Scalar>
struct AxisReport {
  Axis axis = Axis::Vertical;
  std::vector<Segment> segments;
  std::vector<SegmentScore<Scalar>> scores;
  std::optional<Scalar> curve;
  std::optional<EventFeatures<Scalar>> features;
  std::optional<Scalar> event;
  std::optional<Scalar> kinematic;
};

template <typename Scalar>
struct PhysLawReport {
  AxisRoute route = AxisRoute::Both;
  std::vector<AxisReport<Scalar>> axes;
  /// Index into `axes` of the axis whose kinematic score was used.
  std::optional<std::size_t> chosen;
  PhysLawResult result;
};

template <typename Scalar>
AxisReport<Scalar> evaluate_axis(const BasicCentroidTrajectory<Scalar>& traj, Axis axis,
                                 const PhysLawParams& params = {}) {
  AxisReport<Scalar> out;
  out.axis = axis;
  const auto& p = traj.along(axis);
  out.segments = segment_series(traj.t(), p, axis, params);
  out.scores = score_segments(traj.t(), p, out.segments, axis, params);
  out.curve = curve_score(out.segments, out.scores, traj.size(), axis, params);
  if (axis == Axis::Vertical) {
    const auto impact = detect_impact(traj.t(), p, out.segments, params);
    out.features = event_features(traj.t(), p, out.segments, impact, params);
    out.event = event_score(*out.features, params);
  }
  out.kinematic = fuse(out.curve, out.event, params);
  return out;
}

/// Full pipeline: dispatch, per-axis scoring, fusion, VQS gate. The "both"
/// route keeps the better of the two axes.
template <typename Scalar>
PhysLawReport<Scalar> evaluate(const BasicCentroidTrajectory<Scalar>& traj, int vqs, bool has_motion,
                               const PhysLawParams& params = {}) {
  PhysLawReport<Scalar> report;
  report.route = dispatch_axis(traj, params);
  if (report.route != AxisRoute::Horizontal) {
    report.axes.push_back(evaluate_axis(traj, Axis::Vertical, params));
  }
  if (report.route != AxisRoute::Vertical) {
    report.axes.push_back(evaluate_axis(traj, Axis::Horizontal, params));
  }
  for (std::size_t i = 0; i < report.axes.size(); ++i) {
    const auto& k = report.axes[i].kinematic;
    if (!k) continue;
    if (!report.chosen || *k > *report.axes[*report.chosen].kinematic) report.chosen = i;
  }

  std::optional<double> curve, event, kinematic;
  if (report.chosen) {
    const auto& axis = report.axes[*report.chosen];
    if (axis.curve) curve = static_cast<double>(*axis.curve);
    if (axis.event) event = static_cast<double>(*axis.event);
    kinematic = static_cast<double>(*axis.kinematic);
  }
  report.result = final_score(kinematic, vqs, has_motion, params);
  report.result.curve = curve;
  report.result.event = event;
  return report;
}

nlohmann::json to_json(const PhysLawResult& result);
nlohmann::json to_json(const PhysLawReport<double>& report);

}  // namespace wmeval::kin
