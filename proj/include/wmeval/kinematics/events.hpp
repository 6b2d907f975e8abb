#pragma once

#include "wmeval/kinematics/fit.hpp"
#include "wmeval/kinematics/segment.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace wmeval::kin {

template <typename Scalar>
struct EventFeatures {
  Scalar velocity_drop = 0;
  Scalar drift = 0;
  bool has_impact = false;
  Scalar bounce = 1;
  bool usable = false;
  /// Velocity index of the impact; position index of the first resting frame.
  std::optional<Eigen::Index> impact;
  /// Rebound height over drop height, when a rebound follows the first fall.
  std::optional<Scalar> bounce_ratio;
};

template <typename Scalar>
Scalar bounce_subscore(Scalar ratio, const PhysLawParams& params = {}) {
  return ramp_down(ratio, params.bounce_full, params.bounce_zero);
}

inline std::optional<Segment> first_fall(const std::vector<Segment>& segs) {
  for (const auto& s : segs) {
    if (s.kind == SegmentKind::Fall) return s;
  }
  return std::nullopt;
}

/// First velocity index at or after the first fall onset where the speed
/// stays under max(impact_floor, impact_fraction * p95|v|) for `impact_run`
/// consecutive intervals.
template <typename DerivedT, typename DerivedP>
std::optional<Eigen::Index> detect_impact(const Eigen::MatrixBase<DerivedT>& t,
                                          const Eigen::MatrixBase<DerivedP>& y,
                                          const std::vector<Segment>& segs,
                                          const PhysLawParams& params = {}) {
  using Scalar = typename DerivedP::Scalar;
  const auto fall = first_fall(segs);
  if (!fall) return std::nullopt;
  const Vec<Scalar> speed = velocities(t, y).cwiseAbs();
  const Eigen::Index m = speed.size();
  const Scalar thresh = std::max(static_cast<Scalar>(params.impact_floor),
                                 static_cast<Scalar>(params.impact_fraction) *
                                     percentile(speed, params.reference_percentile));
  Eigen::Index run = 0;
  for (Eigen::Index i = fall->start; i < m; ++i) {
    run = speed(i) < thresh ? run + 1 : 0;
    if (run == params.impact_run) return i - params.impact_run + 1;
  }
  return std::nullopt;
}

namespace detail {

/// Rebound-to-drop height ratio when a rise directly follows the first fall.
template <typename DerivedT, typename DerivedP>
std::optional<typename DerivedP::Scalar> rebound_ratio(const Eigen::MatrixBase<DerivedT>& t,
                                                       const Eigen::MatrixBase<DerivedP>& y,
                                                       const std::vector<Segment>& segs,
                                                       const PhysLawParams& params) {
  using Scalar = typename DerivedP::Scalar;
  auto it = std::find_if(segs.begin(), segs.end(),
                         [](const Segment& s) { return s.kind == SegmentKind::Fall; });
  if (it == segs.end() || std::next(it) == segs.end()) return std::nullopt;
  const Segment& fall = *it;
  const Segment& next = *std::next(it);
  if (next.kind != SegmentKind::Rise) return std::nullopt;

  const Eigen::Index land = fall.end - 1;
  const Scalar ground = y(land);
  const Scalar top = y.head(land + 1).minCoeff();
  const Scalar h1 = ground - top;
  if (!(h1 > Scalar(0))) return std::nullopt;

  const auto eps = static_cast<Scalar>(params.airborne_eps);
  Eigen::Index last = land + 1;
  while (last < y.size() && y(last) < ground - eps) ++last;
  const Eigen::Index count = last - (land + 1);
  if (count <= 0) return std::nullopt;

  const auto arc_t = t.segment(land + 1, count);
  const auto arc_y = y.segment(land + 1, count);
  Scalar apex = arc_y.minCoeff();
  if (count >= 4) {
    try {
      const auto fit = fit_quadratic(arc_t, arc_y);
      if (fit.centred(0) > Scalar(0)) {
        const Scalar vertex = fit.vertex_value();
        if (vertex < ground) apex = vertex;
      }
    } catch (const FitError&) {
    }
  }
  return (ground - apex) / h1;
}

}  // namespace detail

template <typename DerivedT, typename DerivedP>
EventFeatures<typename DerivedP::Scalar> event_features(const Eigen::MatrixBase<DerivedT>& t,
                                                        const Eigen::MatrixBase<DerivedP>& y,
                                                        const std::vector<Segment>& segs,
                                                        std::optional<Eigen::Index> impact,
                                                        const PhysLawParams& params = {}) {
  using Scalar = typename DerivedP::Scalar;
  EventFeatures<Scalar> f;
  f.impact = impact;
  f.has_impact = impact.has_value();
  f.usable = f.has_impact && first_fall(segs).has_value();

  if (impact) {
    const Vec<Scalar> speed = velocities(t, y).cwiseAbs();
    const Eigen::Index i = *impact;
    const Scalar before = i > 0 ? speed(i - 1) : Scalar(0);
    const Eigen::Index n_after = std::min<Eigen::Index>(params.impact_run, speed.size() - i);
    const Scalar after = n_after > 0 ? speed.segment(i, n_after).mean() : Scalar(0);
    f.velocity_drop = before > Scalar(0) ? clamp01((before - after) / before) : Scalar(0);

    const Eigen::Index n_drift = std::min<Eigen::Index>(params.drift_window, y.size() - i);
    const Scalar drift_span = span(y.segment(i, n_drift));
    f.drift = std::max(Scalar(0), Scalar(1) - drift_span / static_cast<Scalar>(params.drift_norm));
  }

  f.bounce_ratio = detail::rebound_ratio(t, y, segs, params);
  f.bounce = f.bounce_ratio ? bounce_subscore(*f.bounce_ratio, params) : Scalar(1);
  return f;
}

template <typename Scalar>
std::optional<Scalar> event_score(const EventFeatures<Scalar>& f, const PhysLawParams& params = {}) {
  if (!f.usable) return std::nullopt;
  return static_cast<Scalar>(params.weight_velocity_drop) * f.velocity_drop +
         static_cast<Scalar>(params.weight_drift) * f.drift +
         static_cast<Scalar>(params.weight_impact) * Scalar(f.has_impact ? 1 : 0) +
         static_cast<Scalar>(params.weight_bounce) * f.bounce;
}

}  // namespace wmeval::kin
