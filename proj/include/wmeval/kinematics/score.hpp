#pragma once

#include "wmeval/kinematics/fit.hpp"
#include "wmeval/kinematics/segment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace wmeval::kin {

template <typename Scalar>
struct SegmentScore {
  Segment segment;
  Scalar fitted_a = 0;
  Scalar expected_a = 0;
  Scalar ratio = 0;
  Scalar sign_ok = 0;
  Scalar magnitude_ok = 0;
  Scalar uniformity_ok = 0;
  Scalar seg_score = 0;
  Scalar r2 = 0;
  Scalar half_cv = 0;
  /// Horizontal velocity decay d = 1 - |v_end| / |v_0|; zero on the vertical axis.
  Scalar decay = 0;
  /// Half-split fit was impossible; uniformity defaulted to 1.
  bool degraded = false;
  /// Rise with no preceding fall.
  bool ordering_violation = false;
};

inline bool is_scorable(SegmentKind kind) {
  return kind == SegmentKind::Fall || kind == SegmentKind::Rise || kind == SegmentKind::Slide;
}

template <typename Scalar>
Scalar sign_factor(Scalar ratio, bool base, const PhysLawParams& params = {}) {
  if (base) return Scalar(1);
  return Scalar(1) - std::min(Scalar(1), ratio / static_cast<Scalar>(params.sign_confidence));
}

/// 1 on [ratio_low, ratio_high], linear to 0 at ratio 0 and at ratio_zero.
template <typename Scalar>
Scalar vertical_magnitude(Scalar ratio, const PhysLawParams& params = {}) {
  const auto lo = static_cast<Scalar>(params.ratio_low);
  const auto hi = static_cast<Scalar>(params.ratio_high);
  const auto zero = static_cast<Scalar>(params.ratio_zero);
  if (ratio < lo) return clamp01(ratio / lo);
  if (ratio <= hi) return Scalar(1);
  return clamp01((zero - ratio) / (zero - hi));
}

template <typename Scalar>
Scalar horizontal_magnitude(Scalar decay, const PhysLawParams& params = {}) {
  const auto full = static_cast<Scalar>(params.decay_full);
  const auto floor = static_cast<Scalar>(params.decay_floor);
  const auto credit = static_cast<Scalar>(params.decay_floor_credit);
  if (decay >= full) return Scalar(1);
  if (decay < floor) return static_cast<Scalar>(params.decay_collapse);
  return credit + (Scalar(1) - credit) * (decay - floor) / (full - floor);
}

template <typename Scalar>
Scalar uniformity_factor(Scalar half_cv, const PhysLawParams& params = {}) {
  return ramp_down(half_cv, params.half_cv_full, params.half_cv_zero);
}

/// Scores one fall, rise or slide segment of the series `p`.
template <typename DerivedT, typename DerivedP>
SegmentScore<typename DerivedP::Scalar> score_segment(const Eigen::MatrixBase<DerivedT>& t,
                                                      const Eigen::MatrixBase<DerivedP>& p,
                                                      const Segment& seg, Axis axis,
                                                      bool ordering_violation,
                                                      const PhysLawParams& params = {}) {
  using Scalar = typename DerivedP::Scalar;
  if (!is_scorable(seg.kind)) throw Error("segment kind is not scorable");
  const Eigen::Index n = seg.points();
  const auto ts = t.segment(seg.start, n);
  const auto ps = p.segment(seg.start, n);
  const auto fit = fit_quadratic(ts, ps);

  SegmentScore<Scalar> out;
  out.segment = seg;
  out.ordering_violation = ordering_violation;
  out.fitted_a = fit.acceleration();
  out.r2 = fit.r2;

  const Scalar dt = ts(n - 1) - ts(0);
  out.expected_a = Scalar(2) * std::abs(ps(n - 1) - ps(0)) / (dt * dt);
  out.ratio = out.expected_a > Scalar(0) ? std::abs(out.fitted_a) / out.expected_a
                                         : std::numeric_limits<Scalar>::infinity();

  bool base = false;
  if (axis == Axis::Vertical) {
    // Image y grows downward: gravity shows as positive acceleration for
    // both falls and rises.
    base = out.fitted_a > Scalar(0);
    out.magnitude_ok = seg.kind == SegmentKind::Rise ? Scalar(1) : vertical_magnitude(out.ratio, params);
  } else {
    const Scalar mean_v = (ps(n - 1) - ps(0)) / dt;
    base = out.fitted_a * mean_v < Scalar(0);
    const Scalar v0 = std::abs(fit.velocity(ts(0)));
    const Scalar v1 = std::abs(fit.velocity(ts(n - 1)));
    out.decay = v0 > Scalar(0) ? Scalar(1) - v1 / v0 : Scalar(0);
    out.magnitude_ok = horizontal_magnitude(out.decay, params);
  }
  out.sign_ok = ordering_violation ? Scalar(0) : sign_factor(out.ratio, base, params);

  const Eigen::Index half = n / 2;
  if (half < params.min_points || n - half < params.min_points) {
    out.uniformity_ok = Scalar(1);
    out.degraded = true;
  } else {
    const Scalar a1 = fit_quadratic(ts.head(half), ps.head(half)).acceleration();
    const Scalar a2 = fit_quadratic(ts.tail(n - half), ps.tail(n - half)).acceleration();
    const Scalar denom = std::max(std::abs(a1), std::abs(a2));
    out.half_cv = denom > Scalar(0) ? std::abs(a1 - a2) / denom : Scalar(0);
    out.uniformity_ok = uniformity_factor(out.half_cv, params);
  }

  out.seg_score = out.sign_ok * out.magnitude_ok * out.uniformity_ok;
  return out;
}

/// Scores every scorable segment; rises with no earlier fall are ordering
/// violations.
template <typename DerivedT, typename DerivedP>
std::vector<SegmentScore<typename DerivedP::Scalar>> score_segments(
    const Eigen::MatrixBase<DerivedT>& t, const Eigen::MatrixBase<DerivedP>& p,
    const std::vector<Segment>& segs, Axis axis, const PhysLawParams& params = {}) {
  std::vector<SegmentScore<typename DerivedP::Scalar>> out;
  bool fall_seen = false;
  for (const auto& s : segs) {
    if (s.kind == SegmentKind::Fall) fall_seen = true;
    if (!is_scorable(s.kind)) continue;
    const bool violation = axis == Axis::Vertical && s.kind == SegmentKind::Rise && !fall_seen;
    out.push_back(score_segment(t, p, s, axis, violation, params));
  }
  return out;
}

/// Frames inside fall/rise (vertical) or push/slide (horizontal) segments.
inline Eigen::Index valid_points(const std::vector<Segment>& segs, Axis axis) {
  Eigen::Index n = 0;
  for (const auto& s : segs) {
    const bool counted = axis == Axis::Vertical
                             ? (s.kind == SegmentKind::Fall || s.kind == SegmentKind::Rise)
                             : (s.kind == SegmentKind::Push || s.kind == SegmentKind::Slide);
    if (counted) n += s.points();
  }
  return n;
}

template <typename Scalar>
std::optional<Scalar> curve_score(const std::vector<Segment>& segs,
                                  const std::vector<SegmentScore<Scalar>>& scores, Eigen::Index n_ref,
                                  Axis axis, const PhysLawParams& params = {}) {
  if (scores.empty() || n_ref <= 0) return std::nullopt;
  const Eigen::Index n_valid = valid_points(segs, axis);
  const Scalar coverage = static_cast<Scalar>(n_valid) / static_cast<Scalar>(n_ref);

  if (axis == Axis::Vertical) {
    Scalar weighted = 0;
    Scalar weight = 0;
    for (const auto& s : scores) {
      if (s.sign_ok == Scalar(0)) return Scalar(0);
      const auto w = static_cast<Scalar>(s.segment.points());
      weighted += w * s.seg_score;
      weight += w;
    }
    const Scalar cov = std::min(Scalar(1), coverage / static_cast<Scalar>(params.coverage_vertical));
    return weighted / weight * cov;
  }

  Scalar total = 0;
  Eigen::Index n_slide = 0;
  std::size_t count = 0;
  for (const auto& s : scores) {
    if (s.segment.kind != SegmentKind::Slide) continue;
    total += s.seg_score;
    n_slide += s.segment.points();
    ++count;
  }
  if (count == 0 || n_valid == 0) return std::nullopt;
  const Scalar slide_cov = static_cast<Scalar>(n_slide) / static_cast<Scalar>(n_valid);
  if (slide_cov < static_cast<Scalar>(params.slide_coverage_min)) return std::nullopt;
  const Scalar cov = std::min(Scalar(1), coverage / static_cast<Scalar>(params.coverage_horizontal));
  const Scalar slide = std::min(Scalar(1), slide_cov / static_cast<Scalar>(params.slide_coverage_full));
  return total / static_cast<Scalar>(count) * cov * slide;
}

}  // namespace wmeval::kin
