#include "wmeval/core/errors.hpp"
#include "wmeval/kinematics/physlaw.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace wmeval;
using namespace wmeval::kin;
using V = Eigen::VectorXd;

namespace {

V times(int n, double fps) { return V::LinSpaced(n, 0.0, (n - 1) / fps); }

CentroidTrajectory vertical(const V& t, const V& y, double x = 0.5) {
  return CentroidTrajectory(t, V::Constant(t.size(), x), y);
}

/// Drop from rest at y0 reaching `ground` exactly on frame `land`, then still.
CentroidTrajectory drop(int frames, int land, double fps = 16.0, double y0 = 0.1, double ground = 0.9) {
  const V t = times(frames, fps);
  const double g = 2.0 * (ground - y0) / (t(land) * t(land));
  V y(frames);
  for (int k = 0; k < frames; ++k) y(k) = k < land ? y0 + 0.5 * g * t(k) * t(k) : ground;
  return vertical(t, y);
}

std::vector<SegmentKind> moving_kinds(const std::vector<Segment>& segs) {
  std::vector<SegmentKind> out;
  for (const auto& s : segs) {
    if (!s.is_rest()) out.push_back(s.kind);
  }
  return out;
}

}  // namespace

TEST(DispatchAxis, Examples) {
  const V t = times(10, 10);
  auto make = [&](double dx, double dy) {
    return CentroidTrajectory(t, V::LinSpaced(10, 0.3, 0.3 + dx), V::LinSpaced(10, 0.2, 0.2 + dy));
  };
  EXPECT_EQ(dispatch_axis(make(0.01, 0.5)), AxisRoute::Vertical);
  EXPECT_EQ(dispatch_axis(make(0.2, 0.2)), AxisRoute::Both);
  EXPECT_EQ(dispatch_axis(make(0.01, 0.04)), AxisRoute::Both);
  EXPECT_EQ(dispatch_axis(make(0.5, 0.01)), AxisRoute::Horizontal);
  EXPECT_EQ(dispatch_axis(make(0.04, 0.01)), AxisRoute::Both);
}

TEST(Segment, ParabolaThenFlat) {
  const double fps = 16, v0 = 0.6, g = 3.0;
  const V t = times(30, fps);
  V y(30);
  const double t_land = 0.5;  // frame 8
  for (int k = 0; k < 30; ++k) {
    const double tk = std::min(t(k), t_land);
    y(k) = 0.1 + v0 * tk + 0.5 * g * tk * tk;
  }
  const auto segs = segment(vertical(t, y), Axis::Vertical);
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_EQ(segs[0].kind, SegmentKind::Fall);
  EXPECT_EQ(segs[0].start, 0);
  EXPECT_NEAR(static_cast<double>(segs[0].end - 1), 8.0, 1.0);
  EXPECT_EQ(segs[1].kind, SegmentKind::Rest);
  EXPECT_EQ(segs[1].end, 30);
}

TEST(Segment, DropBounceDrop) {
  const double fps = 30, g = 4.0, ground = 0.9, ratio = 0.4;
  const int frames = 90;
  const V t = times(frames, fps);
  const int land1 = 15;
  const double t1 = t(land1);
  const double v0 = 0.3;
  const double h1 = v0 * t1 + 0.5 * g * t1 * t1;
  const double y0 = ground - h1;
  const double v_up = std::sqrt(2.0 * g * ratio * h1);
  const double t2 = t1 + 2.0 * v_up / g;
  V y(frames);
  for (int k = 0; k < frames; ++k) {
    const double tk = t(k);
    if (tk <= t1) {
      y(k) = y0 + v0 * tk + 0.5 * g * tk * tk;
    } else if (tk < t2) {
      const double d = tk - t1;
      y(k) = ground - v_up * d + 0.5 * g * d * d;
    } else {
      y(k) = ground;
    }
  }
  const int land2 = static_cast<int>(std::ceil(t2 * fps));
  const auto segs = segment(vertical(t, y), Axis::Vertical);
  EXPECT_EQ(moving_kinds(segs), (std::vector{SegmentKind::Fall, SegmentKind::Rise, SegmentKind::Fall}));
  EXPECT_EQ(segs.back().kind, SegmentKind::Rest);
  std::vector<Segment> moving;
  for (const auto& s : segs) {
    if (!s.is_rest()) moving.push_back(s);
  }
  ASSERT_EQ(moving.size(), 3u);
  EXPECT_NEAR(static_cast<double>(moving[0].end - 1), land1, 1.0);
  EXPECT_NEAR(static_cast<double>(moving[1].start), land1, 1.0);
  EXPECT_NEAR(static_cast<double>(moving[2].end - 1), land2, 1.0);
}

TEST(Segment, ConstantIsRest) {
  const V t = times(20, 16);
  const auto segs = segment(vertical(t, V::Constant(20, 0.4)), Axis::Vertical);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0], (Segment{SegmentKind::Rest, 0, 20}));
}

TEST(Segment, RiseBeforeFallBecomesLift) {
  const V t = times(40, 16);
  V y(40);
  for (int k = 0; k < 40; ++k) {
    if (k <= 12) y(k) = 0.8 - 0.04 * k;       // carried up
    else if (k <= 25) y(k) = 0.32 + 0.04 * (k - 12);  // back down
    else y(k) = 0.84;
  }
  const auto kinds = moving_kinds(segment(vertical(t, y), Axis::Vertical));
  ASSERT_GE(kinds.size(), 2u);
  EXPECT_EQ(kinds[0], SegmentKind::Lift);
  EXPECT_EQ(kinds[1], SegmentKind::Fall);
}

TEST(Segment, ShortOrSmallBlocksDemoted) {
  const V t = times(20, 16);
  V y = V::Constant(20, 0.5);
  y(10) = 0.52;  // 0.02 span spike: below the 0.03 floor
  for (const auto& s : segment(vertical(t, y), Axis::Vertical)) EXPECT_TRUE(s.is_rest());
}

TEST(Segment, TooFewFrames) {
  EXPECT_THROW(segment_series(V::LinSpaced(3, 0, 1), V::Zero(3), Axis::Vertical), TrajectoryError);
}

TEST(FitQuadratic, ExactPolynomial) {
  const V t = V::LinSpaced(10, 0.0, 1.8);
  const V y = (3.0 * t.array().square() + 2.0 * t.array() + 1.0).matrix();
  const auto fit = fit_quadratic(t, y);
  EXPECT_NEAR(fit.a, 3.0, 1e-9);
  EXPECT_NEAR(fit.b, 2.0, 1e-9);
  EXPECT_NEAR(fit.c, 1.0, 1e-9);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  EXPECT_NEAR(fit.acceleration(), 6.0, 1e-9);
}

TEST(FitQuadratic, NoisyRecoversCurvature) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> noise(0.0, 1e-3);
  const V t = V::LinSpaced(40, 0.0, 2.0);
  V y(40);
  for (int i = 0; i < 40; ++i) y(i) = 3.0 * t(i) * t(i) + noise(rng);
  EXPECT_NEAR(fit_quadratic(t, y).a, 3.0, 1e-2);
}

TEST(FitQuadratic, Errors) {
  EXPECT_THROW(fit_quadratic(V::LinSpaced(3, 0, 1), V::Zero(3)), FitError);
  EXPECT_THROW(fit_quadratic(V::Constant(5, 1.0), V::LinSpaced(5, 0, 1)), FitError);
}

TEST(SegmentFactors, SignFormula) {
  EXPECT_DOUBLE_EQ(sign_factor(0.15, false), 0.5);
  EXPECT_DOUBLE_EQ(sign_factor(0.3, false), 0.0);
  EXPECT_DOUBLE_EQ(sign_factor(2.0, false), 0.0);
  EXPECT_DOUBLE_EQ(sign_factor(0.01, true), 1.0);
}

TEST(SegmentFactors, VerticalMagnitudeBand) {
  EXPECT_DOUBLE_EQ(vertical_magnitude(0.3), 1.0);
  EXPECT_DOUBLE_EQ(vertical_magnitude(1.0), 1.0);
  EXPECT_DOUBLE_EQ(vertical_magnitude(3.0), 1.0);
  EXPECT_DOUBLE_EQ(vertical_magnitude(0.15), 0.5);
  EXPECT_DOUBLE_EQ(vertical_magnitude(4.5), 0.5);
  EXPECT_DOUBLE_EQ(vertical_magnitude(0.0), 0.0);
  EXPECT_DOUBLE_EQ(vertical_magnitude(6.0), 0.0);
  EXPECT_DOUBLE_EQ(vertical_magnitude(9.0), 0.0);
}

TEST(SegmentFactors, HorizontalMagnitude) {
  EXPECT_DOUBLE_EQ(horizontal_magnitude(0.30), 1.0);
  EXPECT_DOUBLE_EQ(horizontal_magnitude(0.9), 1.0);
  EXPECT_DOUBLE_EQ(horizontal_magnitude(0.05), 0.4);
  EXPECT_NEAR(horizontal_magnitude(0.175), 0.7, 1e-12);
  EXPECT_DOUBLE_EQ(horizontal_magnitude(0.04), 0.0);
}

TEST(SegmentFactors, Uniformity) {
  EXPECT_DOUBLE_EQ(uniformity_factor(0.0), 1.0);
  EXPECT_DOUBLE_EQ(uniformity_factor(0.15), 1.0);
  EXPECT_NEAR(uniformity_factor(0.475), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(uniformity_factor(0.80), 0.0);
  EXPECT_DOUBLE_EQ(uniformity_factor(1.0), 0.0);
}

TEST(ScoreSegment, PerfectFall) {
  const auto traj = drop(20, 19, 16.0);
  const Segment seg{SegmentKind::Fall, 0, 20};
  const auto s = score_segment(traj.t(), traj.y(), seg, Axis::Vertical, false);
  EXPECT_NEAR(s.ratio, 1.0, 1e-9);
  EXPECT_NEAR(s.half_cv, 0.0, 1e-6);
  EXPECT_DOUBLE_EQ(s.sign_ok, 1.0);
  EXPECT_DOUBLE_EQ(s.magnitude_ok, 1.0);
  EXPECT_DOUBLE_EQ(s.uniformity_ok, 1.0);
  EXPECT_DOUBLE_EQ(s.seg_score, 1.0);
  EXPECT_FALSE(s.degraded);
}

TEST(ScoreSegment, WrongSignFallIsZero) {
  // Decelerating descent: y = y0 + v t - a t^2 / 2 with a = 2v / (3T) gives r = 0.5.
  const int n = 16;
  const V t = times(n, 16);
  const double T = t(n - 1), v = 0.8, a = 2.0 * v / (3.0 * T);
  const V y = (0.1 + v * t.array() - 0.5 * a * t.array().square()).matrix();
  const auto s = score_segment(t, y, Segment{SegmentKind::Fall, 0, n}, Axis::Vertical, false);
  EXPECT_NEAR(s.ratio, 0.5, 1e-9);
  EXPECT_DOUBLE_EQ(s.sign_ok, 0.0);
  EXPECT_DOUBLE_EQ(s.seg_score, 0.0);
}

TEST(ScoreSegment, RiseMagnitudeExemptAndOrderingViolation) {
  const int n = 12;
  const V t = times(n, 16);
  const double v = 1.2, g = 1.5;
  const V y = (0.8 - v * t.array() + 0.5 * g * t.array().square()).matrix();
  const std::vector<Segment> segs{{SegmentKind::Rise, 0, n}};
  const auto scores = score_segments(t, y, segs, Axis::Vertical);
  ASSERT_EQ(scores.size(), 1u);
  EXPECT_TRUE(scores[0].ordering_violation);
  EXPECT_DOUBLE_EQ(scores[0].sign_ok, 0.0);
  EXPECT_DOUBLE_EQ(scores[0].magnitude_ok, 1.0);
  EXPECT_EQ(curve_score(segs, scores, n, Axis::Vertical), std::optional<double>(0.0));
}

TEST(ScoreSegment, ShortSegmentDegradesUniformity) {
  const auto traj = drop(7, 6, 16.0);
  const auto s = score_segment(traj.t(), traj.y(), Segment{SegmentKind::Fall, 0, 7}, Axis::Vertical, false);
  EXPECT_TRUE(s.degraded);
  EXPECT_DOUBLE_EQ(s.uniformity_ok, 1.0);
}

TEST(CurveScore, Examples) {
  SegmentScore<double> good;
  good.segment = {SegmentKind::Fall, 0, 6};
  good.sign_ok = 1.0;
  good.seg_score = 0.8;
  const std::vector<Segment> segs{{SegmentKind::Fall, 0, 6}, {SegmentKind::Rest, 5, 10}};
  EXPECT_NEAR(*curve_score(segs, std::vector{good}, 10, Axis::Vertical), 0.8, 1e-12);

  // Coverage 3/20 = 0.15 halves the score.
  SegmentScore<double> small = good;
  small.segment = {SegmentKind::Fall, 0, 3};
  const std::vector<Segment> sparse{{SegmentKind::Fall, 0, 3}, {SegmentKind::Rest, 2, 20}};
  EXPECT_NEAR(*curve_score(sparse, std::vector{small}, 20, Axis::Vertical), 0.4, 1e-12);

  SegmentScore<double> bad = good;
  bad.sign_ok = 0.0;
  bad.seg_score = 0.0;
  EXPECT_EQ(curve_score(segs, std::vector{good, bad}, 10, Axis::Vertical), std::optional<double>(0.0));

  EXPECT_FALSE(curve_score<double>(segs, {}, 10, Axis::Vertical).has_value());
}

TEST(CurveScore, LengthWeightedVertical) {
  SegmentScore<double> a, b;
  a.segment = {SegmentKind::Fall, 0, 10};
  a.sign_ok = 1;
  a.seg_score = 1.0;
  b.segment = {SegmentKind::Fall, 9, 14};
  b.sign_ok = 1;
  b.seg_score = 0.4;
  const std::vector<Segment> segs{a.segment, b.segment};
  // (10 * 1.0 + 5 * 0.4) / 15 = 0.8, coverage 15/15.
  EXPECT_NEAR(*curve_score(segs, std::vector{a, b}, 15, Axis::Vertical), 0.8, 1e-12);
}

TEST(CurveScore, HorizontalSlideCoverage) {
  SegmentScore<double> slide;
  slide.segment = {SegmentKind::Slide, 10, 12};
  slide.sign_ok = 1;
  slide.seg_score = 1.0;
  // Slide covers 2 of 12 valid frames (< 0.20): absent.
  const std::vector<Segment> segs{{SegmentKind::Push, 0, 10}, {SegmentKind::Slide, 10, 12}};
  EXPECT_FALSE(curve_score(segs, std::vector{slide}, 12, Axis::Horizontal).has_value());
  // Push 6 + slide 6 of 20 frames: coverage 0.6 -> 1; slide coverage 0.5 -> 1.
  slide.segment = {SegmentKind::Slide, 6, 12};
  slide.seg_score = 0.9;
  const std::vector<Segment> balanced{{SegmentKind::Push, 0, 6}, {SegmentKind::Slide, 6, 12}, {SegmentKind::Rest, 12, 20}};
  EXPECT_NEAR(*curve_score(balanced, std::vector{slide}, 20, Axis::Horizontal), 0.9, 1e-12);
}

TEST(DetectImpact, DropLandingAt30) {
  const auto traj = drop(60, 30, 16.0);
  const auto segs = segment(traj, Axis::Vertical);
  const auto impact = detect_impact(traj.t(), traj.y(), segs);
  ASSERT_TRUE(impact.has_value());
  EXPECT_NEAR(static_cast<double>(*impact), 30.0, 1.0);
}

TEST(DetectImpact, NeverStopping) {
  const V t = times(40, 16);
  const auto traj = vertical(t, V::LinSpaced(40, 0.1, 0.9));
  const auto segs = segment(traj, Axis::Vertical);
  EXPECT_FALSE(detect_impact(traj.t(), traj.y(), segs).has_value());
}

TEST(DetectImpact, AllRest) {
  const auto traj = vertical(times(20, 16), V::Constant(20, 0.5));
  EXPECT_FALSE(detect_impact(traj.t(), traj.y(), segment(traj, Axis::Vertical)).has_value());
}

TEST(EventFeatures, CleanStop) {
  const auto traj = drop(40, 20, 16.0);
  const auto segs = segment(traj, Axis::Vertical);
  const auto impact = detect_impact(traj.t(), traj.y(), segs);
  const auto f = event_features(traj.t(), traj.y(), segs, impact);
  EXPECT_TRUE(f.has_impact);
  EXPECT_TRUE(f.usable);
  EXPECT_NEAR(f.velocity_drop, 1.0, 1e-9);
  EXPECT_NEAR(f.drift, 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(f.bounce, 1.0);
  EXPECT_FALSE(f.bounce_ratio.has_value());
}

TEST(EventFeatures, NoImpactUnusable) {
  const V t = times(40, 16);
  const auto traj = vertical(t, V::LinSpaced(40, 0.1, 0.9));
  const auto segs = segment(traj, Axis::Vertical);
  const auto f = event_features(traj.t(), traj.y(), segs, std::nullopt);
  EXPECT_FALSE(f.usable);
  EXPECT_FALSE(event_score(f).has_value());
}

TEST(EventFeatures, BounceMapping) {
  EXPECT_DOUBLE_EQ(bounce_subscore(0.5), 1.0);
  EXPECT_DOUBLE_EQ(bounce_subscore(0.7), 1.0);
  EXPECT_NEAR(bounce_subscore(1.1), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(bounce_subscore(1.5), 0.0);
  EXPECT_DOUBLE_EQ(bounce_subscore(2.0), 0.0);
}

TEST(EventScore, WeightedSum) {
  EventFeatures<double> f;
  f.velocity_drop = 1;
  f.drift = 1;
  f.has_impact = true;
  f.bounce = 1;
  f.usable = true;
  EXPECT_DOUBLE_EQ(*event_score(f), 1.0);
  f.bounce = 0;
  EXPECT_NEAR(*event_score(f), 0.8, 1e-12);
  f.velocity_drop = 0.5;
  f.drift = 0.25;
  f.bounce = 0.5;
  EXPECT_NEAR(*event_score(f), 0.3 * 0.5 + 0.2 * 0.25 + 0.3 + 0.2 * 0.5, 1e-12);
  f.usable = false;
  EXPECT_FALSE(event_score(f).has_value());
}

TEST(Fuse, GatedMix) {
  EXPECT_NEAR(*fuse<double>(0.2, 0.9), 0.7 * 0.2 + 0.3 * 0.9, 1e-12);
  EXPECT_NEAR(*fuse<double>(0.8, 0.6), 0.3 * 0.8 + 0.7 * 0.6, 1e-12);
  EXPECT_NEAR(*fuse<double>(0.3, 0.5), 0.3 * 0.3 + 0.7 * 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(*fuse<double>(0.5, std::nullopt), 0.5);
  EXPECT_DOUBLE_EQ(*fuse<double>(std::nullopt, 0.7), 0.7);
  EXPECT_FALSE(fuse<double>(std::nullopt, std::nullopt).has_value());
  EXPECT_DOUBLE_EQ(*fuse<double>(1.0, 1.0), 1.0);
}

TEST(FinalScore, Examples) {
  EXPECT_DOUBLE_EQ(final_score(1.0, 10, true).final, 100.0);
  EXPECT_DOUBLE_EQ(final_score(std::nullopt, 5, false).final, 5.0);
  EXPECT_DOUBLE_EQ(final_score(1.0, 5, false).final, 5.0);
  EXPECT_DOUBLE_EQ(final_score(0.5, 10, true).final, 55.0);
  EXPECT_DOUBLE_EQ(final_score(std::nullopt, 10, true).final, 10.0);
  EXPECT_DOUBLE_EQ(final_score(0.9, 0, false).final, 0.0);
  EXPECT_THROW(final_score(0.5, 7, true), Error);
}

TEST(Evaluate, VerticalDropScoresHigh) {
  const auto report = evaluate(drop(40, 20, 16.0), 10, true);
  EXPECT_EQ(report.route, AxisRoute::Vertical);
  ASSERT_EQ(report.axes.size(), 1u);
  ASSERT_TRUE(report.chosen.has_value());
  EXPECT_DOUBLE_EQ(report.result.final, 100.0);
}

TEST(Evaluate, HorizontalPushSlide) {
  // Accelerated push for 8 frames, then friction decelerates to a stop.
  const double fps = 16, dt = 1 / fps;
  const int frames = 40;
  V x(frames);
  double pos = 0.1, vel = 0.0;
  for (int k = 0; k < frames; ++k) {
    x(k) = pos;
    const double acc = k < 8 ? 1.5 : (vel > 0 ? -1.2 : 0.0);
    const double nv = std::max(0.0, vel + acc * dt);
    pos += 0.5 * (vel + nv) * dt;
    vel = nv;
  }
  const CentroidTrajectory traj(times(frames, fps), x, V::Constant(frames, 0.5));
  const auto report = evaluate(traj, 10, true);
  EXPECT_EQ(report.route, AxisRoute::Horizontal);
  ASSERT_EQ(report.axes.size(), 1u);
  const auto kinds = moving_kinds(report.axes[0].segments);
  ASSERT_FALSE(kinds.empty());
  EXPECT_EQ(kinds.front(), SegmentKind::Push);
  EXPECT_NE(std::find(kinds.begin(), kinds.end(), SegmentKind::Slide), kinds.end());
  EXPECT_GE(report.result.final, 10.0);
  EXPECT_LE(report.result.final, 100.0);
}

TEST(Evaluate, JsonCarriesIntermediates) {
  const auto j = to_json(evaluate(drop(40, 20, 16.0), 10, true));
  EXPECT_EQ(j.at("route"), "vertical");
  ASSERT_EQ(j.at("axes").size(), 1u);
  const auto& axis = j.at("axes")[0];
  EXPECT_TRUE(axis.contains("segments"));
  EXPECT_TRUE(axis.contains("segment_scores"));
  EXPECT_TRUE(axis.contains("events"));
  for (const char* key : {"sign_ok", "magnitude_ok", "uniformity_ok", "seg_score", "r2", "fitted_a"}) {
    EXPECT_TRUE(axis.at("segment_scores")[0].contains(key)) << key;
  }
  EXPECT_DOUBLE_EQ(j.at("final").get<double>(), 100.0);
}
