// Randomized properties over hand-rolled generators. Each test draws from a
// fixed seed so failures reproduce.

#include "support.hpp"

#include "wmeval/core/grade.hpp"
#include "wmeval/core/joint_layout.hpp"
#include "wmeval/corpus/annotation.hpp"
#include "wmeval/judge/sampling.hpp"
#include "wmeval/judge/voting.hpp"
#include "wmeval/kinematics/physlaw.hpp"
#include "wmeval/metrics/metrics.hpp"
#include "wmeval/oracle/synthetic.hpp"
#include "wmeval/perturb/perturbation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

using namespace wmeval;

namespace {

constexpr int kTrials = 200;

struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  bool coin() { return integer(0, 1) == 1; }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))];
  }
};

/// Columns each kind may edit under the default layout.
std::set<Eigen::Index> edited_columns(PerturbationKind kind, const JointLayout& layout) {
  std::set<Eigen::Index> cols;
  auto add = [&](JointGroup g) {
    const auto r = layout.range(g);
    for (Eigen::Index c = r.begin; c < r.end; ++c) cols.insert(c);
  };
  switch (kind) {
    case PerturbationKind::GripForceWeak:
    case PerturbationKind::PrematureRelease:
    case PerturbationKind::GripCarrySlip: add(JointGroup::LeftHand); break;
    case PerturbationKind::ContactOscillation:
      add(JointGroup::LeftArm);
      add(JointGroup::RightArm);
      break;
    case PerturbationKind::WristTiltGrasp:
      for (auto side : {Side::Left, Side::Right}) {
        for (auto c : layout.wrist(side)) cols.insert(c);
      }
      break;
    case PerturbationKind::ApproachOvershoot: add(JointGroup::LeftArm); break;
  }
  return cols;
}

CentroidTrajectory random_walk(Gen& g, int frames) {
  Eigen::VectorXd t(frames), x(frames), y(frames);
  double px = g.real(0, 1), py = g.real(0, 1);
  const double step = g.real(0.001, 0.08);
  const double fps = g.real(8, 60);
  for (int k = 0; k < frames; ++k) {
    t(k) = k / fps;
    px = std::clamp(px + g.real(-step, step), 0.0, 1.0);
    py = std::clamp(py + g.real(-step, step), 0.0, 1.0);
    if (g.integer(0, 9) == 0) py = g.real(0, 1);  // occasional tracking jump
    x(k) = px;
    y(k) = py;
  }
  return {t, x, y};
}

void expect_unit(const std::optional<double>& v, const char* what) {
  if (v) {
    EXPECT_GE(*v, 0.0) << what;
    EXPECT_LE(*v, 1.0) << what;
  }
}

}  // namespace

TEST(CoreProperty, ZeroPadThenExtractIsIdentity) {
  Gen g(1);
  for (int trial = 0; trial < kTrials; ++trial) {
    Eigen::VectorXd row(kActiveDims);
    for (int i = 0; i < kActiveDims; ++i) row(i) = g.real(-5, 5);
    const Eigen::Index width = g.integer(kActiveDims, 512);
    const Eigen::VectorXd padded = zero_pad(row, width);
    ASSERT_EQ(padded.size(), width);
    for (Eigen::Index i = kActiveDims; i < width; ++i) EXPECT_EQ(padded(i), 0.0);
    const auto back = extract_active(padded);
    for (int i = 0; i < kActiveDims; ++i) EXPECT_EQ(back(i), row(i));
  }
}

TEST(PerturbProperty, ShapeAndLocality) {
  Gen g(2);
  const auto layout = JointLayout::gr1();
  for (int trial = 0; trial < kTrials; ++trial) {
    const auto kind = kAllPerturbationKinds[static_cast<std::size_t>(g.integer(0, 5))];
    const int frames = g.integer(2, 120);
    const double s = g.real(0, 1);
    const auto traj = wmeval::testing::random_actions(g.rng, frames);
    const auto out = perturb::apply_perturbation(traj, perturb::PerturbationSpec(kind, s), layout);
    ASSERT_EQ(out.frames(), traj.frames());
    ASSERT_EQ(out.data().cols(), traj.data().cols());
    EXPECT_EQ(out.source_dim(), traj.source_dim());

    const auto window = perturb::phase_window(kind, frames);
    const auto cols = edited_columns(kind, layout);
    for (Eigen::Index t = 0; t < frames; ++t) {
      for (Eigen::Index c = 0; c < kActiveDims; ++c) {
        if (window.contains(t) && cols.count(c)) continue;
        ASSERT_EQ(out.data()(t, c), traj.data()(t, c))
            << to_string(kind) << " T=" << frames << " t=" << t << " c=" << c;
      }
    }
  }
}

TEST(PerturbProperty, GripForceWeakTwiceSquaresFactor) {
  Gen g(3);
  const auto layout = JointLayout::gr1();
  const auto hand = layout.range(JointGroup::LeftHand);
  for (int trial = 0; trial < 50; ++trial) {
    const int frames = g.integer(2, 100);
    const double s = g.real(0, 1);
    const perturb::PerturbationSpec spec(PerturbationKind::GripForceWeak, s);
    const auto traj = wmeval::testing::random_actions(g.rng, frames);
    const auto twice = perturb::apply_perturbation(perturb::apply_perturbation(traj, spec, layout), spec, layout);
    const auto window = perturb::phase_window(PerturbationKind::GripForceWeak, frames);
    for (Eigen::Index t = 0; t < frames; ++t) {
      for (Eigen::Index c = hand.begin; c < hand.end; ++c) {
        const double want = window.contains(t) ? traj.data()(t, c) * (1 - s) * (1 - s) : traj.data()(t, c);
        EXPECT_NEAR(twice.data()(t, c), want, 1e-15);
      }
    }
  }
}

TEST(PerturbProperty, ContactOscillationVanishesAtWindowEnds) {
  Gen g(4);
  const auto layout = JointLayout::gr1();
  for (int trial = 0; trial < 50; ++trial) {
    const int frames = g.integer(8, 200);
    const auto traj = wmeval::testing::random_actions(g.rng, frames);
    const auto out = perturb::apply_perturbation(
        traj, perturb::PerturbationSpec(PerturbationKind::ContactOscillation, 0.5), layout);
    const auto w = perturb::phase_window(PerturbationKind::ContactOscillation, frames);
    for (Eigen::Index c = 0; c < 14; ++c) {
      EXPECT_NEAR(out.data()(w.first, c), traj.data()(w.first, c), 1e-9);
      EXPECT_NEAR(out.data()(w.last, c), traj.data()(w.last, c), 1e-9);
    }
  }
}

TEST(SamplingProperty, UniformIndicesMonotoneAndAnchored) {
  Gen g(5);
  for (int trial = 0; trial < kTrials * 5; ++trial) {
    const int total = g.integer(1, 400);
    const int n = g.integer(1, 40);
    const auto idx = judge::uniform_indices(total, n);
    ASSERT_EQ(idx.size(), static_cast<std::size_t>(n));
    EXPECT_EQ(idx.front(), 0);
    for (std::size_t i = 1; i < idx.size(); ++i) EXPECT_LE(idx[i - 1], idx[i]);
    for (int i : idx) {
      EXPECT_GE(i, 0);
      EXPECT_LT(i, total);
    }
    if (n >= 2) {
      EXPECT_EQ(idx.back(), total - 1);
    }
    if (total >= n) {
      EXPECT_EQ(std::set<int>(idx.begin(), idx.end()).size(), idx.size());
    }
  }
}

TEST(VotingProperty, PairframeAffineInB) {
  Gen g(6);
  for (int trial = 0; trial < kTrials; ++trial) {
    const int n = g.integer(1, 30);
    const int n_b = g.integer(0, n);
    const int junk = g.integer(0, 5);
    std::vector<judge::JudgeVerdict> votes;
    for (int i = 0; i < n; ++i) {
      votes.push_back({judge::VerdictKind::AB, i < n_b ? judge::AB::B : judge::AB::A, ""});
    }
    for (int i = 0; i < junk; ++i) votes.push_back({judge::VerdictKind::AB, std::monostate{}, "?"});
    std::shuffle(votes.begin(), votes.end(), g.rng);
    const auto r = judge::pairframe_score(votes);
    ASSERT_TRUE(r.has_value());
    EXPECT_NEAR(r->score, 100.0 - n_b * (100.0 / n), 1e-9);
    EXPECT_EQ(r->label == judge::AB::B, n_b >= 1);
    EXPECT_EQ(r->n_discarded, junk);
  }
}

TEST(VotingProperty, OpsAndBiasMatchCounters) {
  Gen g(7);
  for (int trial = 0; trial < kTrials; ++trial) {
    const int n = g.integer(1, 20);
    std::vector<judge::JudgeVerdict> ops, bias;
    int ones = 0, same = 0;
    for (int i = 0; i < n; ++i) {
      const bool one = g.coin();
      ones += one;
      ops.push_back({judge::VerdictKind::Binary01, one ? 1 : 0, ""});
      const bool s = g.coin();
      same += s;
      bias.push_back({judge::VerdictKind::SameDifferent, s ? judge::Comparison::Same : judge::Comparison::Different, ""});
    }
    EXPECT_EQ(judge::ops_aggregate(ops)->preserved, 10 * ones >= 7 * n);
    EXPECT_EQ(judge::bias_vote(bias)->label == judge::BiasLabel::Y, same > n - same);
  }
}

TEST(MetricsProperty, GenMonotoneAndClipped) {
  Gen g(8);
  for (int trial = 0; trial < kTrials; ++trial) {
    const double id = g.real(0, 100);
    const double a = g.real(0, id), b = g.real(0, id);
    const double lo = std::min(a, b), hi = std::max(a, b);
    // Larger ood rate means smaller delta, so a higher or equal score.
    EXPECT_LE(metrics::gen_score(id, lo), metrics::gen_score(id, hi));
    if (id - hi > 1e-9 && hi - lo > 1e-9) {
      EXPECT_LT(metrics::gen_score(id, lo), metrics::gen_score(id, hi));
    }
    EXPECT_DOUBLE_EQ(metrics::gen_score(id, g.real(id, 100)), 100.0);
  }
}

TEST(MetricsProperty, PhysicalAdherencePermutationAndAffine) {
  Gen g(9);
  for (int trial = 0; trial < kTrials; ++trial) {
    const int n = g.integer(1, 20);
    std::vector<double> d(static_cast<std::size_t>(n));
    for (auto& v : d) v = g.real(0, 1);
    const double pa = metrics::physical_adherence(d);
    auto shuffled = d;
    std::shuffle(shuffled.begin(), shuffled.end(), g.rng);
    EXPECT_NEAR(metrics::physical_adherence(shuffled), pa, 1e-12);

    const auto i = static_cast<std::size_t>(g.integer(0, n - 1));
    auto at = [&](double x) {
      auto e = d;
      e[i] = x;
      return metrics::physical_adherence(e);
    };
    const double x = g.real(0, 1);
    EXPECT_NEAR(at(x), at(0.0) - x / n, 1e-12);
  }
}

TEST(MetricsProperty, ObPlusPreservationIsHundred) {
  Gen g(10);
  for (int trial = 0; trial < kTrials; ++trial) {
    std::vector<int> flags(static_cast<std::size_t>(g.integer(1, 50)));
    for (auto& f : flags) f = g.coin();
    const auto r = metrics::optimism_bias(flags);
    EXPECT_EQ(r.ob + r.preservation, 100.0);
  }
}

TEST(KinematicsProperty, FuzzedScoresStayInRange) {
  Gen g(11);
  for (int trial = 0; trial < kTrials; ++trial) {
    const auto traj = random_walk(g, g.integer(4, 150));
    const int vqs = g.pick(std::vector<int>{0, 5, 10});
    const auto report = kin::evaluate(traj, vqs, vqs == 10, kin::PhysLawParams{});
    const auto& r = report.result;
    EXPECT_GE(r.final, 0.0);
    EXPECT_LE(r.final, 100.0);
    if (vqs != 10) {
      EXPECT_LE(r.final, 5.0);
    }
    expect_unit(r.curve, "curve");
    expect_unit(r.event, "event");
    expect_unit(r.kinematic, "kinematic");
    for (const auto& axis : report.axes) {
      for (const auto& s : axis.scores) {
        EXPECT_GE(s.seg_score, 0.0);
        EXPECT_LE(s.seg_score, 1.0);
      }
    }
  }
}

TEST(KinematicsProperty, SegmentFactorsAreScaleInvariant) {
  Gen g(12);
  for (int trial = 0; trial < kTrials; ++trial) {
    const int n = g.integer(8, 40);
    const double fps = g.real(10, 30);
    const double a = g.real(-4, 4), v0 = g.real(-1, 1);
    Eigen::VectorXd t(n), p(n);
    for (int k = 0; k < n; ++k) {
      t(k) = k / fps;
      p(k) = 0.2 + v0 * t(k) + 0.5 * a * t(k) * t(k) + g.real(-2e-3, 2e-3);
    }
    const auto kind = g.pick(std::vector<kin::SegmentKind>{kin::SegmentKind::Fall, kin::SegmentKind::Slide});
    const Axis axis = kind == kin::SegmentKind::Fall ? Axis::Vertical : Axis::Horizontal;
    const kin::Segment seg{kind, 0, n};
    const double k = g.real(1e-3, 1.0);
    const Eigen::VectorXd scaled = (k * p.array() + g.real(-1, 1)).matrix();
    const auto s1 = kin::score_segment(t, p, seg, axis, false);
    const auto s2 = kin::score_segment(t, scaled, seg, axis, false);
    EXPECT_NEAR(s1.sign_ok, s2.sign_ok, 1e-9);
    EXPECT_NEAR(s1.uniformity_ok, s2.uniformity_ok, 1e-9);
    EXPECT_NEAR(s1.magnitude_ok, s2.magnitude_ok, 1e-9);
  }
}

TEST(KinematicsProperty, TimeShiftInvariance) {
  Gen g(13);
  for (int trial = 0; trial < 60; ++trial) {
    CentroidTrajectory traj = trial % 2 ? random_walk(g, g.integer(12, 90))
                                        : oracle::gen_ladder(oracle::kAllLevels[static_cast<std::size_t>(trial / 2 % 5)],
                                                             static_cast<std::uint64_t>(trial), 32);
    const double c = g.real(0.1, 5.0);
    const CentroidTrajectory shifted((traj.t().array() + c).matrix(), traj.x(), traj.y());
    const auto a = kin::evaluate(traj, 10, true, kin::PhysLawParams{}).result;
    const auto b = kin::evaluate(shifted, 10, true, kin::PhysLawParams{}).result;
    EXPECT_NEAR(a.final, b.final, 1e-6) << trial;
    EXPECT_EQ(a.curve.has_value(), b.curve.has_value());
    EXPECT_EQ(a.event.has_value(), b.event.has_value());
  }
}

TEST(KinematicsProperty, InvertedSignZeroesCurve) {
  Gen g(14);
  int triggered = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    // Descending but decelerating: the fitted acceleration points upward.
    const int n = g.integer(16, 60);
    const double fps = 16.0;
    const double dur = (n - 1) / fps;
    const double decel = g.real(0.2, 3.0);
    const double v0 = decel * dur * g.real(1.0, 1.5);
    const double drop = v0 * dur - 0.5 * decel * dur * dur;
    const double scale = 0.7 / drop;
    Eigen::VectorXd t(n), y(n);
    for (int k = 0; k < n; ++k) {
      t(k) = k / fps;
      y(k) = 0.1 + scale * (v0 * t(k) - 0.5 * decel * t(k) * t(k));
    }
    const auto report = kin::evaluate(CentroidTrajectory(t, Eigen::VectorXd::Constant(n, 0.5), y), 10, true,
                                      kin::PhysLawParams{});
    for (const auto& axis : report.axes) {
      if (axis.axis != Axis::Vertical) continue;
      bool inverted = false;
      for (const auto& s : axis.scores) {
        const bool vertical_kind = s.segment.kind == kin::SegmentKind::Fall || s.segment.kind == kin::SegmentKind::Rise;
        if (vertical_kind && s.fitted_a < 0 && s.ratio >= 0.3) inverted = true;
      }
      if (inverted) {
        ++triggered;
        ASSERT_TRUE(axis.curve.has_value());
        EXPECT_EQ(*axis.curve, 0.0) << trial;
      }
    }
  }
  EXPECT_GT(triggered, kTrials / 2);
}

TEST(CorpusProperty, AnnotationRoundTripIsLossless) {
  Gen g(15);
  const std::vector<std::string> words{"A", "B", "C", "D", "NA", "Y", "Y?", "N", "?", "3", "No violation", "x, y"};
  for (int trial = 0; trial < kTrials; ++trial) {
    const int items = g.integer(1, 12);
    nlohmann::json item_arr = nlohmann::json::array();
    nlohmann::json question = nlohmann::json::object();
    std::map<std::string, std::string> expected;
    for (int i = 0; i < items; ++i) {
      const std::string id = std::to_string(i + 1);
      std::vector<std::string> opts;
      for (int k = g.integer(0, 5); k > 0; --k) opts.push_back(g.pick(words));
      item_arr.push_back({{"id", id}, {"title", "t" + id}, {"options", opts}});
      if (g.integer(0, 3) == 0) continue;
      if (g.coin()) {
        const auto a = g.pick(words), b = g.pick(words);
        question[id] = {a, b};
        expected[id] = a + "|" + b;
      } else {
        question[id] = g.pick(words);
        expected[id] = question[id].get<std::string>();
      }
    }
    if (expected.empty()) {
      question["1"] = "A";
      expected["1"] = "A";
    }
    const nlohmann::json doc{{"markData", {{"videoQuality", {{"items", item_arr}, {"question", question}}}}}};
    const auto first = corpus::parse_annotation(doc.dump(), corpus::AnnotationLevel::PhysLaw, "m", "v");
    ASSERT_TRUE(first.record.has_value());
    EXPECT_EQ(first.record->answers, expected);
    const auto second =
        corpus::parse_annotation(corpus::to_json(*first.record).dump(), corpus::AnnotationLevel::PhysLaw, "m", "v");
    ASSERT_TRUE(second.record.has_value());
    EXPECT_EQ(second.record->answers, first.record->answers);
    EXPECT_EQ(second.record->items, first.record->items);
  }
}

TEST(CorpusProperty, SevereAndMildSumToHundred) {
  Gen g(16);
  for (int trial = 0; trial < kTrials; ++trial) {
    std::size_t severe = 0, mild = 0;
    for (int k = g.integer(1, 40); k > 0; --k) {
      const Tier tier = static_cast<Tier>(g.integer(0, 3));
      (Grade::of(tier).severe() ? severe : mild) += 1;
    }
    const std::size_t n = severe + mild;
    EXPECT_NEAR(metrics::rate(severe, n) + metrics::rate(mild, n), 100.0, 1e-12);
  }
}
