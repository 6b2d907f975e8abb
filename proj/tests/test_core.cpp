#include "support.hpp"

#include "wmeval/core/action_trajectory.hpp"
#include "wmeval/core/centroid_trajectory.hpp"
#include "wmeval/core/episode.hpp"
#include "wmeval/core/errors.hpp"
#include "wmeval/core/grade.hpp"
#include "wmeval/core/io.hpp"
#include "wmeval/core/joint_layout.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <sstream>

using namespace wmeval;
using wmeval::testing::TempDir;

TEST(JointLayout, Gr1GroupsCoverActiveDims) {
  const auto layout = JointLayout::gr1();
  EXPECT_EQ(layout.range(JointGroup::LeftArm), (IndexRange{0, 7}));
  EXPECT_EQ(layout.range(JointGroup::RightArm), (IndexRange{7, 14}));
  EXPECT_EQ(layout.range(JointGroup::LeftHand), (IndexRange{14, 20}));
  EXPECT_EQ(layout.range(JointGroup::RightHand), (IndexRange{20, 26}));
  EXPECT_EQ(layout.range(JointGroup::Waist), (IndexRange{26, 29}));
  Eigen::Index covered = 0;
  for (auto g : kAllJointGroups) covered += layout.range(g).size();
  EXPECT_EQ(covered, kActiveDims);
}

TEST(JointLayout, DefaultWristsAreLastTwoArmJoints) {
  const auto layout = JointLayout::gr1();
  EXPECT_EQ(layout.wrist(Side::Left), (JointLayout::WristPair{5, 6}));
  EXPECT_EQ(layout.wrist(Side::Right), (JointLayout::WristPair{12, 13}));
}

TEST(JointLayout, RejectsWristOutsideArm) {
  EXPECT_THROW(JointLayout::gr1({5, 7}, {12, 13}), LayoutError);
  EXPECT_THROW(JointLayout::gr1({5, 6}, {6, 13}), LayoutError);
  EXPECT_NO_THROW(JointLayout::gr1({0, 1}, {7, 8}));
}

TEST(JointLayout, RejectsGapsAndOverlaps) {
  const JointLayout::WristPair lw{5, 6}, rw{12, 13};
  EXPECT_THROW(JointLayout({{{0, 7}, {8, 14}, {14, 20}, {20, 26}, {26, 29}}}, lw, rw), LayoutError);
  EXPECT_THROW(JointLayout({{{0, 7}, {6, 14}, {14, 20}, {20, 26}, {26, 29}}}, lw, rw), LayoutError);
  EXPECT_THROW(JointLayout({{{0, 7}, {7, 14}, {14, 20}, {20, 26}, {26, 28}}}, lw, rw), LayoutError);
}

TEST(ExtractActive, TakesPrefixOfPaddedVector) {
  Eigen::VectorXd raw = Eigen::VectorXd::Zero(384);
  for (int i = 0; i < 29; ++i) raw(i) = 0.1 * (i + 1);
  raw(100) = 5.0;
  const auto row = extract_active(raw);
  for (int i = 0; i < 29; ++i) EXPECT_DOUBLE_EQ(row(i), 0.1 * (i + 1));
}

TEST(ExtractActive, IdentityOn29) {
  Eigen::VectorXd raw = Eigen::VectorXd::LinSpaced(29, -1.0, 1.0);
  EXPECT_EQ(extract_active(raw).transpose(), raw);
}

TEST(ExtractActive, RejectsShortVector) {
  EXPECT_THROW(extract_active(Eigen::VectorXd::Zero(28)), DimensionError);
}

TEST(ZeroPad, RejectsNarrowTarget) {
  EXPECT_THROW(zero_pad(Eigen::VectorXd::Zero(29), 28), DimensionError);
}

TEST(ActionTrajectory, Invariants) {
  EXPECT_THROW(ActionTrajectory(ActionMatrix<double>::Zero(1, kActiveDims)), TrajectoryError);
  ActionMatrix<double> m = ActionMatrix<double>::Zero(3, kActiveDims);
  m(1, 4) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(ActionTrajectory{m}, TrajectoryError);
  EXPECT_THROW(ActionTrajectory(ActionMatrix<double>::Zero(3, kActiveDims), 20), DimensionError);
  const ActionTrajectory ok(ActionMatrix<double>::Ones(3, kActiveDims));
  EXPECT_EQ(ok.frames(), 3);
  EXPECT_EQ(ok.source_dim(), 384);
  EXPECT_EQ(ok.group(JointGroup::Waist, JointLayout::gr1()).cols(), 3);
}

TEST(CentroidTrajectory, Invariants) {
  using V = Eigen::VectorXd;
  const V t = V::LinSpaced(5, 0.0, 1.0);
  const V half = V::Constant(5, 0.5);
  EXPECT_NO_THROW(CentroidTrajectory(t, half, half));
  EXPECT_THROW(CentroidTrajectory(t.head(3), half.head(3), half.head(3)), TrajectoryError);
  EXPECT_THROW(CentroidTrajectory(t, half.head(4), half), TrajectoryError);
  V bad_t = t;
  bad_t(2) = bad_t(1);
  EXPECT_THROW(CentroidTrajectory(bad_t, half, half), TrajectoryError);
  V out_of_range = half;
  out_of_range(3) = 1.2;
  EXPECT_THROW(CentroidTrajectory(t, half, out_of_range), TrajectoryError);
  V nan = half;
  nan(0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(CentroidTrajectory(t, nan, half), TrajectoryError);
}

TEST(CentroidTrajectory, AlongSelectsAxis) {
  using V = Eigen::VectorXd;
  const CentroidTrajectory c(V::LinSpaced(4, 0, 3), V::Constant(4, 0.2), V::Constant(4, 0.7));
  EXPECT_DOUBLE_EQ(c.along(Axis::Horizontal)(0), 0.2);
  EXPECT_DOUBLE_EQ(c.along(Axis::Vertical)(0), 0.7);
}

TEST(Grade, RubricScores) {
  EXPECT_EQ(Grade::of(Tier::A), (Grade{Tier::A, 1.00}));
  EXPECT_EQ(Grade::of(Tier::B), (Grade{Tier::B, 0.67}));
  EXPECT_EQ(Grade::of(Tier::C), (Grade{Tier::C, 0.33}));
  EXPECT_EQ(Grade::of(Tier::D), (Grade{Tier::D, 0.00}));
  EXPECT_FALSE(Grade::of(Tier::NA).score.has_value());
  EXPECT_TRUE(Grade::of(Tier::C).severe());
  EXPECT_TRUE(Grade::of(Tier::D).severe());
  EXPECT_FALSE(Grade::of(Tier::B).severe());
  EXPECT_FALSE(Grade::of(Tier::NA).severe());
}

TEST(Grade, ScoreMonotoneInTier) {
  const Tier order[] = {Tier::A, Tier::B, Tier::C, Tier::D};
  for (int i = 0; i + 1 < 4; ++i) EXPECT_GT(*rubric_score(order[i]), *rubric_score(order[i + 1]));
}

TEST(GradeMapping, BundledTableMapsRubricPhrases) {
  const auto mapping = GradeMapping::load(std::string(WMEVAL_CONFIG_DIR) + "/grade_mapping.json");
  EXPECT_EQ(grade_from_option("No violation", mapping), Grade::of(Tier::A));
  EXPECT_EQ(grade_from_option("N/A", mapping), Grade::of(Tier::NA));
  EXPECT_THROW(grade_from_option("blurred", mapping), MappingError);
  try {
    grade_from_option("blurred", mapping);
  } catch (const MappingError& e) {
    EXPECT_NE(std::string(e.what()).find("blurred"), std::string::npos);
  }
}

TEST(GradeMapping, FallbackApplies) {
  const auto mapping = GradeMapping::from_json(
      nlohmann::json::parse(R"({"options": {"ok": "A"}, "fallback": "NA"})"));
  EXPECT_EQ(grade_from_option("ok", mapping).tier, Tier::A);
  EXPECT_EQ(grade_from_option("whatever", mapping).tier, Tier::NA);
}

TEST(Condition, ParsesTaxonomyAndBaseline) {
  EXPECT_TRUE(Condition::parse("baseline").is_baseline());
  for (auto kind : kAllPerturbationKinds) {
    const auto c = Condition::parse(to_string(kind));
    ASSERT_TRUE(c.kind().has_value());
    EXPECT_EQ(*c.kind(), kind);
    EXPECT_EQ(c.name(), to_string(kind));
  }
  EXPECT_THROW(Condition::parse("grip_force_strong"), SpecError);
}

TEST(EpisodeRecord, KeyJoinsFields) {
  EpisodeRecord r;
  r.task_id = "gr1_pnp_apple";
  r.episode_id = "ep3";
  r.condition = Condition(PerturbationKind::GripCarrySlip);
  EXPECT_EQ(r.key(), "gr1_pnp_apple__ep3__grip_carry_slip");
}

TEST(Io, ActionJsonlRoundTripKeepsSourceWidth) {
  std::mt19937_64 rng(7);
  const auto traj = wmeval::testing::random_actions(rng, 6);
  std::stringstream ss;
  io::write_action_jsonl(ss, traj);
  const auto first_line = ss.str().substr(0, ss.str().find('\n'));
  EXPECT_EQ(nlohmann::json::parse(first_line).at("action").size(), 384u);
  const auto back = io::read_action_jsonl(ss);
  EXPECT_EQ(back, traj);
}

TEST(Io, ActionJsonlErrors) {
  std::istringstream missing("{\"act\": [1, 2]}\n");
  EXPECT_THROW(io::read_action_jsonl(missing), ParseError);
  std::istringstream short_row("{\"action\": [1, 2, 3]}\n{\"action\": [1, 2, 3]}\n");
  EXPECT_THROW(io::read_action_jsonl(short_row), DimensionError);
  std::istringstream garbage("not json\n");
  EXPECT_THROW(io::read_action_jsonl(garbage), ParseError);
}

TEST(Io, CentroidCsvRoundTrip) {
  using V = Eigen::VectorXd;
  const CentroidTrajectory c(V::LinSpaced(6, 0.0, 0.3125), V::Constant(6, 0.5),
                             V::LinSpaced(6, 0.1, 0.9));
  TempDir dir;
  io::save_centroid_csv(dir / "c.csv", c);
  const auto back = io::load_centroid_csv(dir / "c.csv");
  EXPECT_EQ(back.t(), c.t());
  EXPECT_EQ(back.x(), c.x());
  EXPECT_EQ(back.y(), c.y());
}

TEST(Io, CentroidCsvRejectsBadInput) {
  std::istringstream no_header("0,0.5,0.5\n");
  EXPECT_THROW(io::read_centroid_csv(no_header), ParseError);
  std::istringstream bad_number("t,x,y\n0,0.5,abc\n1,0.5,0.5\n2,0.5,0.5\n3,0.5,0.5\n");
  EXPECT_THROW(io::read_centroid_csv(bad_number), ParseError);
  std::istringstream too_short("t,x,y\n0,0.5,0.5\n1,0.5,0.5\n");
  EXPECT_THROW(io::read_centroid_csv(too_short), TrajectoryError);
}
