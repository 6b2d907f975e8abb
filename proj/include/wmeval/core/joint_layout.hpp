#pragma once

#include <Eigen/Core>

#include <array>
#include <string_view>

namespace wmeval {

/// Number of active joint commands in a GR-1 action row.
inline constexpr Eigen::Index kActiveDims = 29;
/// Width of the padded action vector the models consume.
inline constexpr Eigen::Index kPaddedDims = 384;

enum class JointGroup { LeftArm = 0, RightArm, LeftHand, RightHand, Waist };
enum class Side { Left = 0, Right };

inline constexpr std::array<JointGroup, 5> kAllJointGroups{
    JointGroup::LeftArm, JointGroup::RightArm, JointGroup::LeftHand,
    JointGroup::RightHand, JointGroup::Waist};

std::string_view to_string(JointGroup group);

/// Half-open column range [begin, end).
struct IndexRange {
  Eigen::Index begin = 0;
  Eigen::Index end = 0;

  constexpr Eigen::Index size() const { return end - begin; }
  constexpr bool contains(Eigen::Index i) const { return i >= begin && i < end; }
  friend constexpr bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Partition of the 29 active dimensions into named joint groups, plus the
/// two wrist joints of each arm.
///
/// Construction validates that the groups are contiguous, disjoint, listed in
/// order and cover exactly [0, 29), and that each wrist pair lies inside its
/// arm group. Throws LayoutError otherwise.
class JointLayout {
 public:
  using WristPair = std::array<Eigen::Index, 2>;

  JointLayout(const std::array<IndexRange, 5>& groups, WristPair left_wrist,
              WristPair right_wrist);

  /// GR-1 layout: L-arm [0,7), R-arm [7,14), L-hand [14,20), R-hand [20,26),
  /// waist [26,29); wrists default to the last two joints of each arm.
  static JointLayout gr1();
  /// GR-1 groups with caller-chosen wrist joints.
  static JointLayout gr1(WristPair left_wrist, WristPair right_wrist);

  IndexRange range(JointGroup group) const {
    return groups_[static_cast<std::size_t>(group)];
  }
  const WristPair& wrist(Side side) const {
    return side == Side::Left ? left_wrist_ : right_wrist_;
  }

 private:
  std::array<IndexRange, 5> groups_;
  WristPair left_wrist_;
  WristPair right_wrist_;
};

}  // namespace wmeval
