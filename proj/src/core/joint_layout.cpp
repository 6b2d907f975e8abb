#include "wmeval/core/joint_layout.hpp"

#include "wmeval/core/errors.hpp"

#include <string>

namespace wmeval {

std::string_view to_string(JointGroup group) {
  switch (group) {
    case JointGroup::LeftArm: return "left_arm";
    case JointGroup::RightArm: return "right_arm";
    case JointGroup::LeftHand: return "left_hand";
    case JointGroup::RightHand: return "right_hand";
    case JointGroup::Waist: return "waist";
  }
  return "unknown";
}

JointLayout::JointLayout(const std::array<IndexRange, 5>& groups,
                         WristPair left_wrist, WristPair right_wrist)
    : groups_(groups), left_wrist_(left_wrist), right_wrist_(right_wrist) {
  Eigen::Index cursor = 0;
  for (std::size_t g = 0; g < groups_.size(); ++g) {
    const auto& r = groups_[g];
    if (r.begin != cursor || r.end <= r.begin) {
      throw LayoutError("joint group " + std::string(to_string(kAllJointGroups[g])) +
                        " does not continue the partition at column " +
                        std::to_string(cursor));
    }
    cursor = r.end;
  }
  if (cursor != kActiveDims) {
    throw LayoutError("joint groups cover [0, " + std::to_string(cursor) +
                      ") instead of [0, 29)");
  }
  const auto check_wrist = [](const WristPair& w, const IndexRange& arm,
                              const char* side) {
    for (auto idx : w) {
      if (!arm.contains(idx)) {
        throw LayoutError(std::string(side) + " wrist index " + std::to_string(idx) +
                          " lies outside its arm group");
      }
    }
    if (w[0] == w[1]) {
      throw LayoutError(std::string(side) + " wrist indices must be distinct");
    }
  };
  check_wrist(left_wrist_, range(JointGroup::LeftArm), "left");
  check_wrist(right_wrist_, range(JointGroup::RightArm), "right");
}

JointLayout JointLayout::gr1() { return gr1({5, 6}, {12, 13}); }

JointLayout JointLayout::gr1(WristPair left_wrist, WristPair right_wrist) {
  return JointLayout({IndexRange{0, 7}, IndexRange{7, 14}, IndexRange{14, 20},
                      IndexRange{20, 26}, IndexRange{26, 29}},
                     left_wrist, right_wrist);
}

}  // namespace wmeval
