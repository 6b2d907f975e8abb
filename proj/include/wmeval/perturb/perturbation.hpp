#pragma once

// Implicit failure perturbations on GR-1 action trajectories.
//
// Every kind edits one joint group (two for contact_oscillation and
// wrist_tilt_grasp) inside one phase window; all other entries are copied
// bit-for-bit. Phase boundaries are floor(fraction * T) and windows are
// inclusive at both ends. Values are not clamped to [-1, 1].

#include "wmeval/core/action_trajectory.hpp"
#include "wmeval/core/episode.hpp"
#include "wmeval/core/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace wmeval::perturb {

/// Severity used throughout the benchmark.
inline constexpr double kDefaultSeverity = 0.5;

struct PerturbationSpec {
  PerturbationKind kind = PerturbationKind::GripForceWeak;
  double severity = kDefaultSeverity;

  PerturbationSpec() = default;
  PerturbationSpec(PerturbationKind k, double s) : kind(k), severity(s) {
    if (!(s >= 0.0 && s <= 1.0)) {
      throw SpecError("severity must lie in [0, 1], got " + std::to_string(s));
    }
  }
};

/// Inclusive frame window [first, last].
struct PhaseWindow {
  Eigen::Index first = 0;
  Eigen::Index last = -1;
  bool contains(Eigen::Index t) const { return t >= first && t <= last; }
};

/// floor(percent / 100 * frames) in exact integer arithmetic.
constexpr Eigen::Index phase_index(int percent, Eigen::Index frames) {
  return (static_cast<Eigen::Index>(percent) * frames) / 100;
}

/// Window in which `kind` edits the trajectory. grip_carry_slip shifts the
/// whole hand track and reports [0, T-1].
inline PhaseWindow phase_window(PerturbationKind kind, Eigen::Index frames) {
  switch (kind) {
    case PerturbationKind::GripForceWeak: return {phase_index(40, frames), frames - 1};
    case PerturbationKind::PrematureRelease:
      return {phase_index(40, frames), phase_index(80, frames)};
    case PerturbationKind::GripCarrySlip: return {0, frames - 1};
    case PerturbationKind::ContactOscillation:
      return {phase_index(25, frames), phase_index(70, frames)};
    case PerturbationKind::WristTiltGrasp:
      return {phase_index(15, frames), phase_index(85, frames)};
    case PerturbationKind::ApproachOvershoot:
      return {phase_index(10, frames), phase_index(75, frames)};
  }
  throw SpecError("unknown perturbation kind");
}

/// Timing advance of grip_carry_slip: floor(T * (0.15 + 0.20 s)).
inline Eigen::Index carry_slip_shift(Eigen::Index frames, double severity) {
  // The epsilon keeps products such as 100 * 0.25 from landing just below an
  // integer after rounding.
  return static_cast<Eigen::Index>(
      std::floor(static_cast<double>(frames) * (0.15 + 0.20 * severity) + 1e-9));
}

/// Population standard deviation over every entry of a block.
template <typename Derived>
typename Derived::Scalar pooled_std(const Eigen::DenseBase<Derived>& block) {
  using Scalar = typename Derived::Scalar;
  const auto n = static_cast<Scalar>(block.size());
  const Scalar mean = block.sum() / n;
  return std::sqrt((block.derived().array() - mean).square().sum() / n);
}

template <typename Scalar>
BasicActionTrajectory<Scalar> apply_perturbation(const BasicActionTrajectory<Scalar>& traj,
                                                 const PerturbationSpec& spec,
                                                 const JointLayout& layout) {
  const Eigen::Index frames = traj.frames();
  if (frames < 2) throw TrajectoryError("perturbation needs at least 2 frames");
  const Scalar s = static_cast<Scalar>(spec.severity);
  const PhaseWindow window = phase_window(spec.kind, frames);

  ActionMatrix<Scalar> out = traj.data();
  const auto rows = [&](IndexRange cols) {
    return out.block(window.first, cols.begin, window.last - window.first + 1, cols.size());
  };
  const auto left_hand = layout.range(JointGroup::LeftHand);
  const auto left_arm = layout.range(JointGroup::LeftArm);
  const auto right_arm = layout.range(JointGroup::RightArm);

  switch (spec.kind) {
    case PerturbationKind::GripForceWeak:
      rows(left_hand) *= (Scalar(1) - s);
      break;
    case PerturbationKind::PrematureRelease:
      rows(left_hand) *= Scalar(0.02);
      break;
    case PerturbationKind::GripCarrySlip: {
      const Eigen::Index shift = carry_slip_shift(frames, spec.severity);
      const auto& src = traj.data();
      for (Eigen::Index t = 0; t < frames; ++t) {
        const Eigen::Index from = std::min(t + shift, frames - 1);
        out.block(t, left_hand.begin, 1, left_hand.size()) =
            src.block(from, left_hand.begin, 1, left_hand.size());
      }
      break;
    }
    case PerturbationKind::ContactOscillation: {
      const Scalar amplitude = Scalar(0.4) * pooled_std(traj.group(JointGroup::LeftArm, layout));
      const Eigen::Index span = window.last - window.first;
      if (span <= 0) break;
      for (Eigen::Index t = window.first; t <= window.last; ++t) {
        const Scalar phase = Scalar(6) * std::numbers::pi_v<Scalar> *
                             static_cast<Scalar>(t - window.first) / static_cast<Scalar>(span);
        const Scalar offset = amplitude * std::sin(phase);
        out.block(t, left_arm.begin, 1, left_arm.size()).array() += offset;
        out.block(t, right_arm.begin, 1, right_arm.size()).array() += offset;
      }
      break;
    }
    case PerturbationKind::WristTiltGrasp:
      for (auto side : {Side::Left, Side::Right}) {
        for (auto col : layout.wrist(side)) {
          out.col(col).segment(window.first, window.last - window.first + 1).array() +=
              Scalar(0.8);
        }
      }
      break;
    case PerturbationKind::ApproachOvershoot:
      rows(left_arm) *= Scalar(1.30);
      break;
  }
  return BasicActionTrajectory<Scalar>(std::move(out), traj.source_dim());
}

}  // namespace wmeval::perturb
