#pragma once

#include "wmeval/core/action_trajectory.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace wmeval {

/// The six implicit failure perturbations.
enum class PerturbationKind {
  GripForceWeak = 0,
  PrematureRelease,
  GripCarrySlip,
  ContactOscillation,
  WristTiltGrasp,
  ApproachOvershoot,
};

inline constexpr std::array<PerturbationKind, 6> kAllPerturbationKinds{
    PerturbationKind::GripForceWeak,      PerturbationKind::PrematureRelease,
    PerturbationKind::GripCarrySlip,      PerturbationKind::ContactOscillation,
    PerturbationKind::WristTiltGrasp,     PerturbationKind::ApproachOvershoot};

std::string_view to_string(PerturbationKind kind);
/// Throws SpecError for names outside the taxonomy.
PerturbationKind perturbation_kind_from_string(std::string_view name);

/// Baseline, or one of the six perturbation kinds.
class Condition {
 public:
  Condition() = default;
  explicit Condition(PerturbationKind kind) : kind_(kind) {}

  static Condition baseline() { return Condition(); }
  /// Accepts "baseline" or a taxonomy name; throws SpecError otherwise.
  static Condition parse(std::string_view text);

  bool is_baseline() const { return !kind_.has_value(); }
  std::optional<PerturbationKind> kind() const { return kind_; }
  std::string name() const;

  friend bool operator==(const Condition&, const Condition&) = default;

 private:
  std::optional<PerturbationKind> kind_;
};

/// One (task, episode, condition) unit of a benchmark run.
struct EpisodeRecord {
  std::string task_id;
  std::string episode_id;
  Condition condition;
  std::filesystem::path frame_dir;
  std::optional<ActionTrajectory> action;
  std::optional<std::string> prompt;
  std::map<std::string, double> scores;

  std::string key() const { return task_id + "__" + episode_id + "__" + condition.name(); }
};

}  // namespace wmeval
