#pragma once

#include "wmeval/core/episode.hpp"

#include "json.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace wmeval::perturb {

/// Three perturbation kinds applied to one task. The first two are always
/// grip_force_weak and premature_release; the third is task-specific.
using TaskPerturbations = std::array<PerturbationKind, 3>;

class TaskSchedule {
 public:
  TaskSchedule() = default;
  explicit TaskSchedule(std::map<std::string, TaskPerturbations, std::less<>> table,
                        std::optional<TaskPerturbations> fallback = std::nullopt);

  /// The nine-task table used by the benchmark.
  static TaskSchedule builtin();
  /// `{"tasks": {"<task>": ["grip_force_weak", ...]}, "default": [...] | null}`
  static TaskSchedule from_json(const nlohmann::json& j);
  static TaskSchedule load(const std::filesystem::path& path);

  /// Throws ScheduleError for unknown tasks when no default is configured.
  TaskPerturbations schedule_for(std::string_view task_id) const;

  const std::map<std::string, TaskPerturbations, std::less<>>& tasks() const { return table_; }

 private:
  std::map<std::string, TaskPerturbations, std::less<>> table_;
  std::optional<TaskPerturbations> fallback_;
};

}  // namespace wmeval::perturb
