#include "wmeval/perturb/schedule.hpp"

#include "wmeval/core/errors.hpp"

#include <fstream>

namespace wmeval::perturb {
namespace {

void validate(std::string_view task, const TaskPerturbations& kinds) {
  if (kinds[0] != PerturbationKind::GripForceWeak ||
      kinds[1] != PerturbationKind::PrematureRelease) {
    throw ScheduleError("schedule for '" + std::string(task) +
                        "' must start with grip_force_weak, premature_release");
  }
}

TaskPerturbations parse_entry(std::string_view task, const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) {
    throw ScheduleError("schedule for '" + std::string(task) + "' must list exactly 3 kinds");
  }
  TaskPerturbations kinds{};
  for (std::size_t i = 0; i < 3; ++i) {
    kinds[i] = perturbation_kind_from_string(j[i].get<std::string>());
  }
  return kinds;
}

}  // namespace

TaskSchedule::TaskSchedule(std::map<std::string, TaskPerturbations, std::less<>> table,
                           std::optional<TaskPerturbations> fallback)
    : table_(std::move(table)), fallback_(fallback) {
  for (const auto& [task, kinds] : table_) validate(task, kinds);
  if (fallback_) validate("<default>", *fallback_);
}

TaskSchedule TaskSchedule::builtin() {
  using K = PerturbationKind;
  const auto with = [](K third) {
    return TaskPerturbations{K::GripForceWeak, K::PrematureRelease, third};
  };
  return TaskSchedule({
      {"gr1_pnp_apple", with(K::WristTiltGrasp)},
      {"fold_cloth", with(K::WristTiltGrasp)},
      {"gr1_pnp_mango", with(K::ContactOscillation)},
      {"gr1_egodex", with(K::ContactOscillation)},
      {"pnp_corn", with(K::ContactOscillation)},
      {"pnp_dragonfruit", with(K::ContactOscillation)},
      {"gr1_pnp_pear", with(K::ApproachOvershoot)},
      {"pour_items", with(K::ApproachOvershoot)},
      {"pnp_cucumber", with(K::GripCarrySlip)},
  });
}

TaskSchedule TaskSchedule::from_json(const nlohmann::json& j) {
  if (!j.contains("tasks") || !j.at("tasks").is_object()) {
    throw ScheduleError("schedule config needs a 'tasks' object");
  }
  std::map<std::string, TaskPerturbations, std::less<>> table;
  for (const auto& [task, entry] : j.at("tasks").items()) {
    table.emplace(task, parse_entry(task, entry));
  }
  std::optional<TaskPerturbations> fallback;
  if (j.contains("default") && !j.at("default").is_null()) {
    fallback = parse_entry("<default>", j.at("default"));
  }
  return TaskSchedule(std::move(table), fallback);
}

TaskSchedule TaskSchedule::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScheduleError("cannot open schedule " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ScheduleError("schedule " + path.string() + ": " + e.what());
  }
}

TaskPerturbations TaskSchedule::schedule_for(std::string_view task_id) const {
  if (auto it = table_.find(task_id); it != table_.end()) return it->second;
  if (fallback_) return *fallback_;
  throw ScheduleError("no perturbation schedule for task '" + std::string(task_id) + "'");
}

}  // namespace wmeval::perturb
