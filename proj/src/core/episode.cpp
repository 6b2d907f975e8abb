#include "wmeval/core/episode.hpp"

#include "wmeval/core/errors.hpp"

namespace wmeval {

std::string_view to_string(PerturbationKind kind) {
  switch (kind) {
    case PerturbationKind::GripForceWeak: return "grip_force_weak";
    case PerturbationKind::PrematureRelease: return "premature_release";
    case PerturbationKind::GripCarrySlip: return "grip_carry_slip";
    case PerturbationKind::ContactOscillation: return "contact_oscillation";
    case PerturbationKind::WristTiltGrasp: return "wrist_tilt_grasp";
    case PerturbationKind::ApproachOvershoot: return "approach_overshoot";
  }
  return "unknown";
}

PerturbationKind perturbation_kind_from_string(std::string_view name) {
  for (auto kind : kAllPerturbationKinds) {
    if (to_string(kind) == name) return kind;
  }
  throw SpecError("unknown perturbation kind '" + std::string(name) + "'");
}

Condition Condition::parse(std::string_view text) {
  if (text == "baseline") return baseline();
  return Condition(perturbation_kind_from_string(text));
}

std::string Condition::name() const {
  return kind_ ? std::string(to_string(*kind_)) : std::string("baseline");
}

}  // namespace wmeval
