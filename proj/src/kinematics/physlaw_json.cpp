#include "wmeval/kinematics/physlaw.hpp"

#include "wmeval/core/errors.hpp"

namespace wmeval::kin {
namespace {

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::string_view axis_name(Axis axis) {
  return axis == Axis::Vertical ? "vertical" : "horizontal";
}

}  // namespace

PhysLawResult final_score(std::optional<double> kinematic, int vqs, bool has_motion,
                          const PhysLawParams& params) {
  if (vqs != 0 && vqs != 5 && vqs != 10) {
    throw Error("vqs must be 0, 5 or 10, got " + std::to_string(vqs));
  }
  PhysLawResult r;
  r.vqs = vqs;
  r.kinematic = kinematic;
  if (kinematic && has_motion && vqs == 10) r.effective = 100.0 * *kinematic;
  r.final = params.kinematic_weight * r.effective + static_cast<double>(vqs);
  return r;
}

nlohmann::json to_json(const PhysLawResult& result) {
  return {
      {"vqs", result.vqs},
      {"curve_score", optional_json(result.curve)},
      {"event_score", optional_json(result.event)},
      {"kinematic_score", optional_json(result.kinematic)},
      {"effective_physics", result.effective},
      {"final", result.final},
  };
}

nlohmann::json to_json(const PhysLawReport<double>& report) {
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& axis : report.axes) {
    nlohmann::json segments = nlohmann::json::array();
    for (const auto& s : axis.segments) {
      segments.push_back({{"kind", to_string(s.kind)}, {"start", s.start}, {"end", s.end}});
    }
    nlohmann::json scores = nlohmann::json::array();
    for (const auto& s : axis.scores) {
      scores.push_back({
          {"kind", to_string(s.segment.kind)},
          {"start", s.segment.start},
          {"end", s.segment.end},
          {"fitted_a", s.fitted_a},
          {"expected_a", s.expected_a},
          {"ratio", s.ratio},
          {"sign_ok", s.sign_ok},
          {"magnitude_ok", s.magnitude_ok},
          {"uniformity_ok", s.uniformity_ok},
          {"seg_score", s.seg_score},
          {"r2", s.r2},
          {"half_cv", s.half_cv},
          {"decay", s.decay},
          {"degraded", s.degraded},
          {"ordering_violation", s.ordering_violation},
      });
    }
    nlohmann::json entry = {
        {"axis", axis_name(axis.axis)},
        {"segments", segments},
        {"segment_scores", scores},
        {"curve_score", optional_json(axis.curve)},
        {"event_score", optional_json(axis.event)},
        {"kinematic_score", optional_json(axis.kinematic)},
    };
    if (axis.features) {
      const auto& f = *axis.features;
      entry["events"] = {
          {"velocity_drop", f.velocity_drop},
          {"drift", f.drift},
          {"has_impact", f.has_impact},
          {"bounce", f.bounce},
          {"usable", f.usable},
          {"impact_index", f.impact ? nlohmann::json(*f.impact) : nlohmann::json(nullptr)},
          {"bounce_ratio", optional_json(f.bounce_ratio)},
      };
    }
    axes.push_back(std::move(entry));
  }
  nlohmann::json out = to_json(report.result);
  out["route"] = to_string(report.route);
  out["axes"] = std::move(axes);
  out["chosen_axis"] = report.chosen ? nlohmann::json(axis_name(report.axes[*report.chosen].axis))
                                     : nlohmann::json(nullptr);
  return out;
}

}  // namespace wmeval::kin
