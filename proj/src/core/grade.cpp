#include "wmeval/core/grade.hpp"

#include "wmeval/core/errors.hpp"

#include <fstream>

namespace wmeval {

std::string_view to_string(Tier tier) {
  switch (tier) {
    case Tier::A: return "A";
    case Tier::B: return "B";
    case Tier::C: return "C";
    case Tier::D: return "D";
    case Tier::NA: return "NA";
  }
  return "NA";
}

Tier tier_from_string(std::string_view text) {
  if (text == "A") return Tier::A;
  if (text == "B") return Tier::B;
  if (text == "C") return Tier::C;
  if (text == "D") return Tier::D;
  if (text == "NA" || text == "N/A") return Tier::NA;
  throw MappingError("unknown grade tier '" + std::string(text) + "'");
}

std::optional<double> rubric_score(Tier tier) {
  switch (tier) {
    case Tier::A: return 1.00;
    case Tier::B: return 0.67;
    case Tier::C: return 0.33;
    case Tier::D: return 0.00;
    case Tier::NA: return std::nullopt;
  }
  return std::nullopt;
}

GradeMapping GradeMapping::from_json(const nlohmann::json& j) {
  if (!j.contains("options") || !j.at("options").is_object()) {
    throw ConfigError("grade mapping needs an 'options' object");
  }
  std::map<std::string, Tier, std::less<>> table;
  for (const auto& [option, tier] : j.at("options").items()) {
    table.emplace(option, tier_from_string(tier.get<std::string>()));
  }
  std::optional<Tier> fallback;
  if (j.contains("fallback") && !j.at("fallback").is_null()) {
    fallback = tier_from_string(j.at("fallback").get<std::string>());
  }
  return GradeMapping(std::move(table), fallback);
}

GradeMapping GradeMapping::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open grade mapping " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("grade mapping " + path.string() + ": " + e.what());
  }
}

std::optional<Tier> GradeMapping::lookup(std::string_view option) const {
  if (auto it = table_.find(option); it != table_.end()) return it->second;
  return fallback_;
}

Grade grade_from_option(std::string_view option, const GradeMapping& mapping) {
  const auto tier = mapping.lookup(option);
  if (!tier) {
    throw MappingError("option '" + std::string(option) + "' has no grade mapping");
  }
  return Grade::of(*tier);
}

}  // namespace wmeval
