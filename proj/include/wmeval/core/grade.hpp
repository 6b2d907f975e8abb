#pragma once

#include "json.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace wmeval {

/// Four-tier annotation rubric plus N/A.
enum class Tier { A = 0, B, C, D, NA };

std::string_view to_string(Tier tier);
Tier tier_from_string(std::string_view text);

/// Rubric score for a tier: A 1.00, B 0.67, C 0.33, D 0.00, NA none.
std::optional<double> rubric_score(Tier tier);

struct Grade {
  Tier tier = Tier::NA;
  std::optional<double> score;

  static Grade of(Tier tier) { return Grade{tier, rubric_score(tier)}; }
  /// Grade C or D (rubric score <= 0.33).
  bool severe() const { return tier == Tier::C || tier == Tier::D; }
  friend bool operator==(const Grade&, const Grade&) = default;
};

/// Annotation option string -> tier. Option strings depend on the annotation
/// language, so the table lives in a config file.
class GradeMapping {
 public:
  GradeMapping() = default;
  explicit GradeMapping(std::map<std::string, Tier, std::less<>> table,
                        std::optional<Tier> fallback = std::nullopt)
      : table_(std::move(table)), fallback_(fallback) {}

  /// Reads `{"options": {"<text>": "A", ...}, "fallback": "NA" | null}`.
  static GradeMapping from_json(const nlohmann::json& j);
  static GradeMapping load(const std::filesystem::path& path);

  std::optional<Tier> lookup(std::string_view option) const;
  const std::map<std::string, Tier, std::less<>>& table() const { return table_; }

 private:
  std::map<std::string, Tier, std::less<>> table_;
  std::optional<Tier> fallback_;
};

/// Throws MappingError naming the option when it is unmapped and no fallback
/// is configured.
Grade grade_from_option(std::string_view option, const GradeMapping& mapping);

}  // namespace wmeval
