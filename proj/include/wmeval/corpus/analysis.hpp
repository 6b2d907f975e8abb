#pragma once

#include "wmeval/core/grade.hpp"
#include "wmeval/corpus/annotation.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace wmeval::corpus {

struct IndicatorRef {
  AnnotationLevel level = AnnotationLevel::PhysConsistency;
  std::string item_id;
};

/// Indicator ids (SC-A1, MA-9, ...) -> annotation item ids, plus the option
/// sets used by the optimism-bias summary.
class IndicatorTable {
 public:
  static IndicatorTable from_json(const nlohmann::json& j);
  static IndicatorTable load(const std::filesystem::path& path);

  const IndicatorRef& at(std::string_view indicator) const;
  const std::vector<std::string>& order() const { return order_; }
  const std::map<std::string, AnnotationLevel>& level_aliases() const { return aliases_; }
  std::string version() const { return version_; }

  /// Group key for a record: the first capture of `model_pattern` applied to
  /// "<subset>/<video_id>", or the subset when no pattern is configured.
  std::string model_of(const AnnotationRecord& rec) const;

  std::string ma9 = "MA-9";
  std::string mb9 = "MB-9";
  std::string ma1 = "MA-1";
  std::vector<std::string> ma9_bias_options{"Y", "Y?"};
  std::vector<std::string> mb9_yes_options{"Y"};

 private:
  std::map<std::string, IndicatorRef, std::less<>> refs_;
  std::vector<std::string> order_;
  std::map<std::string, AnnotationLevel> aliases_;
  std::optional<std::regex> model_pattern_;
  std::string version_;
};

/// Tier of an answer: exact option lookup first, then the leading grade
/// letter ("C. Clear violation" -> C).
Tier answer_tier(const std::string& option, const GradeMapping& mapping);

struct SevereRate {
  std::optional<double> rate;
  std::size_t n = 0;
  std::size_t severe = 0;
};

/// 100 #(C or D) / n over records of the indicator's level that answered it;
/// NA answers leave the denominator.
SevereRate severe_rate(const std::vector<AnnotationRecord>& records, std::string_view indicator,
                       const IndicatorTable& table, const GradeMapping& mapping);

struct GradeCounts {
  std::array<std::size_t, 5> counts{};  // A, B, C, D, NA
  std::size_t missing = 0;              // records of the level without an answer
  std::size_t operator[](Tier t) const { return counts[static_cast<std::size_t>(t)]; }
  std::size_t total() const;
};

GradeCounts grade_distribution(const std::vector<AnnotationRecord>& records,
                               std::string_view indicator, const IndicatorTable& table,
                               const GradeMapping& mapping);

struct BiasSummary {
  std::optional<double> ma9_bias_rate;
  std::optional<double> mb9_false_success_rate;
  std::optional<double> ma1_mean;
  std::size_t n_ma9 = 0;
  std::size_t n_mb9 = 0;
  std::size_t n_ma1 = 0;
};

/// Per-model optimism-bias view. MA-9 Y and Y? both count as bias; every
/// answered record (including "?" and NA) is in the denominator. MA-1 takes
/// the leading integer 1..5 of the answer.
std::map<std::string, BiasSummary> bias_summary(const std::vector<AnnotationRecord>& records,
                                                const IndicatorTable& table);

/// Records grouped by model key.
std::map<std::string, std::vector<AnnotationRecord>> by_model(
    const std::vector<AnnotationRecord>& records, const IndicatorTable& table);

/// Model x indicator severe-rate table (one decimal, empty when absent).
std::string severe_table_csv(const std::vector<AnnotationRecord>& records,
                             const std::vector<std::string>& indicators,
                             const IndicatorTable& table, const GradeMapping& mapping);

std::string bias_table_csv(const std::map<std::string, BiasSummary>& summary);

}  // namespace wmeval::corpus
