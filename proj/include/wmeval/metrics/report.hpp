#pragma once

#include "wmeval/core/episode.hpp"

#include "json.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wmeval::metrics {

/// A rate or mean in [0, 100] with its denominator. `excluded` counts
/// episodes left out because their judge verdicts were discarded or inputs
/// were missing.
struct MetricValue {
  std::optional<double> value;
  std::size_t n = 0;
  std::size_t excluded = 0;
};

struct ModelReport {
  std::string model_id;
  // Level 1
  MetricValue obj;
  MetricValue occ;
  MetricValue phys_law;
  // Level 2
  MetricValue tcr;
  MetricValue tcr_ood;
  MetricValue ops;
  MetricValue gen;
  // Level 3
  MetricValue ob;
  MetricValue bias_resistance;
  std::map<PerturbationKind, MetricValue> ob_by_kind;
};

/// Throws MetricError when a value leaves [0, 100] or bias resistance is not
/// 100 - ob.
void validate(const ModelReport& report);

/// Full precision values plus counts.
nlohmann::json to_json(const ModelReport& report);

ModelReport report_from_json(const nlohmann::json& j);

/// Field-wise merge of per-level reports for one model; a metric present in
/// more than one input is an error.
ModelReport combine(const std::vector<ModelReport>& parts);

/// Model,Obj,Occ,Rule,TCR,OPS,Gen,BiasRes
std::string csv_header();
/// Values rounded to one decimal; absent metrics are empty cells.
std::string csv_row(const ModelReport& report);

/// Writes report.json and report.csv into `dir`.
void write_report(const ModelReport& report, const std::filesystem::path& dir);

}  // namespace wmeval::metrics
