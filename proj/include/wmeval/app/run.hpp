#pragma once

#include "wmeval/app/config.hpp"
#include "wmeval/app/manifest.hpp"
#include "wmeval/judge/client.hpp"
#include "wmeval/judge/prompts.hpp"
#include "wmeval/kinematics/params.hpp"
#include "wmeval/metrics/report.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wmeval::app {

enum class RunLevel { L1a, L1b, L2, L3 };

std::string_view to_string(RunLevel level);
RunLevel run_level_from_string(std::string_view text);

struct EpisodeOutcome {
  std::string key;
  std::size_t line = 0;
  std::optional<nlohmann::json> result;
  std::optional<std::string> skip_reason;
};

struct RunSummary {
  RunLevel level = RunLevel::L1a;
  metrics::ModelReport report;
  std::vector<EpisodeOutcome> episodes;

  std::size_t n_ok() const;
  std::size_t n_skipped() const;
  nlohmann::json summary_json() const;
};

/// Runs one level over a manifest. Missing or unreadable inputs become skip
/// entries; transport and endpoint errors abort the run.
///
/// Level 2 conditions: "gt" rows supply ground-truth frames for OPS, "ood"
/// rows form the out-of-distribution TCR split, every other row is in
/// distribution. Level 3 pairs each perturbed row with the "baseline" row of
/// the same task and episode.
RunSummary run_level(RunLevel level, const std::vector<ManifestRow>& rows, const RunConfig& cfg,
                     judge::Judge& judge, const judge::PromptLibrary& prompts,
                     const kin::PhysLawParams& params = {});

/// `<dir>/episodes/<key>.json`, `report.json`, `report.csv`, `summary.json`.
void write_run(const RunSummary& run, const std::filesystem::path& dir);

/// File-name-safe form of an episode key.
std::string safe_name(std::string_view key);

}  // namespace wmeval::app
