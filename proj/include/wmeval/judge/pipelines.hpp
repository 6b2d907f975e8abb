#pragma once

#include "wmeval/judge/client.hpp"
#include "wmeval/judge/prompts.hpp"
#include "wmeval/judge/voting.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wmeval::judge {

using FrameList = std::vector<std::filesystem::path>;

enum class TcrMode { Tiled, Separate };

struct PipelineOptions {
  int parallelism = 4;
  TcrMode tcr_mode = TcrMode::Tiled;
  int vqs_frames = 6;
  int tcr_frames = 16;
  int ops_frames = 16;
};

struct PcsEpisode {
  std::vector<JudgeVerdict> obj_votes;
  std::vector<JudgeVerdict> occ_votes;
  std::optional<PairframeResult> obj;
  std::optional<PairframeResult> occ;
  std::optional<double> pcs;
};

struct VqsEpisode {
  JudgeVerdict verdict;
  std::optional<int> vqs;
  std::optional<VqsPayload> payload;
};

struct TcrEpisode {
  JudgeVerdict verdict;
  std::optional<int> value;
};

struct OpsEpisode {
  std::vector<JudgeVerdict> votes;
  std::optional<OpsResult> aggregate;
};

struct BiasEpisode {
  std::vector<JudgeVerdict> votes;
  std::optional<BiasResult> aggregate;
};

/// Midcut pairframe voting with the object and occlusion prompts.
PcsEpisode run_pcs(const FrameList& frames, Judge& judge, const PromptLibrary& prompts,
                   const PipelineOptions& opt = {});

/// One call on uniformly sampled frames tiled left to right.
VqsEpisode run_vqs(const FrameList& frames, Judge& judge, const PromptLibrary& prompts,
                   const PipelineOptions& opt = {});

/// One call on 16 uniform predicted frames; no ground truth is shown.
TcrEpisode run_tcr(const FrameList& frames, const std::string& instruction, Judge& judge,
                   const PromptLibrary& prompts, const PipelineOptions& opt = {});

/// 16 uniform (predicted, ground-truth) frame pairs, one binary vote each.
OpsEpisode run_ops(const FrameList& predicted, const FrameList& ground_truth,
                   const std::string& instruction, Judge& judge, const PromptLibrary& prompts,
                   const PipelineOptions& opt = {});

/// Seven late-phase baseline|perturbed comparisons.
BiasEpisode run_bias(const FrameList& baseline, const FrameList& perturbed, bool lenient,
                     Judge& judge, const PromptLibrary& prompts, const PipelineOptions& opt = {});

nlohmann::json to_json(const JudgeVerdict& v);
nlohmann::json to_json(const PcsEpisode& e);
nlohmann::json to_json(const VqsEpisode& e);
nlohmann::json to_json(const TcrEpisode& e);
nlohmann::json to_json(const OpsEpisode& e);
nlohmann::json to_json(const BiasEpisode& e);

}  // namespace wmeval::judge
