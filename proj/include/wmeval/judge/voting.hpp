#pragma once

#include "wmeval/judge/verdict.hpp"

#include <optional>
#include <vector>

namespace wmeval::judge {

struct PairframeResult {
  double score = 0;
  AB label = AB::A;
  int n = 0;
  int n_b = 0;
  int n_discarded = 0;
};

/// 100 (1 - #B / n) over parsed votes; label B when any vote is B. Absent
/// when every vote was discarded.
std::optional<PairframeResult> pairframe_score(const std::vector<JudgeVerdict>& votes);

/// Mean of the two indicator scores; absent unless both are present.
std::optional<double> pcs(std::optional<double> s_obj, std::optional<double> s_occ);

/// 0 for a broken video, 5 for a valid static one, 10 for valid with motion.
int vqs(bool video_ok, bool has_motion);

struct OpsResult {
  double confidence = 0;
  bool preserved = false;
  int n = 0;
  int ones = 0;
  int n_discarded = 0;
};

/// Mean of the binary votes; preserved when the mean is at least 0.70.
std::optional<OpsResult> ops_aggregate(const std::vector<JudgeVerdict>& votes);

enum class BiasLabel { Y, N };

struct BiasResult {
  BiasLabel label = BiasLabel::N;
  int n_same = 0;
  int n = 0;
  int n_discarded = 0;
};

/// Y when Same votes form a strict majority of the parsed votes (more than
/// 3 of 7).
std::optional<BiasResult> bias_vote(const std::vector<JudgeVerdict>& votes);

}  // namespace wmeval::judge
