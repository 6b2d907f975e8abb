#include "wmeval/judge/voting.hpp"

namespace wmeval::judge {

std::optional<PairframeResult> pairframe_score(const std::vector<JudgeVerdict>& votes) {
  PairframeResult r;
  for (const auto& v : votes) {
    const auto ab = v.ab();
    if (!ab) {
      ++r.n_discarded;
      continue;
    }
    ++r.n;
    if (*ab == AB::B) ++r.n_b;
  }
  if (r.n == 0) return std::nullopt;
  r.score = 100.0 * static_cast<double>(r.n - r.n_b) / static_cast<double>(r.n);
  r.label = r.n_b > 0 ? AB::B : AB::A;
  return r;
}

std::optional<double> pcs(std::optional<double> s_obj, std::optional<double> s_occ) {
  if (!s_obj || !s_occ) return std::nullopt;
  return 0.5 * (*s_obj + *s_occ);
}

int vqs(bool video_ok, bool has_motion) {
  if (!video_ok) return 0;
  return has_motion ? 10 : 5;
}

std::optional<OpsResult> ops_aggregate(const std::vector<JudgeVerdict>& votes) {
  OpsResult r;
  for (const auto& v : votes) {
    const auto b = v.binary();
    if (!b) {
      ++r.n_discarded;
      continue;
    }
    ++r.n;
    r.ones += *b;
  }
  if (r.n == 0) return std::nullopt;
  r.confidence = static_cast<double>(r.ones) / static_cast<double>(r.n);
  // ones / n >= 0.70 in integers, so 0.70 itself is never lost to rounding.
  r.preserved = 10 * r.ones >= 7 * r.n;
  return r;
}

std::optional<BiasResult> bias_vote(const std::vector<JudgeVerdict>& votes) {
  BiasResult r;
  for (const auto& v : votes) {
    const auto c = v.comparison();
    if (!c) {
      ++r.n_discarded;
      continue;
    }
    ++r.n;
    if (*c == Comparison::Same) ++r.n_same;
  }
  if (r.n == 0) return std::nullopt;
  r.label = 2 * r.n_same > r.n ? BiasLabel::Y : BiasLabel::N;
  return r;
}

}  // namespace wmeval::judge
