#include "wmeval/metrics/metrics.hpp"

#include "wmeval/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wmeval::metrics {

double physical_adherence(std::span<const double> deltas) {
  if (deltas.empty()) throw MetricError("physical adherence of an empty set");
  double sum = 0;
  for (double d : deltas) {
    if (!(d >= 0.0 && d <= 1.0)) {
      throw MetricError("violation degree outside [0, 1]: " + std::to_string(d));
    }
    sum += d;
  }
  return 1.0 - sum / static_cast<double>(deltas.size());
}

namespace {

void check_flag(int f) {
  if (f != 0 && f != 1) throw MetricError("binary label must be 0 or 1, got " + std::to_string(f));
}

}  // namespace

OptimismBias optimism_bias(std::span<const int> flags) {
  if (flags.empty()) throw MetricError("optimism bias of an empty set");
  std::size_t hits = 0;
  for (int f : flags) {
    check_flag(f);
    hits += static_cast<std::size_t>(f);
  }
  OptimismBias r;
  r.n = flags.size();
  r.ob = rate(hits, r.n);
  r.preservation = 100.0 - r.ob;
  return r;
}

std::map<PerturbationKind, OptimismBias> optimism_bias_by_kind(
    std::span<const std::pair<PerturbationKind, int>> outcomes) {
  std::map<PerturbationKind, std::vector<int>> groups;
  for (const auto& [kind, flag] : outcomes) groups[kind].push_back(flag);
  std::map<PerturbationKind, OptimismBias> out;
  for (const auto& [kind, flags] : groups) out.emplace(kind, optimism_bias(flags));
  return out;
}

double rate(std::size_t hits, std::size_t n) {
  if (n == 0) throw MetricError("rate over an empty denominator");
  if (hits > n) throw MetricError("rate numerator exceeds denominator");
  return 100.0 * static_cast<double>(hits) / static_cast<double>(n);
}

double rate(std::span<const int> labels) {
  std::size_t hits = 0;
  for (int f : labels) {
    check_flag(f);
    hits += static_cast<std::size_t>(f);
  }
  return rate(hits, labels.size());
}

double gen_score(double tcr_id, double tcr_ood) {
  for (double v : {tcr_id, tcr_ood}) {
    if (!(v >= 0.0 && v <= 100.0)) throw MetricError("TCR must lie in [0, 100]");
  }
  const double delta = tcr_id - tcr_ood;
  return std::min(100.0, 100.0 * std::exp(-delta / 100.0));
}

double round1(double x) { return std::floor(x * 10.0 + 0.5 + 1e-9) / 10.0; }

}  // namespace wmeval::metrics
