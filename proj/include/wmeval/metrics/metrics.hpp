#pragma once

#include "wmeval/core/episode.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace wmeval::metrics {

/// 1 - mean(deltas); each delta in [0, 1].
double physical_adherence(std::span<const double> deltas);

struct OptimismBias {
  double ob = 0;
  double preservation = 100;
  std::size_t n = 0;
};

/// ob = 100 mean(flags), preservation = 100 - ob. A flag is 1 when the
/// perturbed rollout was still judged successful (bias vote Y).
OptimismBias optimism_bias(std::span<const int> flags);

/// optimism_bias per perturbation kind, plus the pooled value.
std::map<PerturbationKind, OptimismBias> optimism_bias_by_kind(
    std::span<const std::pair<PerturbationKind, int>> outcomes);

/// 100 hits / n.
double rate(std::size_t hits, std::size_t n);
double rate(std::span<const int> labels);

/// min(100, 100 exp(-(tcr_id - tcr_ood) / 100)).
double gen_score(double tcr_id, double tcr_ood);

/// One decimal, ties rounded up.
double round1(double x);

}  // namespace wmeval::metrics
