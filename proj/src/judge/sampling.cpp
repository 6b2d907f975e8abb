#include "wmeval/judge/sampling.hpp"

#include "wmeval/core/errors.hpp"

#include <spdlog/spdlog.h>

#include <string>

namespace wmeval::judge {

std::vector<int> uniform_indices(int total, int n) {
  if (total < 1) throw FrameError("cannot sample from an empty clip");
  if (n < 1) throw FrameError("sample count must be positive");
  if (total < n) {
    spdlog::warn("clip has {} frames, fewer than the {} requested; indices repeat", total, n);
  }
  std::vector<int> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = 0;
    return out;
  }
  const long long span = total - 1;
  const long long denom = n - 1;
  for (long long k = 0; k < n; ++k) {
    out[static_cast<std::size_t>(k)] = static_cast<int>((2 * k * span + denom) / (2 * denom));
  }
  return out;
}

std::vector<std::pair<int, int>> midcut_pairs(int total) {
  const auto u = uniform_indices(total, 20);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(10);
  for (std::size_t i = 0; i < 10; ++i) pairs.emplace_back(u[i], u[i + 10]);
  return pairs;
}

std::vector<int> late_phase_indices(int total) {
  if (total < 1) throw FrameError("cannot sample from an empty clip");
  std::vector<int> out;
  out.reserve(kLatePhasePercents.size());
  for (int p : kLatePhasePercents) out.push_back(p * (total - 1) / 100);
  return out;
}

}  // namespace wmeval::judge
