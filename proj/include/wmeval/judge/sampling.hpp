#pragma once

#include <array>
#include <utility>
#include <vector>

namespace wmeval::judge {

/// idx_k = round(k (total - 1) / (n - 1)), rounded half up. Clips shorter than
/// n produce duplicates (a warning is logged).
std::vector<int> uniform_indices(int total, int n);

/// (u_i, u_{i+10}) for i = 0..9 over 20 uniform indices.
std::vector<std::pair<int, int>> midcut_pairs(int total);

inline constexpr std::array<int, 7> kLatePhasePercents{81, 83, 85, 87, 90, 95, 97};

/// floor(p (total - 1) / 100) for each late-phase percentage.
std::vector<int> late_phase_indices(int total);

}  // namespace wmeval::judge
