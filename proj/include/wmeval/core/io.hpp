#pragma once

#include "wmeval/core/action_trajectory.hpp"
#include "wmeval/core/centroid_trajectory.hpp"

#include <filesystem>
#include <iosfwd>

namespace wmeval::io {

/// Line-delimited JSON, one object per frame with an "action" array. Rows may
/// be wider than 29 (e.g. 384-D padded); only the active prefix is kept.
ActionTrajectory read_action_jsonl(std::istream& in);
ActionTrajectory load_action_jsonl(const std::filesystem::path& path);

/// Writes each row zero-padded back to the trajectory's source width.
void write_action_jsonl(std::ostream& out, const ActionTrajectory& traj);
void save_action_jsonl(const std::filesystem::path& path, const ActionTrajectory& traj);

/// CSV with header `t,x,y`.
CentroidTrajectory read_centroid_csv(std::istream& in);
CentroidTrajectory load_centroid_csv(const std::filesystem::path& path);
void write_centroid_csv(std::ostream& out, const CentroidTrajectory& traj);
void save_centroid_csv(const std::filesystem::path& path, const CentroidTrajectory& traj);

}  // namespace wmeval::io
