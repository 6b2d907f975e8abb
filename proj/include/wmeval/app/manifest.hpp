#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace wmeval::app {

/// One manifest row. Paths are resolved against the manifest's directory;
/// empty cells stay empty.
struct ManifestRow {
  std::string task_id;
  std::string episode_id;
  std::string condition;
  std::filesystem::path frame_dir;
  std::filesystem::path traj_path;
  std::string prompt_id;
  std::size_t line = 0;

  std::string key() const { return task_id + "__" + episode_id + "__" + condition; }
};

/// CSV with header task_id,episode_id,condition,frame_dir,traj_path,prompt_id
/// (any column order, extra columns ignored, RFC 4180 quoting). Throws
/// ConfigError for a missing column, a ragged row or an empty manifest.
std::vector<ManifestRow> read_manifest(std::istream& in, const std::filesystem::path& base = {});
std::vector<ManifestRow> load_manifest(const std::filesystem::path& path);

/// Splits one CSV record.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace wmeval::app
