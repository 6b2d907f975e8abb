#include "wmeval/app/manifest.hpp"

#include "wmeval/core/errors.hpp"

#include <array>
#include <fstream>
#include <map>

namespace wmeval::app {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted) throw ConfigError("unterminated quote in manifest row");
  out.push_back(std::move(cur));
  return out;
}

std::vector<ManifestRow> read_manifest(std::istream& in, const std::filesystem::path& base) {
  static constexpr std::array<const char*, 6> kColumns{"task_id",   "episode_id", "condition",
                                                       "frame_dir", "traj_path",  "prompt_id"};
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) {
      header = split_csv_line(line);
      break;
    }
  }
  if (header.empty()) throw ConfigError("manifest is empty");
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col.emplace(header[i], i);
  for (const char* name : kColumns) {
    if (!col.count(name)) throw ConfigError(std::string("manifest lacks column ") + name);
  }

  const auto resolve = [&base](const std::string& p) -> std::filesystem::path {
    if (p.empty()) return {};
    std::filesystem::path path(p);
    return path.is_relative() && !base.empty() ? base / path : path;
  };

  std::vector<ManifestRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ConfigError("manifest line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " cells, got " +
                        std::to_string(cells.size()));
    }
    ManifestRow row;
    row.task_id = cells[col.at("task_id")];
    row.episode_id = cells[col.at("episode_id")];
    row.condition = cells[col.at("condition")];
    row.frame_dir = resolve(cells[col.at("frame_dir")]);
    row.traj_path = resolve(cells[col.at("traj_path")]);
    row.prompt_id = cells[col.at("prompt_id")];
    row.line = line_no;
    if (row.task_id.empty() || row.episode_id.empty()) {
      throw ConfigError("manifest line " + std::to_string(line_no) + ": task_id and episode_id are required");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("manifest has no episodes");
  return rows;
}

std::vector<ManifestRow> load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open manifest " + path.string());
  return read_manifest(in, path.parent_path());
}

}  // namespace wmeval::app
