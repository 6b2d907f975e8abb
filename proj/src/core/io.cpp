#include "wmeval/core/io.hpp"

#include "wmeval/core/errors.hpp"

#include "json.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace wmeval::io {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(std::string_view field, std::size_t line) {
  const auto text = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("line " + std::to_string(line) + ": '" + text + "' is not a number");
  }
  return value;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  return out;
}

}  // namespace

ActionTrajectory read_action_jsonl(std::istream& in) {
  std::vector<ActionRow<double>> rows;
  Eigen::Index source_dim = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.contains("action") || !j.at("action").is_array()) {
      throw ParseError("line " + std::to_string(line_no) + ": missing \"action\" array");
    }
    const auto& arr = j.at("action");
    Eigen::VectorXd raw(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      if (!arr[i].is_number()) {
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric action entry");
      }
      raw(static_cast<Eigen::Index>(i)) = arr[i].get<double>();
    }
    if (source_dim < 0) source_dim = raw.size();
    rows.push_back(extract_active(raw));
  }
  ActionMatrix<double> data(static_cast<Eigen::Index>(rows.size()), kActiveDims);
  for (std::size_t r = 0; r < rows.size(); ++r) data.row(static_cast<Eigen::Index>(r)) = rows[r];
  return ActionTrajectory(std::move(data), source_dim < 0 ? kPaddedDims : source_dim);
}

ActionTrajectory load_action_jsonl(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_action_jsonl(in);
}

void write_action_jsonl(std::ostream& out, const ActionTrajectory& traj) {
  for (Eigen::Index t = 0; t < traj.frames(); ++t) {
    const Eigen::VectorXd padded = zero_pad(traj.data().row(t), traj.source_dim());
    nlohmann::json j;
    j["action"] = std::vector<double>(padded.data(), padded.data() + padded.size());
    out << j.dump() << '\n';
  }
}

void save_action_jsonl(const std::filesystem::path& path, const ActionTrajectory& traj) {
  auto out = open_out(path);
  write_action_jsonl(out, traj);
}

CentroidTrajectory read_centroid_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<double> t, x, y;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = trim(line);
    if (row.empty()) continue;
    if (!header_seen) {
      std::string compact;
      for (char c : row) {
        if (c != ' ' && c != '\t') compact.push_back(c);
      }
      if (compact != "t,x,y") {
        throw ParseError("centroid CSV must start with header 't,x,y', got '" + row + "'");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::string_view rest(row);
    for (;;) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 3) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields");
    }
    t.push_back(parse_double(fields[0], line_no));
    x.push_back(parse_double(fields[1], line_no));
    y.push_back(parse_double(fields[2], line_no));
  }
  if (!header_seen) throw ParseError("centroid CSV is empty");
  const auto to_vec = [](const std::vector<double>& v) {
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  };
  return CentroidTrajectory(to_vec(t), to_vec(x), to_vec(y));
}

CentroidTrajectory load_centroid_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_centroid_csv(in);
}

void write_centroid_csv(std::ostream& out, const CentroidTrajectory& traj) {
  const auto old_precision = out.precision();
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "t,x,y\n";
  for (Eigen::Index i = 0; i < traj.size(); ++i) {
    out << traj.t()(i) << ',' << traj.x()(i) << ',' << traj.y()(i) << '\n';
  }
  out.precision(old_precision);
}

void save_centroid_csv(const std::filesystem::path& path, const CentroidTrajectory& traj) {
  auto out = open_out(path);
  write_centroid_csv(out, traj);
}

}  // namespace wmeval::io
