#pragma once

#include "wmeval/core/action_trajectory.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

namespace wmeval::testing {

namespace fs = std::filesystem;

/// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "wmeval") {
    std::string pattern = (fs::temp_directory_path() / (tag + "-XXXXXX")).string();
    if (!mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  fs::path path_;
};

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
}

/// Writes `count` small PNG frames whose colour depends on `seed` and the index.
inline void write_frames(const fs::path& dir, int count, int seed = 0, int width = 32,
                         int height = 24) {
  fs::create_directories(dir);
  for (int i = 0; i < count; ++i) {
    cv::Mat img(height, width, CV_8UC3,
                cv::Scalar((seed * 37 + i * 5) % 256, (seed * 11 + i * 3) % 256, (i * 7) % 256));
    char name[32];
    std::snprintf(name, sizeof name, "%05d.png", i);
    cv::imwrite((dir / name).string(), img);
  }
}

struct CommandResult {
  int status = -1;
  std::string output;
};

/// Runs a shell command, capturing stdout and, unless `stdout_only`, stderr.
inline CommandResult run_command(const std::string& cmd, bool stdout_only = false) {
  CommandResult r;
  FILE* pipe = popen((cmd + (stdout_only ? " 2>/dev/null" : " 2>&1")).c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) r.output += buf.data();
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

inline std::string cli() { return WMEVAL_CLI_PATH; }

/// Uniform random action trajectory in [-1, 1].
inline ActionTrajectory random_actions(std::mt19937_64& rng, Eigen::Index frames) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ActionMatrix<double> m(frames, kActiveDims);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = u(rng);
  }
  return ActionTrajectory(std::move(m));
}

}  // namespace wmeval::testing
