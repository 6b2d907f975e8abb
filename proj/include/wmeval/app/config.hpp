#pragma once

#include "wmeval/judge/client.hpp"
#include "wmeval/judge/pipelines.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace wmeval::app {

/// Keyed text config: `[section]` headers, `key = value` lines, `#`
/// comments. Values are quoted strings, integers, floats or booleans.
class KeyedConfig {
 public:
  using Value = std::variant<std::string, long long, double, bool>;

  static KeyedConfig parse(std::string_view text, std::string_view source = "<config>");
  static KeyedConfig load(const std::filesystem::path& path);

  bool has(std::string_view key) const;
  /// Keys are "section.name". Throws ConfigError on a type mismatch.
  std::optional<std::string> get_string(std::string_view key) const;
  std::optional<double> get_double(std::string_view key) const;
  std::optional<long long> get_int(std::string_view key) const;
  std::optional<bool> get_bool(std::string_view key) const;

  const std::map<std::string, Value, std::less<>>& values() const { return values_; }

 private:
  const Value* find(std::string_view key) const;
  std::map<std::string, Value, std::less<>> values_;
};

enum class JudgeMode { Remote, MockHashed, MockFixed };

struct RunConfig {
  std::string model_id = "model";
  JudgeMode judge_mode = JudgeMode::Remote;
  std::string mock_reply;
  std::uint64_t mock_salt = 0;
  judge::EndpointConfig endpoint;
  judge::PipelineOptions pipeline;
  bool text_conditioned = false;

  std::filesystem::path asset_dir;
  std::filesystem::path config_dir;
  std::filesystem::path output_dir = "wmeval_out";
  /// Optional JSON object prompt_id -> instruction text.
  std::filesystem::path instructions;

  /// Subprocess template for turning a video into a frame directory;
  /// `{video}` and `{out}` are substituted.
  std::string extract_command = "ffmpeg -loglevel error -i {video} {out}/%05d.png";
};

/// Applies the sections [run], [judge], [paths], [extract]; unknown keys are
/// rejected.
RunConfig run_config_from(const KeyedConfig& cfg);
RunConfig load_run_config(const std::filesystem::path& path);
/// Built-in defaults with asset and config directories from the build tree.
RunConfig default_run_config();

std::unique_ptr<judge::Judge> make_judge(const RunConfig& cfg);

}  // namespace wmeval::app
