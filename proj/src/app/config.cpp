#include "wmeval/app/config.hpp"

#include "wmeval/core/errors.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace wmeval::app {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(std::string_view source, int line, const std::string& what) {
  throw ConfigError(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

bool bare_key(std::string_view k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
  }
  return true;
}

// Parses a value and returns it with the unparsed remainder of the line.
KeyedConfig::Value parse_value(std::string_view v, std::string_view source, int line,
                               std::string_view& rest) {
  if (v.empty()) fail(source, line, "missing value");
  if (v.front() == '"') {
    std::string out;
    std::size_t i = 1;
    for (; i < v.size() && v[i] != '"'; ++i) {
      if (v[i] != '\\') {
        out += v[i];
        continue;
      }
      if (++i >= v.size()) break;
      switch (v[i]) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: fail(source, line, std::string("unsupported escape \\") + v[i]);
      }
    }
    if (i >= v.size()) fail(source, line, "unterminated string");
    rest = v.substr(i + 1);
    return out;
  }
  if (v.front() == '\'') {
    const auto close = v.find('\'', 1);
    if (close == std::string_view::npos) fail(source, line, "unterminated string");
    rest = v.substr(close + 1);
    return std::string(v.substr(1, close - 1));
  }
  const auto end = v.find('#');
  const auto token = trim(v.substr(0, end));
  rest = end == std::string_view::npos ? std::string_view{} : v.substr(end);
  if (token == "true") return true;
  if (token == "false") return false;
  std::string digits;
  for (char c : token) {
    if (c != '_') digits += c;
  }
  long long i = 0;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), i);
  if (ec == std::errc{} && p == digits.data() + digits.size()) return i;
  double d = 0;
  auto [q, ec2] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
  if (ec2 == std::errc{} && q == digits.data() + digits.size()) return d;
  fail(source, line, "cannot parse value '" + std::string(token) + "'");
}

}  // namespace

KeyedConfig KeyedConfig::parse(std::string_view text, std::string_view source) {
  KeyedConfig cfg;
  std::string section;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string_view::npos) fail(source, line_no, "unterminated section header");
      const auto after = trim(line.substr(close + 1));
      if (!after.empty() && after.front() != '#') fail(source, line_no, "text after section header");
      section = std::string(trim(line.substr(1, close - 1)));
      if (!bare_key(section)) fail(source, line_no, "bad section name");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(source, line_no, "expected key = value");
    const auto key = trim(line.substr(0, eq));
    if (!bare_key(key)) fail(source, line_no, "bad key '" + std::string(key) + "'");
    std::string_view rest;
    auto value = parse_value(trim(line.substr(eq + 1)), source, line_no, rest);
    rest = trim(rest);
    if (!rest.empty() && rest.front() != '#') fail(source, line_no, "trailing text after value");
    const std::string full = section.empty() ? std::string(key) : section + "." + std::string(key);
    if (!cfg.values_.emplace(full, std::move(value)).second) {
      fail(source, line_no, "duplicate key " + full);
    }
  }
  return cfg;
}

KeyedConfig KeyedConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

const KeyedConfig::Value* KeyedConfig::find(std::string_view key) const {
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

bool KeyedConfig::has(std::string_view key) const { return find(key) != nullptr; }

std::optional<std::string> KeyedConfig::get_string(std::string_view key) const {
  const auto* v = find(key);
  if (!v) return std::nullopt;
  if (const auto* s = std::get_if<std::string>(v)) return *s;
  throw ConfigError(std::string(key) + " must be a string");
}

std::optional<double> KeyedConfig::get_double(std::string_view key) const {
  const auto* v = find(key);
  if (!v) return std::nullopt;
  if (const auto* d = std::get_if<double>(v)) return *d;
  if (const auto* i = std::get_if<long long>(v)) return static_cast<double>(*i);
  throw ConfigError(std::string(key) + " must be a number");
}

std::optional<long long> KeyedConfig::get_int(std::string_view key) const {
  const auto* v = find(key);
  if (!v) return std::nullopt;
  if (const auto* i = std::get_if<long long>(v)) return *i;
  throw ConfigError(std::string(key) + " must be an integer");
}

std::optional<bool> KeyedConfig::get_bool(std::string_view key) const {
  const auto* v = find(key);
  if (!v) return std::nullopt;
  if (const auto* b = std::get_if<bool>(v)) return *b;
  throw ConfigError(std::string(key) + " must be true or false");
}

RunConfig default_run_config() {
  RunConfig cfg;
  cfg.asset_dir = WMEVAL_ASSET_DIR;
  cfg.config_dir = WMEVAL_CONFIG_DIR;
  return cfg;
}

RunConfig run_config_from(const KeyedConfig& kc) {
  static const std::set<std::string, std::less<>> known{
      "run.model_id",        "run.text_conditioned", "run.output_dir",    "run.tcr_mode",
      "judge.mode",          "judge.mock_reply",     "judge.mock_salt",   "judge.base_url",
      "judge.path",          "judge.model",          "judge.token",       "judge.token_env",
      "judge.timeout_s",     "judge.retry_cap",      "judge.backoff_initial_s",
      "judge.backoff_max_s", "judge.parallelism",    "paths.asset_dir",   "paths.config_dir",
      "paths.instructions",  "extract.command"};
  for (const auto& [key, value] : kc.values()) {
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }

  RunConfig cfg = default_run_config();
  if (auto v = kc.get_string("run.model_id")) cfg.model_id = *v;
  if (auto v = kc.get_bool("run.text_conditioned")) cfg.text_conditioned = *v;
  if (auto v = kc.get_string("run.output_dir")) cfg.output_dir = *v;
  if (auto v = kc.get_string("run.tcr_mode")) {
    if (*v == "tiled") {
      cfg.pipeline.tcr_mode = judge::TcrMode::Tiled;
    } else if (*v == "separate") {
      cfg.pipeline.tcr_mode = judge::TcrMode::Separate;
    } else {
      throw ConfigError("run.tcr_mode must be 'tiled' or 'separate'");
    }
  }
  if (auto v = kc.get_string("judge.mode")) {
    if (*v == "remote") {
      cfg.judge_mode = JudgeMode::Remote;
    } else if (*v == "mock") {
      cfg.judge_mode = JudgeMode::MockHashed;
    } else if (*v == "mock-fixed") {
      cfg.judge_mode = JudgeMode::MockFixed;
    } else {
      throw ConfigError("judge.mode must be 'remote', 'mock' or 'mock-fixed'");
    }
  }
  if (auto v = kc.get_string("judge.mock_reply")) cfg.mock_reply = *v;
  if (auto v = kc.get_int("judge.mock_salt")) cfg.mock_salt = static_cast<std::uint64_t>(*v);
  auto& ep = cfg.endpoint;
  if (auto v = kc.get_string("judge.base_url")) ep.base_url = *v;
  if (auto v = kc.get_string("judge.path")) ep.path = *v;
  if (auto v = kc.get_string("judge.model")) ep.model = *v;
  if (auto v = kc.get_string("judge.token")) ep.token = *v;
  if (auto v = kc.get_string("judge.token_env")) ep.token_env = *v;
  if (auto v = kc.get_double("judge.timeout_s")) ep.timeout_s = *v;
  if (auto v = kc.get_int("judge.retry_cap")) ep.retry_cap = static_cast<int>(*v);
  if (auto v = kc.get_double("judge.backoff_initial_s")) ep.backoff_initial_s = *v;
  if (auto v = kc.get_double("judge.backoff_max_s")) ep.backoff_max_s = *v;
  if (auto v = kc.get_int("judge.parallelism")) ep.parallelism = static_cast<int>(*v);
  if (ep.parallelism < 1) throw ConfigError("judge.parallelism must be >= 1");
  if (ep.retry_cap < 0) throw ConfigError("judge.retry_cap must be >= 0");
  if (auto v = kc.get_string("paths.asset_dir")) cfg.asset_dir = *v;
  if (auto v = kc.get_string("paths.config_dir")) cfg.config_dir = *v;
  if (auto v = kc.get_string("paths.instructions")) cfg.instructions = *v;
  if (auto v = kc.get_string("extract.command")) cfg.extract_command = *v;
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  RunConfig cfg = run_config_from(KeyedConfig::load(path));
  // Relative asset, config and instruction paths resolve against the file.
  const auto base = path.parent_path();
  for (auto* p : {&cfg.asset_dir, &cfg.config_dir, &cfg.instructions}) {
    if (!p->empty() && p->is_relative()) *p = base / *p;
  }
  return cfg;
}

std::unique_ptr<judge::Judge> make_judge(const RunConfig& cfg) {
  switch (cfg.judge_mode) {
    case JudgeMode::MockHashed:
      return std::make_unique<judge::MockJudge>(judge::MockJudge::hashed(cfg.mock_salt));
    case JudgeMode::MockFixed:
      return std::make_unique<judge::MockJudge>(judge::MockJudge::fixed(cfg.mock_reply));
    case JudgeMode::Remote: return std::make_unique<judge::RemoteJudge>(cfg.endpoint);
  }
  throw ConfigError("unknown judge mode");
}

}  // namespace wmeval::app
