#include "wmeval/app/run.hpp"

#include "wmeval/core/errors.hpp"
#include "wmeval/core/io.hpp"
#include "wmeval/core/parallel.hpp"
#include "wmeval/judge/frames.hpp"
#include "wmeval/judge/pipelines.hpp"
#include "wmeval/kinematics/physlaw.hpp"
#include "wmeval/metrics/metrics.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>

namespace wmeval::app {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(RunLevel level) {
  switch (level) {
    case RunLevel::L1a: return "1a";
    case RunLevel::L1b: return "1b";
    case RunLevel::L2: return "2";
    case RunLevel::L3: return "3";
  }
  return "1a";
}

RunLevel run_level_from_string(std::string_view text) {
  for (auto l : {RunLevel::L1a, RunLevel::L1b, RunLevel::L2, RunLevel::L3}) {
    if (to_string(l) == text) return l;
  }
  throw ConfigError("unknown level '" + std::string(text) + "' (expected 1a, 1b, 2 or 3)");
}

std::size_t RunSummary::n_ok() const {
  return static_cast<std::size_t>(
      std::count_if(episodes.begin(), episodes.end(), [](const auto& e) { return e.result.has_value(); }));
}

std::size_t RunSummary::n_skipped() const { return episodes.size() - n_ok(); }

json RunSummary::summary_json() const {
  json skipped = json::array();
  for (const auto& e : episodes) {
    if (e.skip_reason) skipped.push_back({{"key", e.key}, {"line", e.line}, {"reason", *e.skip_reason}});
  }
  return {{"level", to_string(level)},
          {"model_id", report.model_id},
          {"episodes", episodes.size()},
          {"ok", n_ok()},
          {"skipped", skipped}};
}

std::string safe_name(std::string_view key) {
  std::string out(key);
  for (auto& c : out) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' && c != '.') c = '_';
  }
  return out;
}

namespace {

/// Input problem local to one episode; the run continues.
class MissingInput : public Error {
 public:
  using Error::Error;
};

bool is_video(const fs::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".mp4" || ext == ".avi" || ext == ".mov" || ext == ".mkv" || ext == ".webm";
}

std::string substitute(std::string text, const std::string& key, const std::string& value) {
  for (auto pos = text.find(key); pos != std::string::npos; pos = text.find(key, pos + value.size())) {
    text.replace(pos, key.size(), value);
  }
  return text;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

judge::FrameList resolve_frames(const fs::path& source, const std::string& key, const RunConfig& cfg) {
  if (source.empty()) throw MissingInput("no frame source");
  if (fs::is_directory(source)) return judge::list_frames(source);
  if (fs::is_regular_file(source) && is_video(source)) {
    const auto out = cfg.output_dir / "frames" / safe_name(key);
    if (!fs::is_directory(out) || fs::is_empty(out)) {
      fs::create_directories(out);
      const auto cmd = substitute(substitute(cfg.extract_command, "{video}", shell_quote(source.string())),
                                  "{out}", shell_quote(out.string()));
      spdlog::info("extracting frames: {}", cmd);
      if (std::system(cmd.c_str()) != 0) throw MissingInput("frame extraction failed for " + source.string());
    }
    return judge::list_frames(out);
  }
  throw MissingInput("frame source not found: " + source.string());
}

std::map<std::string, std::string> load_instructions(const fs::path& path) {
  std::map<std::string, std::string> out;
  if (path.empty()) return out;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open instructions " + path.string());
  try {
    const auto doc = json::parse(in);
    for (const auto& [k, v] : doc.items()) out.emplace(k, v.get<std::string>());
  } catch (const json::exception& e) {
    throw ConfigError("instructions " + path.string() + ": " + e.what());
  }
  return out;
}

json row_json(const ManifestRow& row) {
  return {{"task_id", row.task_id}, {"episode_id", row.episode_id}, {"condition", row.condition}};
}

struct Task {
  const ManifestRow* row = nullptr;
  const ManifestRow* partner = nullptr;  // ground truth (level 2) or baseline (level 3)
  std::optional<std::string> missing_partner;
};

std::string pair_key(const ManifestRow& r) { return r.task_id + "\x1f" + r.episode_id; }

std::vector<Task> plan(RunLevel level, const std::vector<ManifestRow>& rows) {
  std::vector<Task> tasks;
  std::map<std::string, const ManifestRow*> partners;
  const std::string partner_condition = level == RunLevel::L2 ? "gt" : "baseline";
  if (level == RunLevel::L2 || level == RunLevel::L3) {
    for (const auto& r : rows) {
      if (r.condition == partner_condition && !partners.emplace(pair_key(r), &r).second) {
        throw ConfigError("manifest line " + std::to_string(r.line) + ": duplicate " +
                          partner_condition + " row");
      }
    }
  }
  for (const auto& r : rows) {
    Task t;
    t.row = &r;
    if (level == RunLevel::L2) {
      if (r.condition == "gt") continue;
      if (auto it = partners.find(pair_key(r)); it != partners.end()) t.partner = it->second;
    } else if (level == RunLevel::L3) {
      if (r.condition == "baseline") continue;
      perturbation_kind_from_string(r.condition);
      if (auto it = partners.find(pair_key(r)); it != partners.end()) {
        t.partner = it->second;
      } else {
        t.missing_partner = "missing baseline for " + r.task_id + "/" + r.episode_id;
      }
    }
    tasks.push_back(t);
  }
  return tasks;
}

metrics::MetricValue mean_of(const std::vector<std::optional<double>>& values) {
  metrics::MetricValue m;
  double sum = 0;
  for (const auto& v : values) {
    if (v) {
      ++m.n;
      sum += *v;
    } else {
      ++m.excluded;
    }
  }
  if (m.n) m.value = sum / static_cast<double>(m.n);
  return m;
}

metrics::MetricValue rate_of(const std::vector<std::optional<int>>& labels) {
  metrics::MetricValue m;
  std::size_t hits = 0;
  for (const auto& v : labels) {
    if (v) {
      ++m.n;
      hits += static_cast<std::size_t>(*v);
    } else {
      ++m.excluded;
    }
  }
  if (m.n) m.value = metrics::rate(hits, m.n);
  return m;
}

std::optional<double> opt_num(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::optional<int> opt_int(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<int>();
}

void aggregate(RunSummary& run, const std::vector<Task>& tasks) {
  auto& rep = run.report;
  std::vector<std::optional<double>> obj, occ, phys;
  std::vector<std::optional<int>> tcr_id, tcr_ood, ops, ob;
  std::map<PerturbationKind, std::vector<std::optional<int>>> ob_kind;
  for (std::size_t i = 0; i < run.episodes.size(); ++i) {
    const auto& e = run.episodes[i];
    if (!e.result) continue;
    const auto& r = *e.result;
    switch (run.level) {
      case RunLevel::L1a:
        obj.push_back(r.at("pcs").at("obj").is_null()
                          ? std::nullopt
                          : std::optional(r.at("pcs").at("obj").at("score").get<double>()));
        occ.push_back(r.at("pcs").at("occ").is_null()
                          ? std::nullopt
                          : std::optional(r.at("pcs").at("occ").at("score").get<double>()));
        break;
      case RunLevel::L1b: phys.push_back(opt_num(r.at("final"))); break;
      case RunLevel::L2: {
        auto& split = tasks[i].row->condition == "ood" ? tcr_ood : tcr_id;
        split.push_back(opt_int(r.at("tcr").at("tcr")));
        if (tasks[i].row->condition != "ood" && r.contains("ops")) {
          const auto& o = r.at("ops").at("ops");
          ops.push_back(o.is_null() ? std::nullopt
                                    : std::optional<int>(o.at("label") == "preserved" ? 1 : 0));
        }
        break;
      }
      case RunLevel::L3: {
        const auto& b = r.at("bias").at("bias");
        const auto flag = b.is_null() ? std::nullopt : std::optional<int>(b.at("label") == "Y" ? 1 : 0);
        ob.push_back(flag);
        ob_kind[perturbation_kind_from_string(tasks[i].row->condition)].push_back(flag);
        break;
      }
    }
  }
  switch (run.level) {
    case RunLevel::L1a:
      rep.obj = mean_of(obj);
      rep.occ = mean_of(occ);
      break;
    case RunLevel::L1b: rep.phys_law = mean_of(phys); break;
    case RunLevel::L2:
      rep.tcr = rate_of(tcr_id);
      rep.tcr_ood = rate_of(tcr_ood);
      rep.ops = rate_of(ops);
      if (rep.tcr.value && rep.tcr_ood.value) {
        rep.gen.value = metrics::gen_score(*rep.tcr.value, *rep.tcr_ood.value);
        rep.gen.n = rep.tcr.n + rep.tcr_ood.n;
      }
      break;
    case RunLevel::L3:
      rep.ob = rate_of(ob);
      rep.bias_resistance = rep.ob;
      if (rep.ob.value) rep.bias_resistance.value = 100.0 - *rep.ob.value;
      for (const auto& [kind, flags] : ob_kind) rep.ob_by_kind.emplace(kind, rate_of(flags));
      break;
  }
}

}  // namespace

RunSummary run_level(RunLevel level, const std::vector<ManifestRow>& rows, const RunConfig& cfg,
                     judge::Judge& judge, const judge::PromptLibrary& prompts,
                     const kin::PhysLawParams& params) {
  if (rows.empty()) throw ConfigError("manifest has no episodes");
  const auto tasks = plan(level, rows);
  if (tasks.empty()) throw ConfigError("manifest has no episodes to score at level " + std::string(to_string(level)));
  std::set<std::string> keys;
  for (const auto& t : tasks) {
    if (!keys.insert(safe_name(t.row->key())).second) {
      throw ConfigError("manifest line " + std::to_string(t.row->line) + ": duplicate episode " + t.row->key());
    }
  }
  const auto instructions = load_instructions(cfg.instructions);
  const auto instruction_for = [&](const ManifestRow& r) {
    if (auto it = instructions.find(r.prompt_id); it != instructions.end()) return it->second;
    if (r.prompt_id.empty()) throw MissingInput("no instruction (prompt_id is empty)");
    return r.prompt_id;
  };

  // Judge calls inside one episode run sequentially; episodes fan out up to
  // the endpoint's parallelism, which bounds the concurrent calls.
  judge::PipelineOptions opt = cfg.pipeline;
  opt.parallelism = 1;

  RunSummary run;
  run.level = level;
  run.report.model_id = cfg.model_id;
  run.episodes.resize(tasks.size());
  parallel_for(tasks.size(), static_cast<std::size_t>(cfg.endpoint.parallelism), [&](std::size_t i) {
    const auto& t = tasks[i];
    const auto& row = *t.row;
    auto& out = run.episodes[i];
    out.key = row.key();
    out.line = row.line;
    try {
      if (t.missing_partner) throw MissingInput(*t.missing_partner);
      json j = row_json(row);
      const auto frames = resolve_frames(row.frame_dir, row.key(), cfg);
      j["frames"] = frames.size();
      switch (level) {
        case RunLevel::L1a: j["pcs"] = judge::to_json(judge::run_pcs(frames, judge, prompts, opt)); break;
        case RunLevel::L1b: {
          if (row.traj_path.empty() || !fs::is_regular_file(row.traj_path)) {
            throw MissingInput("trajectory not found: " + row.traj_path.string());
          }
          const auto traj = io::load_centroid_csv(row.traj_path);
          const auto v = judge::run_vqs(frames, judge, prompts, opt);
          j["vqs"] = judge::to_json(v);
          if (v.payload) {
            const auto report = kin::evaluate(traj, *v.vqs, v.payload->has_motion, params);
            j["physlaw"] = kin::to_json(report);
            j["final"] = report.result.final;
          } else {
            j["final"] = nullptr;
          }
          break;
        }
        case RunLevel::L2: {
          const auto instruction = instruction_for(row);
          j["tcr"] = judge::to_json(judge::run_tcr(frames, instruction, judge, prompts, opt));
          if (row.condition != "ood") {
            if (t.partner) {
              const auto gt = resolve_frames(t.partner->frame_dir, t.partner->key(), cfg);
              j["ops"] = judge::to_json(judge::run_ops(frames, gt, instruction, judge, prompts, opt));
            } else {
              j["ops_skipped"] = "no ground-truth row";
            }
          }
          break;
        }
        case RunLevel::L3: {
          const auto baseline = resolve_frames(t.partner->frame_dir, t.partner->key(), cfg);
          j["lenient"] = cfg.text_conditioned;
          j["bias"] = judge::to_json(
              judge::run_bias(baseline, frames, cfg.text_conditioned, judge, prompts, opt));
          break;
        }
      }
      out.result = std::move(j);
    } catch (const MissingInput& e) {
      out.skip_reason = e.what();
    } catch (const FrameError& e) {
      out.skip_reason = e.what();
    } catch (const TrajectoryError& e) {
      out.skip_reason = e.what();
    } catch (const ParseError& e) {
      out.skip_reason = e.what();
    }
    if (out.skip_reason) spdlog::warn("skipping {}: {}", out.key, *out.skip_reason);
  });
  aggregate(run, tasks);
  return run;
}

void write_run(const RunSummary& run, const fs::path& dir) {
  const auto episodes = dir / "episodes";
  fs::create_directories(episodes);
  for (const auto& e : run.episodes) {
    if (!e.result) continue;
    std::ofstream out(episodes / (safe_name(e.key) + ".json"), std::ios::binary);
    if (!out) throw Error("cannot write episode " + e.key);
    out << e.result->dump(2) << '\n';
  }
  metrics::write_report(run.report, dir);
  std::ofstream out(dir / "summary.json", std::ios::binary);
  if (!out) throw Error("cannot write summary");
  out << run.summary_json().dump(2) << '\n';
}

}  // namespace wmeval::app
