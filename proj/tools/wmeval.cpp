// wmeval: command-line front end for perturbation, physics-law scoring,
// synthetic oracles, judge pipelines, metrics, corpus statistics and runs.

#include "wmeval/app/config.hpp"
#include "wmeval/app/manifest.hpp"
#include "wmeval/app/oracle_suite.hpp"
#include "wmeval/app/run.hpp"
#include "wmeval/core/errors.hpp"
#include "wmeval/core/io.hpp"
#include "wmeval/corpus/analysis.hpp"
#include "wmeval/judge/frames.hpp"
#include "wmeval/judge/pipelines.hpp"
#include "wmeval/judge/verdict.hpp"
#include "wmeval/kinematics/physlaw.hpp"
#include "wmeval/metrics/metrics.hpp"
#include "wmeval/metrics/report.hpp"
#include "wmeval/oracle/synthetic.hpp"
#include "wmeval/perturb/perturbation.hpp"
#include "wmeval/perturb/schedule.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>

namespace fs = std::filesystem;
using namespace wmeval;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kFailed = 2, kRemote = 3 };

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void emit_json(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_text(out, j.dump(2) + "\n");
  }
}

std::vector<int> parse_flags(const std::string& csv) {
  std::vector<int> out;
  for (const auto& cell : app::split_csv_line(csv)) {
    if (cell == "0" || cell == "1") {
      out.push_back(cell == "1");
    } else {
      throw MetricError("expected 0 or 1, got '" + cell + "'");
    }
  }
  return out;
}

std::vector<double> parse_numbers(const std::string& csv) {
  std::vector<double> out;
  for (const auto& cell : app::split_csv_line(csv)) {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (used != cell.size()) throw MetricError("not a number: '" + cell + "'");
    out.push_back(v);
  }
  return out;
}

app::RunConfig config_from(const std::string& path) {
  return path.empty() ? app::default_run_config() : app::load_run_config(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"wmeval: reliability evaluation toolkit for action-conditioned world models"};
  cli.require_subcommand(1);
  bool verbose = false;
  cli.add_flag("-v,--verbose", verbose, "Debug logging on stderr");

  // perturb
  auto* perturb_cmd = cli.add_subcommand("perturb", "Apply implicit failure perturbations to an action trajectory");
  std::string p_in, p_out, p_kind, p_task, p_schedule;
  double p_severity = perturb::kDefaultSeverity;
  std::vector<int> p_wrist_left{5, 6}, p_wrist_right{12, 13};
  perturb_cmd->add_option("--in", p_in, "Input action JSONL")->required()->check(CLI::ExistingFile);
  perturb_cmd->add_option("--out", p_out, "Output JSONL (--kind) or directory (--task)")->required();
  auto* kind_opt = perturb_cmd->add_option("--kind", p_kind, "Perturbation kind, e.g. grip_force_weak");
  auto* task_opt = perturb_cmd->add_option("--task", p_task, "Task id; applies its three scheduled kinds");
  kind_opt->excludes(task_opt);
  perturb_cmd->add_option("--severity", p_severity, "Severity in [0, 1]")->capture_default_str();
  perturb_cmd->add_option("--schedule", p_schedule, "Schedule JSON (default: built-in table)");
  perturb_cmd->add_option("--wrist-left", p_wrist_left, "Left wrist joint indices")->expected(2)->capture_default_str();
  perturb_cmd->add_option("--wrist-right", p_wrist_right, "Right wrist joint indices")->expected(2)->capture_default_str();

  // physlaw
  auto* phys_cmd = cli.add_subcommand("physlaw", "Score a centroid trajectory (t,x,y CSV)");
  std::string ph_traj, ph_out, ph_vqs_json;
  int ph_vqs = 10;
  bool ph_no_motion = false;
  phys_cmd->add_option("--traj", ph_traj, "Centroid CSV with header t,x,y")->required()->check(CLI::ExistingFile);
  phys_cmd->add_option("--vqs", ph_vqs, "Video quality gate score (0, 5 or 10)")->capture_default_str();
  auto* ph_no_motion_opt = phys_cmd->add_flag("--no-motion", ph_no_motion, "Judge reported no motion");
  phys_cmd->add_option("--vqs-json", ph_vqs_json, "Raw judge reply with video_ok and has_motion")
      ->check(CLI::ExistingFile)
      ->excludes(ph_no_motion_opt);
  phys_cmd->add_option("--out", ph_out, "Write the JSON report here instead of stdout");

  // oracle
  auto* oracle_cmd = cli.add_subcommand("oracle", "Synthetic trajectories and the oracle suite");
  oracle_cmd->require_subcommand(1);
  std::string o_level = "L0", o_shape = "constant", o_out;
  std::uint64_t o_seed = 0;
  int o_frames = 32, o_bounce_frames = 120, o_sweep = 20;
  double o_fps = 16.0, o_h1 = 0.5, o_ratio = 0.5;
  bool o_json = false;
  auto* o_gen = oracle_cmd->add_subcommand("gen", "Ladder trajectory L0..L4");
  o_gen->add_option("--level", o_level, "L0..L4")->capture_default_str();
  o_gen->add_option("--seed", o_seed)->capture_default_str();
  o_gen->add_option("--frames", o_frames)->capture_default_str();
  o_gen->add_option("--fps", o_fps)->capture_default_str();
  o_gen->add_option("--out", o_out, "Output CSV")->required();
  auto* o_shape_cmd = oracle_cmd->add_subcommand("shape", "Acceleration-sweep trajectory");
  o_shape_cmd->add_option("--shape", o_shape, "constant, pm5, pm20, pm50, step or ramp")->capture_default_str();
  o_shape_cmd->add_option("--seed", o_seed)->capture_default_str();
  o_shape_cmd->add_option("--frames", o_frames)->capture_default_str();
  o_shape_cmd->add_option("--fps", o_fps)->capture_default_str();
  o_shape_cmd->add_option("--out", o_out, "Output CSV")->required();
  auto* o_bounce = oracle_cmd->add_subcommand("bounce", "Drop with one rebound");
  o_bounce->add_option("--h1", o_h1, "Drop height (normalized)")->capture_default_str();
  o_bounce->add_option("--ratio", o_ratio, "Rebound height / drop height")->capture_default_str();
  o_bounce->add_option("--frames", o_bounce_frames)->capture_default_str();
  o_bounce->add_option("--fps", o_fps)->capture_default_str();
  o_bounce->add_option("--out", o_out, "Output CSV")->required();
  auto* o_suite = oracle_cmd->add_subcommand("suite", "Score the synthetic fixtures and check the criteria");
  o_suite->add_option("--seed", o_seed, "First ladder seed")->capture_default_str();
  o_suite->add_option("--sweep", o_sweep, "Number of ladder seeds")->capture_default_str();
  o_suite->add_flag("--json", o_json, "Machine-readable output");

  // judge
  auto* judge_cmd = cli.add_subcommand("judge", "Run one judge pipeline on frame directories");
  std::string j_pipeline, j_frames, j_gt, j_baseline, j_instruction, j_config, j_out;
  bool j_lenient = false;
  judge_cmd->add_option("--pipeline", j_pipeline, "pcs, vqs, tcr, ops or bias")
      ->required()
      ->check(CLI::IsMember({"pcs", "vqs", "tcr", "ops", "bias"}));
  judge_cmd->add_option("--frames", j_frames, "Predicted (or perturbed) frame directory")->required();
  judge_cmd->add_option("--gt-frames", j_gt, "Ground-truth frames (ops)");
  judge_cmd->add_option("--baseline-frames", j_baseline, "Baseline frames (bias)");
  judge_cmd->add_option("--instruction", j_instruction, "Task instruction (tcr, ops)");
  judge_cmd->add_flag("--lenient", j_lenient, "Lenient comparison prompt (bias, text-conditioned models)");
  judge_cmd->add_option("--config", j_config, "Run config file");
  judge_cmd->add_option("--out", j_out, "Write JSON here instead of stdout");

  // metrics
  auto* metrics_cmd = cli.add_subcommand("metrics", "Metric formulas and report merging");
  metrics_cmd->require_subcommand(1);
  std::string m_values, m_out, m_model;
  double m_tcr_id = 0, m_tcr_ood = 0;
  std::vector<std::string> m_reports;
  auto* m_pa = metrics_cmd->add_subcommand("pa", "Physical adherence of violation degrees");
  m_pa->add_option("--deltas", m_values, "Comma-separated values in [0, 1]")->required();
  auto* m_ob = metrics_cmd->add_subcommand("ob", "Optimism bias of 0/1 outcomes");
  m_ob->add_option("--flags", m_values, "Comma-separated 0/1")->required();
  auto* m_rate = metrics_cmd->add_subcommand("rate", "Percentage of 1 labels");
  m_rate->add_option("--labels", m_values, "Comma-separated 0/1")->required();
  auto* m_gen = metrics_cmd->add_subcommand("gen", "Generalization score");
  m_gen->add_option("--tcr-id", m_tcr_id, "In-distribution TCR (percent)")->required();
  m_gen->add_option("--tcr-ood", m_tcr_ood, "Out-of-distribution TCR (percent)")->required();
  auto* m_combine = metrics_cmd->add_subcommand("combine", "Merge per-level report.json files into one row");
  m_combine->add_option("reports", m_reports, "report.json files")->required()->check(CLI::ExistingFile);
  m_combine->add_option("--out", m_out, "Output directory")->required();

  // corpus
  auto* corpus_cmd = cli.add_subcommand("corpus", "Statistics over the human-annotation corpus");
  std::string c_root, c_indicators, c_grades, c_out;
  corpus_cmd->add_option("--root", c_root, "Corpus root (<level>/<subset>/<id>.json)")->required()->check(CLI::ExistingDirectory);
  corpus_cmd->add_option("--indicators", c_indicators, "Indicator table JSON (default: bundled)");
  corpus_cmd->add_option("--grades", c_grades, "Grade mapping JSON (default: bundled)");
  corpus_cmd->add_option("--out", c_out, "Output directory")->required();

  // run
  auto* run_cmd = cli.add_subcommand("run", "Run one level over a manifest");
  std::string r_level, r_manifest, r_config, r_out, r_judge, r_model;
  run_cmd->add_option("--level", r_level, "1a, 1b, 2 or 3")->required()->check(CLI::IsMember({"1a", "1b", "2", "3"}));
  run_cmd->add_option("--manifest", r_manifest, "Manifest CSV")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--config", r_config, "Run config file");
  run_cmd->add_option("--out", r_out, "Output directory (default: run.output_dir/level-<L>)");
  run_cmd->add_option("--judge", r_judge, "Override judge mode: remote, mock or mock-fixed")
      ->check(CLI::IsMember({"remote", "mock", "mock-fixed"}));
  run_cmd->add_option("--model", r_model, "Override the model id");

  CLI11_PARSE(cli, argc, argv);

  auto logger = spdlog::stderr_color_mt("wmeval");
  spdlog::set_default_logger(logger);
  spdlog::set_level(verbose ? spdlog::level::debug : spdlog::level::info);

  try {
    if (*perturb_cmd) {
      if (p_kind.empty() && p_task.empty()) throw SpecError("give --kind or --task");
      const auto layout = JointLayout::gr1({p_wrist_left[0], p_wrist_left[1]}, {p_wrist_right[0], p_wrist_right[1]});
      const auto traj = io::load_action_jsonl(p_in);
      if (!p_kind.empty()) {
        const perturb::PerturbationSpec spec(perturbation_kind_from_string(p_kind), p_severity);
        io::save_action_jsonl(p_out, perturb::apply_perturbation(traj, spec, layout));
        return kOk;
      }
      const auto schedule = p_schedule.empty() ? perturb::TaskSchedule::builtin() : perturb::TaskSchedule::load(p_schedule);
      fs::create_directories(p_out);
      for (auto kind : schedule.schedule_for(p_task)) {
        const perturb::PerturbationSpec spec(kind, p_severity);
        io::save_action_jsonl(fs::path(p_out) / (std::string(to_string(kind)) + ".jsonl"),
                              perturb::apply_perturbation(traj, spec, layout));
      }
      return kOk;
    }

    if (*phys_cmd) {
      int vqs_score = ph_vqs;
      bool has_motion = !ph_no_motion;
      if (!ph_vqs_json.empty()) {
        std::ifstream in(ph_vqs_json);
        const std::string reply{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
        const auto verdict = judge::parse_verdict(judge::VerdictKind::VqsJson, reply);
        if (verdict.discarded()) throw ParseError("unparseable VQS reply in " + ph_vqs_json);
        vqs_score = judge::vqs(verdict.vqs()->video_ok, verdict.vqs()->has_motion);
        has_motion = verdict.vqs()->has_motion;
      }
      const auto report = kin::evaluate(io::load_centroid_csv(ph_traj), vqs_score, has_motion);
      emit_json(kin::to_json(report), ph_out);
      return kOk;
    }

    if (*oracle_cmd) {
      if (*o_gen) {
        io::save_centroid_csv(o_out, oracle::gen_ladder(oracle::level_from_string(o_level), o_seed, o_frames, o_fps));
      } else if (*o_shape_cmd) {
        io::save_centroid_csv(o_out, oracle::gen_accel_shape(oracle::shape_from_string(o_shape), o_seed, o_frames, o_fps));
      } else if (*o_bounce) {
        io::save_centroid_csv(o_out, oracle::gen_bounce(o_h1, o_ratio, o_bounce_frames, o_fps));
      } else {
        app::OracleSuiteOptions opt;
        opt.seed = o_seed;
        opt.sweep = o_sweep;
        const auto results = app::run_oracle_suite(opt);
        if (o_json) {
          std::cout << app::to_json(results).dump(2) << '\n';
        } else {
          std::cout << app::format_table(results);
        }
        for (const auto& r : results) {
          if (!r.passed) return kFailed;
        }
      }
      return kOk;
    }

    if (*judge_cmd) {
      const auto cfg = config_from(j_config);
      const auto prompts = judge::PromptLibrary::load(cfg.asset_dir);
      auto judge = app::make_judge(cfg);
      judge::PipelineOptions opt = cfg.pipeline;
      opt.parallelism = cfg.endpoint.parallelism;
      const auto frames = judge::list_frames(j_frames);
      json out;
      if (j_pipeline == "pcs") {
        out = judge::to_json(judge::run_pcs(frames, *judge, prompts, opt));
      } else if (j_pipeline == "vqs") {
        out = judge::to_json(judge::run_vqs(frames, *judge, prompts, opt));
      } else if (j_pipeline == "tcr") {
        out = judge::to_json(judge::run_tcr(frames, j_instruction, *judge, prompts, opt));
      } else if (j_pipeline == "ops") {
        if (j_gt.empty()) throw ConfigError("ops needs --gt-frames");
        out = judge::to_json(judge::run_ops(frames, judge::list_frames(j_gt), j_instruction, *judge, prompts, opt));
      } else {
        if (j_baseline.empty()) throw ConfigError("bias needs --baseline-frames");
        out = judge::to_json(judge::run_bias(judge::list_frames(j_baseline), frames, j_lenient || cfg.text_conditioned,
                                             *judge, prompts, opt));
      }
      emit_json(out, j_out);
      return kOk;
    }

    if (*metrics_cmd) {
      json out;
      if (*m_pa) {
        const auto d = parse_numbers(m_values);
        out = {{"physical_adherence", metrics::physical_adherence(d)}, {"n", d.size()}};
      } else if (*m_ob) {
        const auto r = metrics::optimism_bias(parse_flags(m_values));
        out = {{"ob", r.ob}, {"preservation", r.preservation}, {"n", r.n}};
      } else if (*m_rate) {
        const auto f = parse_flags(m_values);
        out = {{"rate", metrics::rate(f)}, {"n", f.size()}};
      } else if (*m_gen) {
        out = {{"gen", metrics::gen_score(m_tcr_id, m_tcr_ood)}, {"delta", m_tcr_id - m_tcr_ood}};
      } else {
        std::vector<metrics::ModelReport> parts;
        for (const auto& path : m_reports) {
          std::ifstream in(path);
          parts.push_back(metrics::report_from_json(json::parse(in)));
        }
        metrics::write_report(metrics::combine(parts), m_out);
        return kOk;
      }
      std::cout << out.dump(2) << '\n';
      return kOk;
    }

    if (*corpus_cmd) {
      const fs::path config_dir = WMEVAL_CONFIG_DIR;
      const auto table = corpus::IndicatorTable::load(c_indicators.empty() ? config_dir / "indicators.json" : fs::path(c_indicators));
      const auto grades = GradeMapping::load(c_grades.empty() ? config_dir / "grade_mapping.json" : fs::path(c_grades));
      const auto corp = corpus::load_corpus(c_root, table.level_aliases());
      const fs::path out = c_out;
      fs::create_directories(out);
      corpus::write_dropped(corp.dropped, out / "dropped.json");
      std::vector<std::string> pc;
      for (const auto& id : table.order()) {
        if (table.at(id).level == corpus::AnnotationLevel::PhysConsistency) pc.push_back(id);
      }
      write_text(out / "severe_rates.csv", corpus::severe_table_csv(corp.records, pc, table, grades));
      write_text(out / "bias_summary.csv", corpus::bias_table_csv(corpus::bias_summary(corp.records, table)));
      json dist = json::object();
      for (const auto& id : table.order()) {
        const auto lvl = table.at(id).level;
        if (lvl != corpus::AnnotationLevel::PhysConsistency && lvl != corpus::AnnotationLevel::PhysLaw) continue;
        const auto c = corpus::grade_distribution(corp.records, id, table, grades);
        dist[id] = {{"A", c[Tier::A]}, {"B", c[Tier::B]}, {"C", c[Tier::C]}, {"D", c[Tier::D]}, {"NA", c[Tier::NA]}, {"missing", c.missing}};
      }
      write_text(out / "grade_distribution.json", dist.dump(2) + "\n");
      spdlog::info("{} records, {} dropped", corp.records.size(), corp.dropped.size());
      return kOk;
    }

    if (*run_cmd) {
      auto cfg = config_from(r_config);
      if (r_judge == "remote") cfg.judge_mode = app::JudgeMode::Remote;
      if (r_judge == "mock") cfg.judge_mode = app::JudgeMode::MockHashed;
      if (r_judge == "mock-fixed") cfg.judge_mode = app::JudgeMode::MockFixed;
      if (!r_model.empty()) cfg.model_id = r_model;
      const auto level = app::run_level_from_string(r_level);
      const fs::path out = r_out.empty() ? cfg.output_dir / ("level-" + r_level) : fs::path(r_out);
      if (!r_out.empty()) cfg.output_dir = out;
      const auto prompts = judge::PromptLibrary::load(cfg.asset_dir);
      auto judge = app::make_judge(cfg);
      const auto run = app::run_level(level, app::load_manifest(r_manifest), cfg, *judge, prompts);
      app::write_run(run, out);
      spdlog::info("level {}: {} scored, {} skipped -> {}", r_level, run.n_ok(), run.n_skipped(), out.string());
      if (run.n_ok() == 0) {
        std::cerr << json{{"error", "no_episodes"}, {"message", "every episode was skipped"}, {"summary", run.summary_json()}}.dump()
                  << '\n';
        return kFailed;
      }
      return kOk;
    }
  } catch (const TransportError& e) {
    std::cerr << json{{"error", "transport"}, {"message", e.what()}}.dump() << '\n';
    return kRemote;
  } catch (const EndpointError& e) {
    std::cerr << json{{"error", "endpoint"}, {"message", e.what()}}.dump() << '\n';
    return kRemote;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "failed"}, {"message", e.what()}}.dump() << '\n';
    return kUsage;
  }
  return kOk;
}
