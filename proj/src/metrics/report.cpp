#include "wmeval/metrics/report.hpp"

#include "wmeval/core/errors.hpp"
#include "wmeval/metrics/metrics.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace wmeval::metrics {

namespace {

void check_range(const char* name, const MetricValue& m) {
  if (m.value && !(*m.value >= 0.0 && *m.value <= 100.0)) {
    throw MetricError(std::string(name) + " outside [0, 100]");
  }
}

nlohmann::json metric_json(const MetricValue& m) {
  return {{"value", m.value ? nlohmann::json(*m.value) : nlohmann::json(nullptr)},
          {"n", m.n},
          {"excluded", m.excluded}};
}

std::string cell(const MetricValue& m) {
  if (!m.value) return "";
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.1f", round1(*m.value));
  return buf.data();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void validate(const ModelReport& r) {
  check_range("obj", r.obj);
  check_range("occ", r.occ);
  check_range("phys_law", r.phys_law);
  check_range("tcr", r.tcr);
  check_range("tcr_ood", r.tcr_ood);
  check_range("ops", r.ops);
  check_range("gen", r.gen);
  check_range("ob", r.ob);
  check_range("bias_resistance", r.bias_resistance);
  for (const auto& [kind, m] : r.ob_by_kind) check_range("ob_by_kind", m);
  if (r.ob.value.has_value() != r.bias_resistance.value.has_value() ||
      (r.ob.value && *r.bias_resistance.value != 100.0 - *r.ob.value)) {
    throw MetricError("bias resistance must equal 100 - ob");
  }
}

nlohmann::json to_json(const ModelReport& r) {
  nlohmann::json by_kind = nlohmann::json::object();
  for (const auto& [kind, m] : r.ob_by_kind) by_kind[std::string(to_string(kind))] = metric_json(m);
  return {{"model_id", r.model_id},
          {"level1", {{"obj", metric_json(r.obj)},
                      {"occ", metric_json(r.occ)},
                      {"phys_law", metric_json(r.phys_law)}}},
          {"level2", {{"tcr", metric_json(r.tcr)},
                      {"tcr_ood", metric_json(r.tcr_ood)},
                      {"ops", metric_json(r.ops)},
                      {"gen", metric_json(r.gen)}}},
          {"level3", {{"ob", metric_json(r.ob)},
                      {"bias_resistance", metric_json(r.bias_resistance)},
                      {"ob_by_kind", by_kind}}}};
}

namespace {

MetricValue metric_from(const nlohmann::json& j) {
  MetricValue m;
  if (!j.at("value").is_null()) m.value = j.at("value").get<double>();
  m.n = j.at("n").get<std::size_t>();
  m.excluded = j.at("excluded").get<std::size_t>();
  return m;
}

void merge_into(MetricValue& dst, const MetricValue& src, const char* name) {
  if (!src.value && src.n == 0 && src.excluded == 0) return;
  if (dst.value || dst.n || dst.excluded) throw MetricError(std::string("metric ") + name + " reported twice");
  dst = src;
}

}  // namespace

ModelReport report_from_json(const nlohmann::json& j) {
  ModelReport r;
  try {
    r.model_id = j.at("model_id").get<std::string>();
    const auto& l1 = j.at("level1");
    const auto& l2 = j.at("level2");
    const auto& l3 = j.at("level3");
    r.obj = metric_from(l1.at("obj"));
    r.occ = metric_from(l1.at("occ"));
    r.phys_law = metric_from(l1.at("phys_law"));
    r.tcr = metric_from(l2.at("tcr"));
    r.tcr_ood = metric_from(l2.at("tcr_ood"));
    r.ops = metric_from(l2.at("ops"));
    r.gen = metric_from(l2.at("gen"));
    r.ob = metric_from(l3.at("ob"));
    r.bias_resistance = metric_from(l3.at("bias_resistance"));
    for (const auto& [kind, m] : l3.at("ob_by_kind").items()) {
      r.ob_by_kind.emplace(perturbation_kind_from_string(kind), metric_from(m));
    }
  } catch (const nlohmann::json::exception& e) {
    throw MetricError(std::string("malformed model report: ") + e.what());
  }
  validate(r);
  return r;
}

ModelReport combine(const std::vector<ModelReport>& parts) {
  if (parts.empty()) throw MetricError("nothing to combine");
  ModelReport out;
  out.model_id = parts.front().model_id;
  for (const auto& p : parts) {
    if (p.model_id != out.model_id) throw MetricError("cannot combine reports of different models");
    merge_into(out.obj, p.obj, "obj");
    merge_into(out.occ, p.occ, "occ");
    merge_into(out.phys_law, p.phys_law, "phys_law");
    merge_into(out.tcr, p.tcr, "tcr");
    merge_into(out.tcr_ood, p.tcr_ood, "tcr_ood");
    merge_into(out.ops, p.ops, "ops");
    merge_into(out.gen, p.gen, "gen");
    merge_into(out.ob, p.ob, "ob");
    merge_into(out.bias_resistance, p.bias_resistance, "bias_resistance");
    for (const auto& [kind, m] : p.ob_by_kind) {
      if (!out.ob_by_kind.emplace(kind, m).second) throw MetricError("ob_by_kind reported twice");
    }
  }
  validate(out);
  return out;
}

std::string csv_header() { return "Model,Obj,Occ,Rule,TCR,OPS,Gen,BiasRes"; }

std::string csv_row(const ModelReport& r) {
  return csv_escape(r.model_id) + "," + cell(r.obj) + "," + cell(r.occ) + "," +
         cell(r.phys_law) + "," + cell(r.tcr) + "," + cell(r.ops) + "," + cell(r.gen) + "," +
         cell(r.bias_resistance);
}

void write_report(const ModelReport& r, const std::filesystem::path& dir) {
  validate(r);
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json", std::ios::binary);
    if (!out) throw MetricError("cannot write " + (dir / "report.json").string());
    out << to_json(r).dump(2) << '\n';
  }
  std::ofstream out(dir / "report.csv", std::ios::binary);
  if (!out) throw MetricError("cannot write " + (dir / "report.csv").string());
  out << csv_header() << '\n' << csv_row(r) << '\n';
}

}  // namespace wmeval::metrics
