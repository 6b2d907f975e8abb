#include "wmeval/corpus/analysis.hpp"

#include "wmeval/core/errors.hpp"
#include "wmeval/metrics/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <numeric>

namespace wmeval::corpus {

IndicatorTable IndicatorTable::from_json(const nlohmann::json& j) {
  IndicatorTable t;
  try {
    if (j.contains("version")) t.version_ = j.at("version").dump();
    for (const auto& [alias, level] : j.at("levels").items()) {
      t.aliases_.emplace(alias, level_from_string(level.get<std::string>()));
    }
    for (const auto& entry : j.at("indicators")) {
      const auto id = entry.at("id").get<std::string>();
      IndicatorRef ref{level_from_string(entry.at("level").get<std::string>()),
                       entry.at("item").is_string() ? entry.at("item").get<std::string>()
                                                    : entry.at("item").dump()};
      if (!t.refs_.emplace(id, std::move(ref)).second) {
        throw ConfigError("duplicate indicator " + id);
      }
      t.order_.push_back(id);
    }
    if (auto p = j.find("model_pattern"); p != j.end() && p->is_string()) {
      t.model_pattern_.emplace(p->get<std::string>());
    }
    if (auto b = j.find("bias"); b != j.end()) {
      t.ma9 = b->value("ma9", t.ma9);
      t.mb9 = b->value("mb9", t.mb9);
      t.ma1 = b->value("ma1", t.ma1);
      t.ma9_bias_options = b->value("ma9_bias_options", t.ma9_bias_options);
      t.mb9_yes_options = b->value("mb9_yes_options", t.mb9_yes_options);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("indicator table: ") + e.what());
  } catch (const std::regex_error& e) {
    throw ConfigError(std::string("indicator table model_pattern: ") + e.what());
  }
  return t;
}

IndicatorTable IndicatorTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open indicator table " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("indicator table " + path.string() + ": " + e.what());
  }
}

const IndicatorRef& IndicatorTable::at(std::string_view indicator) const {
  const auto it = refs_.find(indicator);
  if (it == refs_.end()) throw ConfigError("unknown indicator '" + std::string(indicator) + "'");
  return it->second;
}

std::string IndicatorTable::model_of(const AnnotationRecord& rec) const {
  if (!model_pattern_) return rec.subset;
  const std::string key = rec.subset + "/" + rec.video_id;
  std::smatch m;
  if (std::regex_search(key, m, *model_pattern_) && m.size() > 1) return m[1].str();
  return rec.subset;
}

namespace {

std::string leading_token(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  std::size_t j = i;
  while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '.' &&
         s[j] != ')' && s[j] != '(' && s[j] != ':') {
    ++j;
  }
  std::string tok = s.substr(i, j - i);
  for (auto& c : tok) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return tok;
}

bool matches(const std::string& answer, const std::vector<std::string>& options) {
  const auto tok = leading_token(answer);
  for (const auto& o : options) {
    if (answer == o || tok == o) return true;
  }
  return false;
}

std::optional<int> leading_int(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  int v = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) v = v * 10 + (s[i++] - '0');
  if (v < 1 || v > 5) return std::nullopt;
  return v;
}

template <typename Fn>
void for_answers(const std::vector<AnnotationRecord>& records, const IndicatorRef& ref, Fn&& fn) {
  for (const auto& rec : records) {
    if (rec.level != ref.level) continue;
    fn(rec, rec.answer(ref.item_id));
  }
}

std::string fmt1(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", metrics::round1(*v));
  return buf;
}

}  // namespace

Tier answer_tier(const std::string& option, const GradeMapping& mapping) {
  if (const auto t = mapping.lookup(option)) return *t;
  const auto tok = leading_token(option);
  for (auto tier : {Tier::A, Tier::B, Tier::C, Tier::D, Tier::NA}) {
    if (tok == to_string(tier)) return tier;
  }
  if (tok == "N/A") return Tier::NA;
  return grade_from_option(option, mapping).tier;
}

SevereRate severe_rate(const std::vector<AnnotationRecord>& records, std::string_view indicator,
                       const IndicatorTable& table, const GradeMapping& mapping) {
  SevereRate r;
  for_answers(records, table.at(indicator), [&](const AnnotationRecord&, const auto& answer) {
    if (!answer) return;
    const Grade g = Grade::of(answer_tier(*answer, mapping));
    if (g.tier == Tier::NA) return;
    ++r.n;
    if (g.severe()) ++r.severe;
  });
  if (r.n > 0) r.rate = metrics::rate(r.severe, r.n);
  return r;
}

std::size_t GradeCounts::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

GradeCounts grade_distribution(const std::vector<AnnotationRecord>& records,
                               std::string_view indicator, const IndicatorTable& table,
                               const GradeMapping& mapping) {
  GradeCounts c;
  for_answers(records, table.at(indicator), [&](const AnnotationRecord&, const auto& answer) {
    if (!answer) {
      ++c.missing;
      return;
    }
    ++c.counts[static_cast<std::size_t>(answer_tier(*answer, mapping))];
  });
  return c;
}

std::map<std::string, std::vector<AnnotationRecord>> by_model(
    const std::vector<AnnotationRecord>& records, const IndicatorTable& table) {
  std::map<std::string, std::vector<AnnotationRecord>> out;
  for (const auto& rec : records) out[table.model_of(rec)].push_back(rec);
  return out;
}

std::map<std::string, BiasSummary> bias_summary(const std::vector<AnnotationRecord>& records,
                                                const IndicatorTable& table) {
  const auto& ma9 = table.at(table.ma9);
  const auto& mb9 = table.at(table.mb9);
  const auto& ma1 = table.at(table.ma1);
  std::map<std::string, BiasSummary> out;
  for (const auto& [model, recs] : by_model(records, table)) {
    std::size_t bias = 0, yes = 0;
    double ma1_sum = 0;
    BiasSummary s;
    for_answers(recs, ma9, [&](const AnnotationRecord&, const auto& a) {
      if (!a) return;
      ++s.n_ma9;
      if (matches(*a, table.ma9_bias_options)) ++bias;
    });
    for_answers(recs, mb9, [&](const AnnotationRecord&, const auto& a) {
      if (!a) return;
      ++s.n_mb9;
      if (matches(*a, table.mb9_yes_options)) ++yes;
    });
    for_answers(recs, ma1, [&](const AnnotationRecord&, const auto& a) {
      if (!a) return;
      if (const auto v = leading_int(*a)) {
        ++s.n_ma1;
        ma1_sum += *v;
      }
    });
    if (s.n_ma9 == 0 && s.n_mb9 == 0 && s.n_ma1 == 0) continue;
    if (s.n_ma9) s.ma9_bias_rate = metrics::rate(bias, s.n_ma9);
    if (s.n_mb9) s.mb9_false_success_rate = metrics::rate(yes, s.n_mb9);
    if (s.n_ma1) s.ma1_mean = ma1_sum / static_cast<double>(s.n_ma1);
    out.emplace(model, s);
  }
  return out;
}

std::string severe_table_csv(const std::vector<AnnotationRecord>& records,
                             const std::vector<std::string>& indicators,
                             const IndicatorTable& table, const GradeMapping& mapping) {
  std::string out = "Model";
  for (const auto& ind : indicators) out += "," + ind;
  out += "\n";
  for (const auto& [model, recs] : by_model(records, table)) {
    std::string row = model;
    bool any = false;
    for (const auto& ind : indicators) {
      const auto r = severe_rate(recs, ind, table, mapping);
      any = any || r.rate.has_value();
      row += "," + fmt1(r.rate);
    }
    if (any) out += row + "\n";
  }
  return out;
}

std::string bias_table_csv(const std::map<std::string, BiasSummary>& summary) {
  std::string out = "Model,OptBias,FalseSuccess,VisQual,n\n";
  for (const auto& [model, s] : summary) {
    char mean[32] = "";
    if (s.ma1_mean) std::snprintf(mean, sizeof mean, "%.2f", *s.ma1_mean);
    out += model + "," + fmt1(s.ma9_bias_rate) + "," + fmt1(s.mb9_false_success_rate) + "," +
           mean + "," + std::to_string(s.n_ma9) + "\n";
  }
  return out;
}

}  // namespace wmeval::corpus
