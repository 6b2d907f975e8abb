#include "wmeval/corpus/annotation.hpp"

#include "wmeval/core/errors.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace wmeval::corpus {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(AnnotationLevel level) {
  switch (level) {
    case AnnotationLevel::PhysConsistency: return "phys_consistency";
    case AnnotationLevel::PhysLaw: return "phys_law";
    case AnnotationLevel::ActionFollowing: return "action_following";
    case AnnotationLevel::OptimismBias: return "optimism_bias";
  }
  return "phys_consistency";
}

AnnotationLevel level_from_string(std::string_view text) {
  for (auto level : {AnnotationLevel::PhysConsistency, AnnotationLevel::PhysLaw,
                     AnnotationLevel::ActionFollowing, AnnotationLevel::OptimismBias}) {
    if (to_string(level) == text) return level;
  }
  throw ConfigError("unknown annotation level '" + std::string(text) + "'");
}

const AnnotationItem* AnnotationRecord::item(std::string_view id) const {
  for (const auto& it : items) {
    if (it.id == id) return &it;
  }
  return nullptr;
}

std::optional<std::string> AnnotationRecord::answer(std::string_view item_id) const {
  if (auto it = answers.find(std::string(item_id)); it != answers.end()) return it->second;
  return std::nullopt;
}

namespace {

[[noreturn]] void fail(std::string_view source, std::string_view path, std::string_view what) {
  throw ParseError(std::string(source) + ": " + std::string(path) + ": " + std::string(what));
}

std::string scalar_text(const json& v, std::string_view source, const std::string& path) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return v.dump();
  fail(source, path, "expected a string or number");
}

std::string option_text(const json& v, std::string_view source, const std::string& path) {
  if (v.is_object()) {
    for (const char* key : {"text", "label", "value", "title"}) {
      if (auto it = v.find(key); it != v.end() && !it->is_null()) {
        return scalar_text(*it, source, path + "/" + key);
      }
    }
    fail(source, path, "option object has no text");
  }
  return scalar_text(v, source, path);
}

}  // namespace

ParsedAnnotation parse_annotation(std::string_view bytes, AnnotationLevel level,
                                  std::string subset, std::string video_id,
                                  std::string_view source) {
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    fail(source, "", e.what());
  }
  if (!doc.is_object() || !doc.contains("markData")) fail(source, "/markData", "missing");
  const auto& mark = doc.at("markData");
  if (!mark.is_object() || !mark.contains("videoQuality")) {
    fail(source, "/markData/videoQuality", "missing");
  }
  const auto& vq = mark.at("videoQuality");
  if (!vq.is_object() || !vq.contains("items")) fail(source, "/markData/videoQuality/items", "missing");
  const auto& items = vq.at("items");
  if (!items.is_array()) fail(source, "/markData/videoQuality/items", "expected an array");

  AnnotationRecord rec;
  rec.level = level;
  rec.subset = std::move(subset);
  rec.video_id = std::move(video_id);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string path = "/markData/videoQuality/items/" + std::to_string(i);
    const auto& it = items[i];
    if (!it.is_object() || !it.contains("id")) fail(source, path + "/id", "missing");
    AnnotationItem item;
    item.id = scalar_text(it.at("id"), source, path + "/id");
    if (auto t = it.find("title"); t != it.end() && t->is_string()) item.title = t->get<std::string>();
    if (auto opts = it.find("options"); opts != it.end() && !opts->is_null()) {
      if (!opts->is_array()) fail(source, path + "/options", "expected an array");
      for (std::size_t k = 0; k < opts->size(); ++k) {
        item.options.push_back(
            option_text((*opts)[k], source, path + "/options/" + std::to_string(k)));
      }
    }
    if (!ids.insert(item.id).second) fail(source, path + "/id", "duplicate item id " + item.id);
    rec.items.push_back(std::move(item));
  }

  ParsedAnnotation out;
  const auto q = vq.find("question");
  if (q == vq.end() || q->is_null() || (q->is_object() && q->empty())) {
    out.rejection = Rejection{std::string(source), "empty question dictionary"};
    return out;
  }
  if (!q->is_object()) fail(source, "/markData/videoQuality/question", "expected an object");
  for (const auto& [id, value] : q->items()) {
    const std::string path = "/markData/videoQuality/question/" + id;
    std::string answer;
    if (value.is_array()) {
      for (std::size_t k = 0; k < value.size(); ++k) {
        if (k) answer += '|';
        answer += option_text(value[k], source, path + "/" + std::to_string(k));
      }
    } else if (value.is_null()) {
      continue;
    } else {
      answer = option_text(value, source, path);
    }
    if (!ids.count(id)) {
      out.rejection = Rejection{std::string(source), "answer for unknown item id " + id};
      return out;
    }
    rec.answers.emplace(id, std::move(answer));
  }
  out.record = std::move(rec);
  return out;
}

json to_json(const AnnotationRecord& rec) {
  json items = json::array();
  for (const auto& it : rec.items) {
    items.push_back({{"id", it.id}, {"title", it.title}, {"options", it.options}});
  }
  json question = json::object();
  for (const auto& [id, answer] : rec.answers) question[id] = answer;
  return {{"markData", {{"videoQuality", {{"items", items}, {"question", question}}}}}};
}

Corpus load_corpus(const fs::path& root,
                   const std::map<std::string, AnnotationLevel>& level_aliases) {
  if (!fs::is_directory(root)) throw ParseError("corpus root not found: " + root.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  Corpus corpus;
  std::set<std::string> unknown;
  for (const auto& file : files) {
    const auto rel = fs::relative(file, root);
    std::vector<std::string> parts;
    for (const auto& p : rel) parts.push_back(p.string());
    if (parts.size() != 3) continue;
    const auto alias = level_aliases.find(parts[0]);
    if (alias == level_aliases.end()) {
      if (unknown.insert(parts[0]).second) {
        spdlog::warn("skipping unknown level directory '{}'", parts[0]);
      }
      continue;
    }
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ParseError("cannot read " + file.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    auto parsed = parse_annotation(ss.str(), alias->second, parts[1], file.stem().string(),
                                   rel.generic_string());
    if (parsed.record) {
      corpus.records.push_back(std::move(*parsed.record));
    } else {
      corpus.dropped.push_back(std::move(*parsed.rejection));
    }
  }
  return corpus;
}

void write_dropped(const std::vector<Rejection>& dropped, const fs::path& path) {
  json arr = json::array();
  for (const auto& d : dropped) arr.push_back({{"path", d.source}, {"reason", d.reason}});
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << arr.dump(2) << '\n';
}

}  // namespace wmeval::corpus
