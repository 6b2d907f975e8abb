#pragma once

#include "json.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wmeval::corpus {

enum class AnnotationLevel { PhysConsistency, PhysLaw, ActionFollowing, OptimismBias };

std::string_view to_string(AnnotationLevel level);
/// Accepts the canonical names plus the directory aliases listed in the
/// indicator table.
AnnotationLevel level_from_string(std::string_view text);

struct AnnotationItem {
  std::string id;
  std::string title;
  std::vector<std::string> options;
  friend bool operator==(const AnnotationItem&, const AnnotationItem&) = default;
};

struct AnnotationRecord {
  AnnotationLevel level = AnnotationLevel::PhysConsistency;
  std::string subset;
  std::string video_id;
  std::vector<AnnotationItem> items;
  /// item id -> chosen option. Multi-select answers are joined with '|'.
  std::map<std::string, std::string> answers;

  const AnnotationItem* item(std::string_view id) const;
  std::optional<std::string> answer(std::string_view item_id) const;
};

/// A file that parsed but is not analysable (empty question dictionary, or
/// answers for item ids outside the item list).
struct Rejection {
  std::string source;
  std::string reason;
};

struct ParsedAnnotation {
  std::optional<AnnotationRecord> record;
  std::optional<Rejection> rejection;
};

/// Parses `markData.videoQuality.{items[], question{}}`. Throws ParseError
/// naming `source` and the JSON path for malformed input.
ParsedAnnotation parse_annotation(std::string_view bytes, AnnotationLevel level,
                                  std::string subset, std::string video_id,
                                  std::string_view source = "<memory>");

/// Inverse of parse_annotation for accepted records.
nlohmann::json to_json(const AnnotationRecord& record);

struct Corpus {
  std::vector<AnnotationRecord> records;
  std::vector<Rejection> dropped;
};

/// Walks `<root>/<level>/<subset>/<id>.json`; other files are ignored.
/// Level directories are resolved through `level_aliases` (directory name ->
/// level); unknown level directories are skipped with a warning.
Corpus load_corpus(const std::filesystem::path& root,
                   const std::map<std::string, AnnotationLevel>& level_aliases);

/// Writes the dropped-file list as JSON.
void write_dropped(const std::vector<Rejection>& dropped, const std::filesystem::path& path);

}  // namespace wmeval::corpus
