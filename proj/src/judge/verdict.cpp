#include "wmeval/judge/verdict.hpp"

#include "wmeval/core/errors.hpp"

#include "json.hpp"

#include <cctype>

namespace wmeval::judge {

std::optional<AB> JudgeVerdict::ab() const {
  if (const auto* v = std::get_if<AB>(&value)) return *v;
  return std::nullopt;
}

std::optional<int> JudgeVerdict::binary() const {
  if (const auto* v = std::get_if<int>(&value)) return *v;
  return std::nullopt;
}

std::optional<Comparison> JudgeVerdict::comparison() const {
  if (const auto* v = std::get_if<Comparison>(&value)) return *v;
  return std::nullopt;
}

std::optional<VqsPayload> JudgeVerdict::vqs() const {
  if (const auto* v = std::get_if<VqsPayload>(&value)) return *v;
  return std::nullopt;
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::AB: return "ab";
    case VerdictKind::Binary01: return "binary01";
    case VerdictKind::SameDifferent: return "same-different";
    case VerdictKind::VqsJson: return "vqs-json";
  }
  return "ab";
}

VerdictKind verdict_kind_from_string(std::string_view text) {
  for (auto kind : {VerdictKind::AB, VerdictKind::Binary01, VerdictKind::SameDifferent,
                    VerdictKind::VqsJson}) {
    if (to_string(kind) == text) return kind;
  }
  throw ConfigError("unknown verdict kind '" + std::string(text) + "'");
}

std::string first_token(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t j = i;
  while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
  std::string_view token = text.substr(i, j - i);
  while (!token.empty() && std::ispunct(static_cast<unsigned char>(token.front()))) {
    token.remove_prefix(1);
  }
  while (!token.empty() && std::ispunct(static_cast<unsigned char>(token.back()))) {
    token.remove_suffix(1);
  }
  std::string out(token);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string first_json_object(std::string_view text) {
  const auto open = text.find('{');
  if (open == std::string_view::npos) return {};
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}' && --depth == 0) {
      return std::string(text.substr(open, i - open + 1));
    }
  }
  return {};
}

JudgeVerdict parse_verdict(VerdictKind kind, std::string_view reply) {
  JudgeVerdict v;
  v.kind = kind;
  v.raw = std::string(reply);
  if (kind == VerdictKind::VqsJson) {
    const auto object = first_json_object(reply);
    if (object.empty()) return v;
    const auto j = nlohmann::json::parse(object, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return v;
    const auto video_ok = j.find("video_ok");
    const auto has_motion = j.find("has_motion");
    if (video_ok == j.end() || has_motion == j.end() || !video_ok->is_boolean() ||
        !has_motion->is_boolean()) {
      return v;
    }
    VqsPayload payload{video_ok->get<bool>(), has_motion->get<bool>(), {}};
    if (const auto reason = j.find("reason"); reason != j.end() && reason->is_string()) {
      payload.reason = reason->get<std::string>();
    }
    v.value = payload;
    return v;
  }

  const auto token = first_token(reply);
  switch (kind) {
    case VerdictKind::AB:
      if (token == "a") v.value = AB::A;
      if (token == "b") v.value = AB::B;
      break;
    case VerdictKind::Binary01:
      if (token == "0") v.value = 0;
      if (token == "1") v.value = 1;
      break;
    case VerdictKind::SameDifferent:
      if (token == "same") v.value = Comparison::Same;
      if (token == "different") v.value = Comparison::Different;
      break;
    case VerdictKind::VqsJson: break;
  }
  return v;
}

}  // namespace wmeval::judge
