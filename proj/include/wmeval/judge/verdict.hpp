#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace wmeval::judge {

enum class VerdictKind { AB, Binary01, SameDifferent, VqsJson };

enum class AB { A, B };
enum class Comparison { Same, Different };

struct VqsPayload {
  bool video_ok = false;
  bool has_motion = false;
  std::string reason;
  friend bool operator==(const VqsPayload&, const VqsPayload&) = default;
};

/// One parsed judge reply. A reply that does not parse carries no value and
/// is a discard; it never defaults to a vote.
struct JudgeVerdict {
  using Value = std::variant<std::monostate, AB, int, Comparison, VqsPayload>;

  VerdictKind kind = VerdictKind::AB;
  Value value;
  std::string raw;

  bool discarded() const { return std::holds_alternative<std::monostate>(value); }
  std::optional<AB> ab() const;
  std::optional<int> binary() const;
  std::optional<Comparison> comparison() const;
  std::optional<VqsPayload> vqs() const;
};

std::string_view to_string(VerdictKind kind);
VerdictKind verdict_kind_from_string(std::string_view text);

/// First whitespace-delimited token, lower-cased, with punctuation stripped
/// from both ends.
std::string first_token(std::string_view text);

/// First balanced {...} object in the text, or empty.
std::string first_json_object(std::string_view text);

JudgeVerdict parse_verdict(VerdictKind kind, std::string_view reply);

}  // namespace wmeval::judge
