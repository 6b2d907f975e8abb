#pragma once

#include "wmeval/judge/verdict.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace wmeval::judge {

enum class PromptId {
  ObjectConsistency,
  OcclusionConsistency,
  PhysLawVqs,
  TaskCompletion,
  ObjectPreservation,
  BiasStandard,
  BiasLenient,
};

inline constexpr std::array<PromptId, 7> kAllPrompts{
    PromptId::ObjectConsistency, PromptId::OcclusionConsistency, PromptId::PhysLawVqs,
    PromptId::TaskCompletion,    PromptId::ObjectPreservation,   PromptId::BiasStandard,
    PromptId::BiasLenient};

std::string_view to_string(PromptId id);
PromptId prompt_from_string(std::string_view text);
std::string_view prompt_file(PromptId id);
VerdictKind expected_kind(PromptId id);

/// Prompt templates loaded from `<asset_dir>/prompts`. Templates take
/// `{name}` placeholders; JSON braces in the text are left alone.
class PromptLibrary {
 public:
  static PromptLibrary load(const std::filesystem::path& asset_dir);

  const std::string& text(PromptId id) const;
  const std::string& version() const { return version_; }

  /// Substitutes every `{key}`. Throws ConfigError when a template still
  /// needs `{instruction}` and none was supplied.
  std::string render(PromptId id, const std::map<std::string, std::string>& subs = {}) const;

 private:
  std::map<PromptId, std::string> texts_;
  std::string version_;
};

}  // namespace wmeval::judge
