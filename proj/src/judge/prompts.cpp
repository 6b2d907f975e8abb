#include "wmeval/judge/prompts.hpp"

#include "wmeval/core/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace wmeval::judge {

std::string_view to_string(PromptId id) {
  switch (id) {
    case PromptId::ObjectConsistency: return "d1";
    case PromptId::OcclusionConsistency: return "d2";
    case PromptId::PhysLawVqs: return "vqs";
    case PromptId::TaskCompletion: return "tcr";
    case PromptId::ObjectPreservation: return "ops";
    case PromptId::BiasStandard: return "bias";
    case PromptId::BiasLenient: return "bias-lenient";
  }
  return "d1";
}

PromptId prompt_from_string(std::string_view text) {
  for (auto id : kAllPrompts) {
    if (to_string(id) == text) return id;
  }
  throw ConfigError("unknown prompt id '" + std::string(text) + "'");
}

std::string_view prompt_file(PromptId id) {
  switch (id) {
    case PromptId::ObjectConsistency: return "d1_object_consistency.txt";
    case PromptId::OcclusionConsistency: return "d2_occlusion_consistency.txt";
    case PromptId::PhysLawVqs: return "physlaw_vqs.txt";
    case PromptId::TaskCompletion: return "tcr.txt";
    case PromptId::ObjectPreservation: return "ops.txt";
    case PromptId::BiasStandard: return "bias_standard.txt";
    case PromptId::BiasLenient: return "bias_lenient.txt";
  }
  return "";
}

VerdictKind expected_kind(PromptId id) {
  switch (id) {
    case PromptId::ObjectConsistency:
    case PromptId::OcclusionConsistency: return VerdictKind::AB;
    case PromptId::PhysLawVqs: return VerdictKind::VqsJson;
    case PromptId::TaskCompletion:
    case PromptId::ObjectPreservation: return VerdictKind::Binary01;
    case PromptId::BiasStandard:
    case PromptId::BiasLenient: return VerdictKind::SameDifferent;
  }
  return VerdictKind::AB;
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read prompt asset " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

PromptLibrary PromptLibrary::load(const std::filesystem::path& asset_dir) {
  const auto dir = asset_dir / "prompts";
  PromptLibrary lib;
  for (auto id : kAllPrompts) lib.texts_.emplace(id, slurp(dir / prompt_file(id)));
  if (std::filesystem::exists(dir / "VERSION")) {
    lib.version_ = slurp(dir / "VERSION");
    while (!lib.version_.empty() && std::isspace(static_cast<unsigned char>(lib.version_.back()))) {
      lib.version_.pop_back();
    }
  }
  return lib;
}

const std::string& PromptLibrary::text(PromptId id) const {
  const auto it = texts_.find(id);
  if (it == texts_.end()) throw ConfigError("prompt not loaded: " + std::string(to_string(id)));
  return it->second;
}

std::string PromptLibrary::render(PromptId id,
                                  const std::map<std::string, std::string>& subs) const {
  std::string out = text(id);
  for (const auto& [key, value] : subs) {
    const std::string needle = "{" + key + "}";
    for (auto pos = out.find(needle); pos != std::string::npos;
         pos = out.find(needle, pos + value.size())) {
      out.replace(pos, needle.size(), value);
    }
  }
  if (out.find("{instruction}") != std::string::npos) {
    throw ConfigError("prompt '" + std::string(to_string(id)) + "' needs an instruction");
  }
  return out;
}

}  // namespace wmeval::judge
