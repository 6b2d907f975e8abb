#pragma once

#include "wmeval/judge/prompts.hpp"
#include "wmeval/judge/verdict.hpp"

#include "json.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wmeval::judge {

/// One judge call: composite images (base64 PNG, in order) plus a rendered
/// prompt. Decoding is always greedy (temperature 0).
struct JudgeRequest {
  PromptId prompt = PromptId::ObjectConsistency;
  std::string text;
  std::vector<std::string> images_png_b64;

  VerdictKind expected() const { return expected_kind(prompt); }
};

struct EndpointConfig {
  std::string base_url = "http://127.0.0.1:8000";
  std::string path = "/v1/chat/completions";
  std::string model = "judge";
  /// Bearer token; the variable named by token_env overrides it when set.
  std::string token;
  std::string token_env = "WMEVAL_JUDGE_TOKEN";
  double timeout_s = 120;
  int retry_cap = 3;
  double backoff_initial_s = 1.0;
  double backoff_max_s = 30.0;
  int parallelism = 4;
};

class Judge {
 public:
  virtual ~Judge() = default;
  /// Raw reply text. Must be safe to call from several threads at once.
  virtual std::string complete(const JudgeRequest& req) = 0;

  JudgeVerdict ask(const JudgeRequest& req) { return parse_verdict(req.expected(), complete(req)); }
};

/// Chat-completions request body.
nlohmann::json build_chat_body(const JudgeRequest& req, const std::string& model);

/// choices[0].message.content, accepting string or text-part array content.
std::string extract_reply(const nlohmann::json& response);

class RemoteJudge final : public Judge {
 public:
  using Sleeper = std::function<void(std::chrono::duration<double>)>;

  explicit RemoteJudge(EndpointConfig config, Sleeper sleeper = {});
  std::string complete(const JudgeRequest& req) override;

  const EndpointConfig& config() const { return config_; }
  /// Attempts used by the most recent call on this thread pool (diagnostic).
  int attempts_made() const { return last_attempts_.load(); }

 private:
  EndpointConfig config_;
  Sleeper sleep_;
  std::string token_;
  std::atomic<int> last_attempts_{0};
};

/// Deterministic offline judge.
class MockJudge final : public Judge {
 public:
  using Responder = std::function<std::string(const JudgeRequest&)>;

  explicit MockJudge(Responder responder) : respond_(std::move(responder)) {}

  /// Always the same reply.
  static MockJudge fixed(std::string reply);
  /// Reply chosen by a hash of the request, valid for its expected kind.
  static MockJudge hashed(std::uint64_t salt = 0);

  std::string complete(const JudgeRequest& req) override { return respond_(req); }

 private:
  Responder respond_;
};

/// FNV-1a over the prompt id, text and images.
std::uint64_t request_hash(const JudgeRequest& req, std::uint64_t salt = 0);

/// Sends `req` and parses the reply per its expected kind.
JudgeVerdict call_judge(const JudgeRequest& req, Judge& judge);

}  // namespace wmeval::judge
