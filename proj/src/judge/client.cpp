#include "wmeval/judge/client.hpp"

#include "wmeval/core/errors.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace wmeval::judge {

nlohmann::json build_chat_body(const JudgeRequest& req, const std::string& model) {
  nlohmann::json content = nlohmann::json::array();
  for (const auto& img : req.images_png_b64) {
    content.push_back({{"type", "image_url"},
                       {"image_url", {{"url", "data:image/png;base64," + img}}}});
  }
  content.push_back({{"type", "text"}, {"text", req.text}});
  return {{"model", model},
          {"temperature", 0},
          {"messages", nlohmann::json::array({{{"role", "user"}, {"content", content}}})}};
}

std::string extract_reply(const nlohmann::json& response) {
  try {
    const auto& content = response.at("choices").at(0).at("message").at("content");
    if (content.is_string()) return content.get<std::string>();
    if (content.is_array()) {
      std::string text;
      for (const auto& part : content) {
        if (part.value("type", "") == "text") text += part.value("text", "");
      }
      return text;
    }
  } catch (const nlohmann::json::exception& e) {
    throw EndpointError(std::string("malformed completion response: ") + e.what());
  }
  throw EndpointError("completion response has no text content");
}

RemoteJudge::RemoteJudge(EndpointConfig config, Sleeper sleeper)
    : config_(std::move(config)), sleep_(std::move(sleeper)) {
  if (config_.retry_cap < 0) throw ConfigError("retry cap must be >= 0");
  if (!(config_.timeout_s > 0)) throw ConfigError("timeout must be positive");
  if (!sleep_) sleep_ = [](std::chrono::duration<double> d) { std::this_thread::sleep_for(d); };
  token_ = config_.token;
  if (!config_.token_env.empty()) {
    if (const char* token = std::getenv(config_.token_env.c_str())) token_ = token;
  }
}

std::string RemoteJudge::complete(const JudgeRequest& req) {
  httplib::Client client(config_.base_url);
  const auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::duration<double>(config_.timeout_s));
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);
  const std::string body = build_chat_body(req, config_.model).dump();

  std::string last_failure;
  bool last_was_http = false;
  int attempts = 0;
  for (int attempt = 0; attempt <= config_.retry_cap; ++attempt) {
    ++attempts;
    const auto res = client.Post(config_.path, headers, body, "application/json");
    if (!res) {
      last_failure = httplib::to_string(res.error());
      last_was_http = false;
    } else if (res->status >= 200 && res->status < 300) {
      last_attempts_ = attempts;
      const auto j = nlohmann::json::parse(res->body, nullptr, false);
      if (j.is_discarded()) throw EndpointError("completion response is not JSON");
      return extract_reply(j);
    } else if (res->status == 429 || res->status >= 500) {
      last_failure = "HTTP " + std::to_string(res->status);
      last_was_http = true;
    } else {
      last_attempts_ = attempts;
      throw EndpointError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    }
    if (attempt < config_.retry_cap) {
      const double wait = std::min(config_.backoff_max_s,
                                   config_.backoff_initial_s * std::pow(2.0, attempt));
      spdlog::debug("judge call failed ({}), retrying in {:.2f}s", last_failure, wait);
      sleep_(std::chrono::duration<double>(wait));
    }
  }
  last_attempts_ = attempts;
  const std::string msg = "judge endpoint " + config_.base_url + config_.path + " failed after " +
                          std::to_string(attempts) + " attempts: " + last_failure;
  if (last_was_http) throw EndpointError(msg);
  throw TransportError(msg);
}

std::uint64_t request_hash(const JudgeRequest& req, std::uint64_t salt) {
  std::uint64_t h = 1469598103934665603ULL ^ salt;
  const auto mix = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  mix(to_string(req.prompt));
  mix(req.text);
  for (const auto& img : req.images_png_b64) mix(img);
  return h;
}

MockJudge MockJudge::fixed(std::string reply) {
  return MockJudge([reply = std::move(reply)](const JudgeRequest&) { return reply; });
}

MockJudge MockJudge::hashed(std::uint64_t salt) {
  return MockJudge([salt](const JudgeRequest& req) -> std::string {
    const std::uint64_t h = request_hash(req, salt) >> 7;
    switch (req.expected()) {
      case VerdictKind::AB: return h % 5 == 0 ? "B" : "A";
      case VerdictKind::Binary01: return h % 4 == 0 ? "0" : "1";
      case VerdictKind::SameDifferent: return h % 2 == 0 ? "Same" : "Different";
      case VerdictKind::VqsJson:
        return h % 5 == 0
                   ? R"({"video_ok": true, "has_motion": false, "reason": "mock"})"
                   : R"({"video_ok": true, "has_motion": true, "reason": "mock"})";
    }
    return "";
  });
}

JudgeVerdict call_judge(const JudgeRequest& req, Judge& judge) { return judge.ask(req); }

}  // namespace wmeval::judge
