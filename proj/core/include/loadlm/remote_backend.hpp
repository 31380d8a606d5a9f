#pragma once

#include <chrono>
#include <functional>
#include <string>
#include <string_view>

#include "loadlm/backend.hpp"

namespace loadlm {

/// Split form of an `http://host[:port][/prefix]` endpoint URL.
struct Endpoint {
  std::string scheme_host_port;  // "http://host:port"
  std::string path_prefix;       // "" or "/prefix" without trailing slash

  /// Throws InvalidArgument on anything that is not an http(s) URL.
  [[nodiscard]] static Endpoint parse(std::string_view url);
};

struct RetryPolicy {
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
  double backoff_multiplier = 2.0;

  /// Delay slept after failed attempt `attempt` (1-based).
  [[nodiscard]] std::chrono::milliseconds backoff_after(int attempt) const;
};

struct RemoteOptions {
  std::chrono::milliseconds timeout{30000};
  RetryPolicy retry;
  int max_new_tokens = 32;
  /// Replaced in tests to avoid real sleeping.
  std::function<void(std::chrono::milliseconds)> sleep;
};

struct HealthStatus {
  std::string status;
  std::string model;
};

// Wire protocol (JSON over HTTP):
//   POST {endpoint}/generate  {"context": "<sentences joined by \n>", "max_new_tokens": N}
//     200 -> {"generated": "<one sentence>"}, 4xx/5xx -> {"error": "<message>"}
//   GET {endpoint}/health -> 200 {"status": "ok", "model": "<identifier>"}
namespace wire {

[[nodiscard]] std::string make_generate_request(const GenerationContext& ctx, int max_new_tokens);

/// Extracts `generated` from a 200 body. Throws BadResponse on schema violations.
[[nodiscard]] std::string parse_generate_response(std::string_view body);

/// Extracts `error` from a failure body, or returns the body itself if it is not that shape.
[[nodiscard]] std::string parse_error_response(std::string_view body);

[[nodiscard]] HealthStatus parse_health_response(std::string_view body);

}  // namespace wire

/// Client for the language-model service.
///
/// Retries transport failures and 5xx answers with exponential backoff; a
/// 4xx answer or a schema violation fails immediately with BadResponse. Each
/// call opens its own connection, so concurrent calls are isolated.
class RemoteBackend final : public SentenceBackend {
 public:
  explicit RemoteBackend(std::string url, RemoteOptions options = {});

  BackendAnswer next_sentence(const GenerationContext& ctx) override;
  [[nodiscard]] std::string name() const override { return "remote:" + url_; }

  [[nodiscard]] HealthStatus health() const;

 private:
  std::string url_;
  Endpoint endpoint_;
  RemoteOptions options_;
};

}  // namespace loadlm
