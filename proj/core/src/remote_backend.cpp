#include "loadlm/remote_backend.hpp"

#include <cmath>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "loadlm/error.hpp"

namespace loadlm {

using nlohmann::json;

Endpoint Endpoint::parse(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  if (!url.starts_with(kScheme)) {
    throw Error(ErrorCode::InvalidArgument, "endpoint must be an http:// URL, got '" + std::string(url) + "'");
  }
  const auto rest = url.substr(kScheme.size());
  const auto slash = rest.find('/');
  const auto authority = rest.substr(0, slash);
  if (authority.empty()) throw Error(ErrorCode::InvalidArgument, "endpoint has no host: '" + std::string(url) + "'");
  Endpoint out;
  out.scheme_host_port = std::string(kScheme) + std::string(authority);
  if (slash != std::string_view::npos) {
    auto prefix = std::string(rest.substr(slash));
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    out.path_prefix = std::move(prefix);
  }
  return out;
}

std::chrono::milliseconds RetryPolicy::backoff_after(int attempt) const {
  const double factor = std::pow(backoff_multiplier, std::max(attempt - 1, 0));
  return std::chrono::milliseconds{static_cast<long long>(static_cast<double>(initial_backoff.count()) * factor)};
}

namespace wire {

std::string make_generate_request(const GenerationContext& ctx, int max_new_tokens) {
  json body = json::object();
  body["context"] = join_sentences(ctx.sentences);
  body["max_new_tokens"] = max_new_tokens;
  return body.dump();
}

std::string parse_generate_response(std::string_view body) {
  const auto doc = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::BadResponse, "response is not a JSON object: '" + std::string(body) + "'");
  }
  const auto it = doc.find("generated");
  if (it == doc.end() || !it->is_string()) {
    throw Error(ErrorCode::BadResponse, "response lacks a string 'generated' field: '" + std::string(body) + "'");
  }
  return it->get<std::string>();
}

std::string parse_error_response(std::string_view body) {
  const auto doc = json::parse(body, nullptr, false);
  if (!doc.is_discarded() && doc.is_object()) {
    const auto it = doc.find("error");
    if (it != doc.end() && it->is_string()) return it->get<std::string>();
  }
  return std::string(body);
}

HealthStatus parse_health_response(std::string_view body) {
  const auto doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("status") || !doc["status"].is_string() ||
      !doc.contains("model") || !doc["model"].is_string()) {
    throw Error(ErrorCode::BadResponse, "health response does not match schema: '" + std::string(body) + "'");
  }
  return HealthStatus{doc["status"].get<std::string>(), doc["model"].get<std::string>()};
}

}  // namespace wire

namespace {

// First line of the generated text, which must be non-empty.
Sentence to_sentence(const std::string& generated) {
  const auto newline = generated.find('\n');
  auto line = generated.substr(0, newline);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (normalize_whitespace(line).empty()) throw Error(ErrorCode::BadResponse, "service generated an empty sentence");
  return Sentence(std::move(line));
}

std::unique_ptr<httplib::Client> make_client(const Endpoint& endpoint, std::chrono::milliseconds timeout) {
  auto client = std::make_unique<httplib::Client>(endpoint.scheme_host_port);
  client->set_connection_timeout(timeout);
  client->set_read_timeout(timeout);
  client->set_write_timeout(timeout);
  return client;
}

}  // namespace

RemoteBackend::RemoteBackend(std::string url, RemoteOptions options)
    : url_(std::move(url)), endpoint_(Endpoint::parse(url_)), options_(std::move(options)) {
  if (options_.retry.max_attempts < 1) throw Error(ErrorCode::InvalidArgument, "retry attempts must be >= 1");
  if (options_.max_new_tokens < 1) throw Error(ErrorCode::InvalidArgument, "max_new_tokens must be >= 1");
  if (!options_.sleep) options_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

BackendAnswer RemoteBackend::next_sentence(const GenerationContext& ctx) {
  using Clock = std::chrono::steady_clock;
  const auto body = wire::make_generate_request(ctx, options_.max_new_tokens);
  const auto path = endpoint_.path_prefix + "/generate";
  const auto started = Clock::now();

  ErrorCode last_code = ErrorCode::TransportError;
  std::string last_message;
  for (int attempt = 1; attempt <= options_.retry.max_attempts; ++attempt) {
    if (attempt > 1) options_.sleep(options_.retry.backoff_after(attempt - 1));

    auto client = make_client(endpoint_, options_.timeout);
    const auto attempt_started = Clock::now();
    const auto result = client->Post(path, body, "application/json");
    if (!result) {
      const auto err = result.error();
      const bool timed_out = err == httplib::Error::ConnectionTimeout ||
                             (err == httplib::Error::Read && Clock::now() - attempt_started >= options_.timeout);
      last_code = timed_out ? ErrorCode::Timeout : ErrorCode::TransportError;
      last_message = httplib::to_string(err);
      continue;
    }
    if (result->status >= 500) {
      last_code = ErrorCode::BadResponse;
      last_message = "HTTP " + std::to_string(result->status) + ": " + wire::parse_error_response(result->body);
      continue;
    }
    if (result->status != 200) {
      throw Error(ErrorCode::BadResponse, url_ + ": HTTP " + std::to_string(result->status) + ": " +
                                              wire::parse_error_response(result->body));
    }
    auto sentence = to_sentence(wire::parse_generate_response(result->body));
    return BackendAnswer{std::move(sentence), Clock::now() - started, attempt};
  }
  throw Error(last_code, url_ + " failed after " + std::to_string(options_.retry.max_attempts) +
                             " attempts: " + last_message);
}

HealthStatus RemoteBackend::health() const {
  auto client = make_client(endpoint_, options_.timeout);
  const auto result = client->Get(endpoint_.path_prefix + "/health");
  if (!result) throw Error(ErrorCode::TransportError, url_ + ": " + httplib::to_string(result.error()));
  if (result->status != 200) {
    throw Error(ErrorCode::BadResponse, url_ + "/health: HTTP " + std::to_string(result->status));
  }
  return wire::parse_health_response(result->body);
}

}  // namespace loadlm
