#include "test_support.hpp"

#include <mutex>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <httplib.h>
#include <json.hpp>

namespace loadlm::testing {

using nlohmann::json;

Timestamp hour(long long hours) {
  return Timestamp{std::chrono::sys_days{std::chrono::year{2019} / 1 / 1}} + std::chrono::hours{hours};
}

LoadSeries hourly_series(const std::string& id, Timestamp start, const std::vector<double>& values) {
  std::vector<LoadRecord> records;
  records.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    records.push_back({id, start + std::chrono::hours{static_cast<long long>(i)}, values[i]});
  }
  return LoadSeries(id, std::move(records));
}

LoadSeries linear_series(const std::string& id, double intercept, double slope, std::size_t count) {
  std::vector<double> values(count);
  for (std::size_t t = 0; t < count; ++t) values[t] = intercept + slope * static_cast<double>(t);
  return hourly_series(id, hour(0), values);
}

ProtocolStub::ProtocolStub(Mode mode) : mode_(mode), server_(std::make_unique<httplib::Server>()) {
  reply_ = [](const std::string& context) {
    const auto nl = context.rfind('\n');
    return nl == std::string::npos ? context : context.substr(nl + 1);
  };

  server_->Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok","model":"stub"})", "application/json");
  });

  server_->Post("/generate", [this](const httplib::Request& req, httplib::Response& res) {
    ++generate_calls_;
    {
      std::lock_guard lock(body_mutex_);
      last_body_ = req.body;
    }
    const auto doc = json::parse(req.body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("context") || !doc["context"].is_string() ||
        !doc.contains("max_new_tokens") || !doc["max_new_tokens"].is_number_integer()) {
      res.status = 400;
      res.set_content(R"({"error":"body needs string context and integer max_new_tokens"})", "application/json");
      return;
    }
    switch (mode_) {
      case Mode::MissingField:
        res.set_content(R"({"text":"nothing here"})", "application/json");
        return;
      case Mode::FailThenOk:
        if (failures_.fetch_sub(1) > 0) {
          res.status = 503;
          res.set_content(R"({"error":"warming up"})", "application/json");
          return;
        }
        break;
      case Mode::Slow:
        std::this_thread::sleep_for(delay_);
        break;
      case Mode::Reject:
        res.status = 400;
        res.set_content(R"({"error":"rejected"})", "application/json");
        return;
      case Mode::Healthy:
        break;
    }
    res.set_content(json{{"generated", reply_(doc["context"].get<std::string>())}}.dump(), "application/json");
  });

  port_ = server_->bind_to_any_port("127.0.0.1");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

ProtocolStub::~ProtocolStub() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

void ProtocolStub::set_reply(std::function<std::string(const std::string&)> reply) { reply_ = std::move(reply); }

std::string ProtocolStub::url() const { return "http://127.0.0.1:" + std::to_string(port_); }

std::string ProtocolStub::last_body() const {
  std::lock_guard lock(body_mutex_);
  return last_body_;
}

int closed_port() {
  // Bind an ephemeral port without listening, note it, and release it.
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  socklen_t len = sizeof(addr);
  if (fd < 0 || ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
    if (fd >= 0) ::close(fd);
    return 1;
  }
  ::close(fd);
  return ntohs(addr.sin_port);
}

}  // namespace loadlm::testing
