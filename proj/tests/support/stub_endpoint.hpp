#pragma once
// In-process chat-completions endpoint for harness tests.

#include <atomic>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "httplib.h"
#include "json.hpp"

namespace testing {

struct StubReply {
  StubReply(int s = 200, std::string c = {}, std::string r = {}, std::string f = "stop")
      : status(s), content(std::move(c)), reasoning(std::move(r)), finish_reason(std::move(f)) {}
  int status;
  std::string content;
  std::string reasoning;
  std::string finish_reason;
};

/// Serves POST /v1/chat/completions on 127.0.0.1 with a random port. The
/// responder sees the X-Request-Id header and the parsed request body.
class StubEndpoint {
 public:
  using Responder = std::function<StubReply(const std::string& request_id, const nlohmann::json& body)>;

  explicit StubEndpoint(Responder r) : responder_(std::move(r)) {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      ++calls_;
      nlohmann::json body = nlohmann::json::parse(req.body, nullptr, false);
      {
        std::lock_guard<std::mutex> lock(mu_);
        request_ids_.push_back(req.get_header_value("X-Request-Id"));
        auth_.push_back(req.get_header_value("Authorization"));
      }
      const StubReply reply = responder_(req.get_header_value("X-Request-Id"), body);
      res.status = reply.status;
      if (reply.status != 200) {
        res.set_content("{\"error\":\"stub\"}", "application/json");
        return;
      }
      nlohmann::json msg = {{"role", "assistant"}, {"content", reply.content}};
      if (!reply.reasoning.empty()) msg["reasoning_content"] = reply.reasoning;
      const nlohmann::json out = {{"choices", {{{"index", 0}, {"message", msg}, {"finish_reason", reply.finish_reason}}}}};
      res.set_content(out.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~StubEndpoint() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  StubEndpoint(const StubEndpoint&) = delete;
  StubEndpoint& operator=(const StubEndpoint&) = delete;

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }
  int calls() const { return calls_; }
  std::vector<std::string> request_ids() const {
    std::lock_guard<std::mutex> lock(mu_);
    return request_ids_;
  }
  std::vector<std::string> auth_headers() const {
    std::lock_guard<std::mutex> lock(mu_);
    return auth_;
  }

 private:
  Responder responder_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> calls_{0};
  mutable std::mutex mu_;
  std::vector<std::string> request_ids_;
  std::vector<std::string> auth_;
};

/// Instance id part of a request id ("<id>|<mode>|<repeat>[|caption]").
inline std::string instance_of(const std::string& request_id) { return request_id.substr(0, request_id.find('|')); }

}  // namespace testing
