#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "polarbench/evalharness.hpp"

namespace polarbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string base64(std::string_view bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(bytes.data()), static_cast<int>(bytes.size()));
  out.resize(static_cast<size_t>(n));
  return out;
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

std::string rasterize(const MessagePart& part, const std::string& cmd_template, const std::string& tag) {
  const auto dir = fs::temp_directory_path();
  const auto in = dir / ("polarbench_" + tag + "_" + part.image_id + ".svg");
  const auto out = dir / ("polarbench_" + tag + "_" + part.image_id + ".png");
  {
    std::ofstream f(in, std::ios::binary);
    f << part.svg;
  }
  std::string cmd = cmd_template;
  replace_all(cmd, "{in}", shell_quote(in.string()));
  replace_all(cmd, "{out}", shell_quote(out.string()));
  const int rc = std::system(cmd.c_str());
  std::ifstream f(out, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  std::error_code ec;
  fs::remove(in, ec);
  fs::remove(out, ec);
  if (rc != 0 || ss.str().empty()) throw TransportError("rasterize command failed for " + part.image_id);
  return ss.str();
}

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw std::invalid_argument("endpoint url '" + url + "' is not http(s)");
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

bool transient(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace

EndpointConfig EndpointConfig::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("endpoint config must be a JSON object");
  static const std::set<std::string> known = {"url", "model", "auth_env", "max_output_tokens", "reasoning",
                                              "concurrency", "rasterize_cmd", "max_retries", "backoff_ms",
                                              "timeout_s"};
  for (const auto& [k, _] : j.items())
    if (!known.count(k)) throw std::invalid_argument("endpoint config field '" + k + "': unknown field");
  EndpointConfig c;
  const auto get = [&](const char* key, auto& dst) {
    if (!j.contains(key)) return;
    try {
      j.at(key).get_to(dst);
    } catch (const json::exception&) {
      throw std::invalid_argument(std::string("endpoint config field '") + key + "': wrong type");
    }
  };
  get("url", c.url);
  get("model", c.model);
  get("auth_env", c.auth_env);
  get("max_output_tokens", c.max_output_tokens);
  get("reasoning", c.reasoning);
  get("concurrency", c.concurrency);
  get("max_retries", c.max_retries);
  get("backoff_ms", c.backoff_ms);
  get("timeout_s", c.timeout_s);
  if (j.contains("rasterize_cmd") && !j["rasterize_cmd"].is_null()) {
    std::string r;
    get("rasterize_cmd", r);
    c.rasterize_cmd = r;
  }
  if (c.url.empty()) throw std::invalid_argument("endpoint config field 'url': required");
  split_url(c.url);
  if (c.reasoning != "high" && c.reasoning != "none") {
    throw std::invalid_argument("endpoint config field 'reasoning': must be 'high' or 'none'");
  }
  if (c.concurrency < 1) throw std::invalid_argument("endpoint config field 'concurrency': must be at least 1");
  if (c.max_retries < 0) throw std::invalid_argument("endpoint config field 'max_retries': must be non-negative");
  return c;
}

json request_body(const Prompt& p, const EndpointConfig& cfg) {
  json messages = json::array();
  for (const auto& m : p) {
    json content = json::array();
    for (const auto& part : m.parts) {
      if (part.kind == MessagePart::Kind::Text) {
        content.push_back({{"type", "text"}, {"text", part.text}});
      } else {
        const std::string url = cfg.rasterize_cmd
                                    ? "data:image/png;base64," + base64(rasterize(part, *cfg.rasterize_cmd, cfg.model))
                                    : "data:image/svg+xml;base64," + base64(part.svg);
        content.push_back({{"type", "image_url"}, {"image_url", {{"url", url}}}});
      }
    }
    messages.push_back({{"role", m.role}, {"content", content}});
  }
  json body = {{"model", cfg.model}, {"messages", messages}, {"max_tokens", cfg.max_output_tokens}};
  if (cfg.reasoning == "high") body["reasoning_effort"] = "high";
  return body;
}

QueryResult query_model(const Prompt& p, const EndpointConfig& cfg, const std::string& request_id) {
  const auto url = split_url(cfg.url);
  httplib::Headers headers = {{"X-Request-Id", request_id}};
  if (!cfg.auth_env.empty()) {
    const char* key = std::getenv(cfg.auth_env.c_str());
    if (!key || !*key) throw TransportError("credential variable " + cfg.auth_env + " is not set");
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  const std::string body = request_body(p, cfg).dump();

  httplib::Client cli(url.origin);
  cli.set_connection_timeout(30);
  cli.set_read_timeout(cfg.timeout_s);
  cli.set_write_timeout(60);

  std::string last;
  const auto t0 = std::chrono::steady_clock::now();
  for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(int64_t{cfg.backoff_ms} << (attempt - 1)));
    auto res = cli.Post(url.path, headers, body, "application/json");
    if (!res) {
      last = "connection error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status != 200) {
      last = "HTTP " + std::to_string(res->status);
      if (transient(res->status)) continue;
      throw TransportError(last + " from " + cfg.url + ": " + res->body.substr(0, 300));
    }
    QueryResult out;
    out.attempts = attempt + 1;
    out.latency_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    try {
      const auto j = json::parse(res->body);
      const auto& choice = j.at("choices").at(0);
      const auto& msg = choice.at("message");
      if (msg.contains("content") && msg["content"].is_string()) out.raw = msg["content"].get<std::string>();
      for (const char* k : {"reasoning_content", "reasoning"}) {
        if (msg.contains(k) && msg[k].is_string()) {
          out.trace = msg[k].get<std::string>();
          break;
        }
      }
      out.truncated = choice.value("finish_reason", std::string()) == "length";
    } catch (const json::exception& e) {
      throw TransportError("unreadable response from " + cfg.url + ": " + e.what());
    }
    return out;
  }
  throw TransportError("gave up on " + cfg.url + " after " + std::to_string(cfg.max_retries + 1) +
                       " attempts; last: " + last);
}

}  // namespace polarbench
