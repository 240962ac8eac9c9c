#pragma once
// Human-rater service: sampled sessions, append-only response log, summary report.

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "polarbench/answer.hpp"
#include "polarbench/taskgen.hpp"

namespace httplib {
class Server;
}

namespace polarbench {

enum class Verdict { Correct, Incorrect, IDontKnow };
std::string_view to_string(Verdict v);
std::optional<Verdict> verdict_from_string(std::string_view s);

struct SamplingPlan {
  int n = 20;  // per task per topology
  uint64_t seed = 0;
  std::vector<std::string> tasks;  // empty = every task in the dataset

  nlohmann::json to_json() const;
  static SamplingPlan from_json(const nlohmann::json& j);
};

struct RaterSession {
  std::string id;
  std::string alias;
  SamplingPlan plan;
  std::vector<std::string> slots;  // instance ids
  size_t cursor = 0;
};

/// Draws the slot order for a plan. Throws std::out_of_range when a
/// (task, topology) stratum has fewer than plan.n instances.
std::vector<std::string> sample_slots(const std::vector<Instance>& dataset, const SamplingPlan& plan);

struct HttpReply {
  int status = 200;
  nlohmann::json body;
};

class RaterService {
 public:
  /// Replays sessions.jsonl and responses.jsonl from `log_dir` if present.
  RaterService(std::vector<Instance> dataset, std::filesystem::path log_dir);

  HttpReply new_session(const std::string& alias, const SamplingPlan& plan);
  HttpReply next(const std::string& session_id) const;
  HttpReply respond(const std::string& session_id, const nlohmann::json& body);
  HttpReply report() const;

  std::optional<RaterSession> session(const std::string& id) const;
  const std::filesystem::path& log_dir() const { return log_dir_; }

 private:
  void append(const std::filesystem::path& file, const nlohmann::json& line);
  void replay();

  std::vector<Instance> dataset_;
  std::map<std::string, const Instance*> by_id_;
  std::filesystem::path log_dir_;
  std::map<std::string, RaterSession> sessions_;
  std::vector<nlohmann::json> responses_;
  mutable std::shared_mutex mu_;
};

/// Report over raw response log lines (pure function of the log).
nlohmann::json human_report(const std::vector<nlohmann::json>& responses);

struct ServeOptions {
  std::filesystem::path dataset_dir;
  std::filesystem::path ui_dir;  // served under /ui/ when it exists
};

/// Registers the JSON API and static routes on `server`.
void mount_routes(httplib::Server& server, RaterService& service, const ServeOptions& opt);

}  // namespace polarbench
