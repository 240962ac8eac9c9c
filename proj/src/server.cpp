#include "polarbench/server.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>

#include <unistd.h>

#include "httplib.h"
#include "polarbench/evalharness.hpp"
#include "polarbench/rng.hpp"

namespace polarbench {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Correct: return "Correct";
    case Verdict::Incorrect: return "Incorrect";
    case Verdict::IDontKnow: return "IDontKnow";
  }
  return "?";
}

std::optional<Verdict> verdict_from_string(std::string_view s) {
  for (auto v : {Verdict::Correct, Verdict::Incorrect, Verdict::IDontKnow})
    if (to_string(v) == s) return v;
  return std::nullopt;
}

json SamplingPlan::to_json() const { return {{"n", n}, {"seed", seed}, {"tasks", tasks}}; }

SamplingPlan SamplingPlan::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("plan must be a JSON object");
  SamplingPlan p;
  if (j.contains("n")) {
    if (!j["n"].is_number_integer() || j["n"].get<int64_t>() < 1) throw std::invalid_argument("plan.n must be >= 1");
    p.n = j["n"].get<int>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer()) {
      throw std::invalid_argument("plan.seed must be an integer");
    }
    p.seed = j["seed"].get<uint64_t>();
  }
  if (j.contains("tasks")) p.tasks = j["tasks"].get<std::vector<std::string>>();
  return p;
}

namespace {

bool same_pair(const Instance& a, const Instance& b) { return a.task_id == b.task_id && a.seed == b.seed; }

}  // namespace

std::vector<std::string> sample_slots(const std::vector<Instance>& dataset, const SamplingPlan& plan) {
  std::map<std::pair<std::string, Topology>, std::vector<const Instance*>> strata;
  for (const auto& inst : dataset) {
    if (inst.topology != Topology::Cartesian && inst.topology != Topology::Polar) continue;
    if (!plan.tasks.empty() && std::find(plan.tasks.begin(), plan.tasks.end(), inst.task_id) == plan.tasks.end()) {
      continue;
    }
    strata[{inst.task_id, inst.topology}].push_back(&inst);
  }
  for (const auto& t : plan.tasks) {
    for (auto topo : {Topology::Cartesian, Topology::Polar})
      if (!strata.count({t, topo})) throw std::out_of_range("no " + std::string(to_string(topo)) + " instances of " + t);
  }
  if (strata.empty()) throw std::out_of_range("no instances to sample");

  Rng rng(derive_seed("rater_plan", plan.seed));
  std::vector<const Instance*> picked;
  for (auto& [key, v] : strata) {
    if (static_cast<int>(v.size()) < plan.n) {
      throw std::out_of_range("plan asks for " + std::to_string(plan.n) + " " + std::string(to_string(key.second)) +
                              " instances of " + key.first + " but only " + std::to_string(v.size()) + " exist");
    }
    auto pool = v;
    rng.shuffle(pool);
    picked.insert(picked.end(), pool.begin(), pool.begin() + plan.n);
  }
  // Reshuffle until no Cartesian/Polar pair sits in neighboring slots; small
  // plans where that is impossible keep the last order.
  for (int attempt = 0; attempt < 1000; ++attempt) {
    rng.shuffle(picked);
    bool adjacent = false;
    for (size_t i = 1; i < picked.size() && !adjacent; ++i) adjacent = same_pair(*picked[i - 1], *picked[i]);
    if (!adjacent) break;
  }
  std::vector<std::string> out;
  for (const auto* p : picked) out.push_back(p->id);
  return out;
}

RaterService::RaterService(std::vector<Instance> dataset, fs::path log_dir)
    : dataset_(std::move(dataset)), log_dir_(std::move(log_dir)) {
  for (const auto& i : dataset_) by_id_[i.id] = &i;
  fs::create_directories(log_dir_);
  replay();
}

void RaterService::append(const fs::path& file, const json& line) {
  std::FILE* f = std::fopen(file.c_str(), "ab");
  if (!f) throw std::runtime_error("cannot open " + file.string());
  const std::string s = line.dump() + "\n";
  const bool ok = std::fwrite(s.data(), 1, s.size(), f) == s.size() && std::fflush(f) == 0 && ::fsync(::fileno(f)) == 0;
  std::fclose(f);
  if (!ok) throw std::runtime_error("cannot append to " + file.string());
}

namespace {

// Every complete line of a JSONL log; a torn final line from a crash is skipped.
std::vector<json> read_log(const fs::path& file) {
  std::vector<json> out;
  std::ifstream in(file, std::ios::binary);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      out.push_back(json::parse(line));
    } catch (const json::exception&) {
    }
  }
  return out;
}

}  // namespace

void RaterService::replay() {
  for (const auto& s : read_log(log_dir_ / "sessions.jsonl")) {
    RaterSession rs;
    rs.id = s.at("id").get<std::string>();
    rs.alias = s.value("alias", std::string());
    rs.plan = SamplingPlan::from_json(s.at("plan"));
    rs.slots = s.at("slots").get<std::vector<std::string>>();
    sessions_[rs.id] = std::move(rs);
  }
  for (const auto& r : read_log(log_dir_ / "responses.jsonl")) {
    auto it = sessions_.find(r.value("session_id", std::string()));
    if (it == sessions_.end()) continue;
    auto& s = it->second;
    if (s.cursor < s.slots.size() && s.slots[s.cursor] == r.value("instance_id", std::string())) {
      ++s.cursor;
      responses_.push_back(r);
    }
  }
}

HttpReply RaterService::new_session(const std::string& alias, const SamplingPlan& plan) {
  std::unique_lock lock(mu_);
  if (dataset_.empty()) return {409, {{"error", "dataset is empty"}}};
  RaterSession s;
  try {
    s.slots = sample_slots(dataset_, plan);
  } catch (const std::out_of_range& e) {
    return {409, {{"error", e.what()}}};
  }
  char id[32];
  std::snprintf(id, sizeof id, "s%04zu", sessions_.size() + 1);
  s.id = id;
  s.alias = alias;
  s.plan = plan;
  append(log_dir_ / "sessions.jsonl", {{"id", s.id}, {"alias", alias}, {"plan", plan.to_json()}, {"slots", s.slots}});
  json body = {{"session_id", s.id}, {"alias", alias}, {"plan", plan.to_json()}, {"total", s.slots.size()}};
  sessions_[s.id] = std::move(s);
  return {200, body};
}

HttpReply RaterService::next(const std::string& session_id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) return {404, {{"error", "unknown session " + session_id}}};
  const auto& s = it->second;
  if (s.cursor >= s.slots.size()) return {200, {{"done", true}, {"total", s.slots.size()}}};
  const Instance& inst = *by_id_.at(s.slots[s.cursor]);
  json body = {{"done", false},
               {"session_id", s.id},
               {"slot", s.cursor},
               {"total", s.slots.size()},
               {"instance_id", inst.id},
               {"task_id", inst.task_id},
               {"topology", std::string(to_string(inst.topology))},
               {"question", inst.question},
               {"answer_type", std::string(to_string(type_of(inst.ground_truth)))},
               {"image_url", "/images/" + inst.id + ".svg"},
               {"image_svg", inst.svg}};
  if (!inst.options.empty()) body["options"] = inst.options;
  return {200, body};
}

HttpReply RaterService::respond(const std::string& session_id, const json& body) {
  std::unique_lock lock(mu_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) return {404, {{"error", "unknown session " + session_id}}};
  auto& s = it->second;
  const auto bad = [](const std::string& why) { return HttpReply{400, {{"error", why}}}; };

  if (!body.is_object()) return bad("body must be a JSON object");
  if (!body.contains("instance_id") || !body["instance_id"].is_string()) return bad("instance_id is required");
  if (!body.contains("verdict") || !body["verdict"].is_string() || !verdict_from_string(body["verdict"].get<std::string>())) {
    return bad("verdict must be one of Correct, Incorrect, IDontKnow");
  }
  if (!body.contains("elapsed_s") || !body["elapsed_s"].is_number() || !(body["elapsed_s"].get<double>() > 0)) {
    return bad("elapsed_s must be a positive number");
  }
  for (const char* k : {"clarity_ok", "logic_ok"})
    if (body.contains(k) && !body[k].is_boolean()) return bad(std::string(k) + " must be a boolean");

  const auto id = body["instance_id"].get<std::string>();
  if (s.cursor >= s.slots.size()) return {409, {{"error", "session is complete"}}};
  if (id != s.slots[s.cursor]) {
    return {409, {{"error", "expected a response for " + s.slots[s.cursor] + ", got " + id}, {"slot", s.cursor}}};
  }
  const Instance& inst = *by_id_.at(id);

  std::optional<Answer> given;
  json given_json = nullptr;
  if (body.contains("given_answer") && !body["given_answer"].is_null()) {
    const auto& g = body["given_answer"];
    if (g.is_string()) {
      given = parse_answer(g.get<std::string>(), type_of(inst.ground_truth));
      given_json = given ? to_json(*given) : g;
    } else {
      try {
        given = answer_from_json(g);
      } catch (const std::exception& e) {
        return bad(std::string("given_answer: ") + e.what());
      }
      given_json = to_json(*given);
    }
  }
  const json matched = given ? json(score(*given, inst.ground_truth)) : json(nullptr);
  const auto now =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::system_clock::now().time_since_epoch()).count();
  const json line = {{"session_id", s.id},
                     {"alias", s.alias},
                     {"slot", s.cursor},
                     {"instance_id", id},
                     {"task_id", inst.task_id},
                     {"category", find_task(inst.task_id).category},
                     {"topology", std::string(to_string(inst.topology))},
                     {"verdict", body["verdict"]},
                     {"clarity_ok", body.value("clarity_ok", true)},
                     {"logic_ok", body.value("logic_ok", true)},
                     {"given_answer", given_json},
                     {"answer_matched", matched},
                     {"elapsed_s", body["elapsed_s"]},
                     {"received_ms", now}};
  try {
    append(log_dir_ / "responses.jsonl", line);
  } catch (const std::exception& e) {
    return {500, {{"error", e.what()}}};
  }
  ++s.cursor;
  responses_.push_back(line);
  return {200,
          {{"ok", true},
           {"cursor", s.cursor},
           {"total", s.slots.size()},
           {"answer_matched", matched},
           {"ground_truth", to_json(inst.ground_truth)}}};
}

HttpReply RaterService::report() const {
  std::shared_lock lock(mu_);
  return {200, human_report(responses_)};
}

std::optional<RaterSession> RaterService::session(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return std::nullopt;
  return it->second;
}

json human_report(const std::vector<json>& responses) {
  struct Tally {
    int n = 0, correct = 0, idk = 0, incorrect = 0;
    double seconds = 0;
    std::map<std::string, std::pair<int, int>> by_topology;  // n, correct
  };
  std::map<std::string, Tally> cats;
  Tally overall;
  for (const auto& r : responses) {
    const auto v = verdict_from_string(r.value("verdict", std::string()));
    if (!v) continue;
    for (Tally* t : {&cats[r.value("category", std::string("?"))], &overall}) {
      ++t->n;
      t->correct += *v == Verdict::Correct;
      t->idk += *v == Verdict::IDontKnow;
      t->incorrect += *v == Verdict::Incorrect;
      t->seconds += r.value("elapsed_s", 0.0);
      auto& tp = t->by_topology[r.value("topology", std::string("?"))];
      ++tp.first;
      tp.second += *v == Verdict::Correct;
    }
  }
  const auto row = [](const std::string& name, const Tally& t) {
    const auto pct = [&](int k) { return round1(100.0 * k / t.n); };
    json j = {{"category", name},
              {"n", t.n},
              {"correct_pct", pct(t.correct)},
              {"idk_pct", pct(t.idk)},
              {"incorrect_pct", pct(t.incorrect)},
              {"avg_time_s", round1(t.seconds / t.n)},
              {"avg_time_min", round1(t.seconds / t.n / 60.0)}};
    std::optional<double> c, p;
    for (const auto& [topo, np] : t.by_topology) {
      const double acc = round1(100.0 * np.second / np.first);
      j["by_topology"][topo] = {{"n", np.first}, {"correct_pct", acc}};
      if (topo == to_string(Topology::Cartesian)) c = acc;
      if (topo == to_string(Topology::Polar)) p = acc;
    }
    j["C"] = c ? json(*c) : json(nullptr);
    j["P"] = p ? json(*p) : json(nullptr);
    j["delta"] = c && p ? json(round1(*c - *p)) : json(nullptr);
    return j;
  };
  json rows = json::array();
  std::set<std::string> seen;
  for (const auto& t : catalog()) {
    if (cats.count(t.category) && seen.insert(t.category).second) rows.push_back(row(t.category, cats[t.category]));
  }
  for (const auto& [name, t] : cats)
    if (seen.insert(name).second) rows.push_back(row(name, t));
  json out = {{"responses", overall.n}, {"rows", rows}};
  out["overall"] = overall.n > 0 ? row("overall", overall) : json(nullptr);
  return out;
}

void mount_routes(httplib::Server& server, RaterService& service, const ServeOptions& opt) {
  const auto send = [](httplib::Response& res, const HttpReply& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };

  server.Get("/api/session/new", [&service, send](const httplib::Request& req, httplib::Response& res) {
    SamplingPlan plan;
    try {
      if (req.has_param("plan")) plan = SamplingPlan::from_json(json::parse(req.get_param_value("plan")));
      if (req.has_param("n")) plan.n = std::stoi(req.get_param_value("n"));
      if (req.has_param("seed")) plan.seed = std::stoull(req.get_param_value("seed"));
      if (req.has_param("tasks")) {
        plan.tasks.clear();
        std::string t = req.get_param_value("tasks");
        for (size_t b = 0; b <= t.size();) {
          const size_t e = std::min(t.find(',', b), t.size());
          if (e > b) plan.tasks.push_back(t.substr(b, e - b));
          b = e + 1;
        }
      }
      if (plan.n < 1) throw std::invalid_argument("n must be >= 1");
    } catch (const std::exception& e) {
      send(res, {400, {{"error", std::string("bad plan: ") + e.what()}}});
      return;
    }
    send(res, service.new_session(req.has_param("alias") ? req.get_param_value("alias") : "", plan));
  });

  server.Get("/api/session/:id/next", [&service, send](const httplib::Request& req, httplib::Response& res) {
    send(res, service.next(req.path_params.at("id")));
  });

  server.Post("/api/session/:id/response", [&service, send](const httplib::Request& req, httplib::Response& res) {
    json body;
    try {
      body = json::parse(req.body);
    } catch (const json::exception&) {
      send(res, {400, {{"error", "body is not valid JSON"}}});
      return;
    }
    send(res, service.respond(req.path_params.at("id"), body));
  });

  server.Get("/api/report/human", [&service, send](const httplib::Request&, httplib::Response& res) {
    send(res, service.report());
  });

  if (!opt.dataset_dir.empty()) server.set_mount_point("/images", (opt.dataset_dir / "images").string());
  if (!opt.ui_dir.empty() && fs::is_directory(opt.ui_dir)) {
    server.set_mount_point("/ui", opt.ui_dir.string());
    server.Get("/", [](const httplib::Request&, httplib::Response& res) { res.set_redirect("/ui/"); });
  }
}

}  // namespace polarbench
