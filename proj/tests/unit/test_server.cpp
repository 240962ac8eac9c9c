#include "doctest.h"
#include "httplib.h"
#include "polarbench/server.hpp"
#include "testing.hpp"

using namespace polarbench;
using nlohmann::json;
using testing::TempDir;

namespace {

const std::vector<Instance>& pool() {
  static const std::vector<Instance> p = [] {
    GenConfig cfg;
    cfg.n_per_task = 3;
    cfg.tasks = {"maze", "sudoku"};
    cfg.layout_variants = false;
    return testing::owned(generate_dataset(cfg.selected_tasks(), cfg).instances());
  }();
  return p;
}

SamplingPlan plan(int n, uint64_t seed = 5) {
  SamplingPlan p;
  p.n = n;
  p.seed = seed;
  return p;
}

json answer_for(const RaterService& svc, const std::string& sid, const std::string& verdict, double secs = 10) {
  const auto s = *svc.session(sid);
  return {{"instance_id", s.slots[s.cursor]}, {"verdict", verdict}, {"elapsed_s", secs}};
}

}  // namespace

TEST_CASE("sampling draws n per task and topology") {
  const auto slots = sample_slots(pool(), plan(1));
  CHECK(slots.size() == 4u);
  CHECK(slots == sample_slots(pool(), plan(1)));
  CHECK(sample_slots(pool(), plan(3)).size() == 12u);
  CHECK_THROWS_AS(sample_slots(pool(), plan(4)), std::out_of_range);
  auto only = plan(2);
  only.tasks = {"maze"};
  for (const auto& id : sample_slots(pool(), only)) CHECK(id.rfind("maze_", 0) == 0);
  only.tasks = {"chess"};
  CHECK_THROWS_AS(sample_slots(pool(), only), std::out_of_range);
}

TEST_CASE("plans reject bad fields") {
  CHECK(SamplingPlan::from_json(json{{"n", 2}, {"seed", 9}}).n == 2);
  CHECK_THROWS(SamplingPlan::from_json(json{{"n", 0}}));
  CHECK_THROWS(SamplingPlan::from_json(json{{"seed", "x"}}));
  CHECK_THROWS(SamplingPlan::from_json(json::array()));
}

TEST_CASE("a session walks its slots without leaking the answer") {
  TempDir logs("rs");
  RaterService svc(pool(), logs.path());
  CHECK(svc.new_session("r1", plan(4)).status == 409);
  const auto created = svc.new_session("r1", plan(1));
  REQUIRE(created.status == 200);
  const auto sid = created.body["session_id"].get<std::string>();

  const auto first = svc.next(sid);
  CHECK(first.status == 200);
  CHECK_FALSE(first.body.contains("ground_truth"));
  CHECK(first.body["image_svg"].get<std::string>().find("<svg") != std::string::npos);
  CHECK(svc.next(sid).body == first.body);
  CHECK(svc.next("nope").status == 404);

  auto reply = svc.respond(sid, answer_for(svc, sid, "Correct"));
  CHECK(reply.status == 200);
  CHECK(reply.body["cursor"] == 1);
  CHECK(reply.body.contains("ground_truth"));
  CHECK(testing::lines_of(testing::slurp(logs / "responses.jsonl")).size() == 1u);

  // Re-sending the answered slot is a conflict and leaves the log alone.
  json dup = {{"instance_id", first.body["instance_id"]}, {"verdict", "Correct"}, {"elapsed_s", 3}};
  CHECK(svc.respond(sid, dup).status == 409);
  CHECK(testing::lines_of(testing::slurp(logs / "responses.jsonl")).size() == 1u);

  CHECK(svc.respond("nope", dup).status == 404);
  auto bad = answer_for(svc, sid, "Maybe");
  CHECK(svc.respond(sid, bad).status == 400);
  bad = answer_for(svc, sid, "Correct", 0);
  CHECK(svc.respond(sid, bad).status == 400);
  bad = answer_for(svc, sid, "Correct");
  bad["clarity_ok"] = "yes";
  CHECK(svc.respond(sid, bad).status == 400);
  CHECK(svc.respond(sid, json::array()).status == 400);

  CHECK(svc.respond(sid, answer_for(svc, sid, "IDontKnow")).status == 200);
  auto wrong = answer_for(svc, sid, "Incorrect");
  wrong["given_answer"] = "Answer: Z";
  CHECK(svc.respond(sid, wrong).status == 200);
  CHECK(svc.respond(sid, answer_for(svc, sid, "Correct")).status == 200);
  const auto done = svc.next(sid);
  CHECK(done.body["done"] == true);
  CHECK(svc.respond(sid, dup).status == 409);
}

TEST_CASE("given answers are scored against the truth") {
  TempDir logs("ga");
  RaterService svc(pool(), logs.path());
  const auto sid = svc.new_session("r", plan(1)).body["session_id"].get<std::string>();
  const std::string id = svc.session(sid)->slots[0];
  const Instance* inst = nullptr;
  for (const auto& i : pool())
    if (i.id == id) inst = &i;
  REQUIRE(inst);
  auto body = answer_for(svc, sid, "Correct");
  body["given_answer"] = to_json(inst->ground_truth);
  CHECK(svc.respond(sid, body).body["answer_matched"] == true);
}

TEST_CASE("restart replays the logs") {
  TempDir logs("rp");
  std::string sid;
  {
    RaterService svc(pool(), logs.path());
    sid = svc.new_session("r", plan(1)).body["session_id"].get<std::string>();
    svc.respond(sid, answer_for(svc, sid, "Correct"));
    svc.respond(sid, answer_for(svc, sid, "Incorrect"));
  }
  // A torn final line from a crash is ignored.
  std::ofstream(logs / "responses.jsonl", std::ios::app) << "{\"session_id\":";
  RaterService again(pool(), logs.path());
  REQUIRE(again.session(sid));
  CHECK(again.session(sid)->cursor == 2u);
  CHECK(again.report().body["responses"] == 2);
  const auto next_id = again.next(sid).body["instance_id"];
  CHECK(next_id == again.session(sid)->slots[2]);
}

TEST_CASE("human report arithmetic") {
  std::vector<json> log;
  const auto add = [&](const char* topo, const char* verdict, double secs) {
    log.push_back({{"category", "Navigation"}, {"topology", topo}, {"verdict", verdict}, {"elapsed_s", secs}});
  };
  add("cartesian", "Correct", 600);
  add("cartesian", "Correct", 1200);
  add("polar", "IDontKnow", 900);
  add("polar", "Incorrect", 900);
  const auto rep = human_report(log);
  CHECK(rep["responses"] == 4);
  const auto& row = rep["rows"][0];
  CHECK(row["category"] == "Navigation");
  CHECK(row["correct_pct"] == 50.0);
  CHECK(row["idk_pct"] == 25.0);
  CHECK(row["incorrect_pct"] == 25.0);
  CHECK(row["avg_time_min"] == 15.0);
  CHECK(row["C"] == 100.0);
  CHECK(row["P"] == 0.0);
  CHECK(row["delta"] == 100.0);
  CHECK(row["by_topology"]["cartesian"]["n"].get<int>() + row["by_topology"]["polar"]["n"].get<int>() == 4);
  CHECK(human_report({})["overall"].is_null());
}

TEST_CASE("http routes") {
  TempDir logs("http"), data("httpds");
  std::vector<const Instance*> ptrs;
  for (const auto& i : pool()) ptrs.push_back(&i);
  write_dataset(ptrs, data.path());
  RaterService svc(pool(), logs.path());
  httplib::Server server;
  mount_routes(server, svc, {data.path(), {}});
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client cli("127.0.0.1", port);
  auto r = cli.Get("/api/session/new?alias=a&n=1&seed=3");
  REQUIRE(r);
  CHECK(r->status == 200);
  const auto sid = json::parse(r->body)["session_id"].get<std::string>();
  r = cli.Get("/api/session/" + sid + "/next");
  REQUIRE(r);
  const auto item = json::parse(r->body);
  CHECK_FALSE(item.contains("ground_truth"));
  auto img = cli.Get(item["image_url"].get<std::string>());
  REQUIRE(img);
  CHECK(img->status == 200);
  CHECK(img->body == item["image_svg"].get<std::string>());

  json body = {{"instance_id", item["instance_id"]}, {"verdict", "Correct"}, {"elapsed_s", 12.5}};
  r = cli.Post("/api/session/" + sid + "/response", body.dump(), "application/json");
  REQUIRE(r);
  CHECK(r->status == 200);
  r = cli.Post("/api/session/" + sid + "/response", "{oops", "application/json");
  CHECK(r->status == 400);
  r = cli.Get("/api/session/new?n=abc");
  CHECK(r->status == 400);
  r = cli.Get("/api/report/human");
  CHECK(json::parse(r->body)["responses"] == 1);

  server.stop();
  t.join();
}
