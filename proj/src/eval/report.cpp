#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "polarbench/evalharness.hpp"

namespace polarbench {

using nlohmann::json;

double round1(double v) { return std::round(v * 10.0) / 10.0; }

std::string EvalRecord::key() const {
  return instance_id + "|" + std::string(to_string(mode)) + "|" + std::to_string(repeat);
}

json EvalRecord::to_json() const {
  json j;
  j["instance_id"] = instance_id;
  j["mode"] = std::string(to_string(mode));
  j["repeat"] = repeat;
  j["model"] = model;
  j["raw_response"] = raw_response;
  j["reasoning_trace"] = reasoning_trace ? json(*reasoning_trace) : json(nullptr);
  j["parsed"] = parsed ? polarbench::to_json(*parsed) : json(nullptr);
  j["parse_failed"] = !parsed.has_value();
  j["correct"] = correct ? json(*correct) : json(nullptr);
  j["judged_by"] = judged_by;
  j["latency_ms"] = latency_ms;
  j["truncated"] = truncated;
  if (caption) j["caption"] = *caption;
  if (size_mention) j["grid_size_mention"] = std::string(to_string(*size_mention));
  return j;
}

EvalRecord EvalRecord::from_json(const json& j) {
  EvalRecord r;
  r.instance_id = j.at("instance_id").get<std::string>();
  r.mode = prompt_mode_from_string(j.at("mode").get<std::string>());
  r.repeat = j.value("repeat", 0);
  r.model = j.value("model", std::string());
  r.raw_response = j.value("raw_response", std::string());
  if (j.contains("reasoning_trace") && j["reasoning_trace"].is_string()) r.reasoning_trace = j["reasoning_trace"];
  if (j.contains("parsed") && !j["parsed"].is_null()) r.parsed = answer_from_json(j["parsed"]);
  if (j.contains("correct") && j["correct"].is_boolean()) r.correct = j["correct"].get<bool>();
  r.judged_by = j.value("judged_by", std::string());
  r.latency_ms = j.value("latency_ms", int64_t{0});
  r.truncated = j.value("truncated", false);
  if (j.contains("caption") && j["caption"].is_string()) r.caption = j["caption"];
  if (j.contains("grid_size_mention")) {
    const auto m = j["grid_size_mention"].get<std::string>();
    for (auto v : {SizeMention::Correct, SizeMention::Incorrect, SizeMention::Unmentioned})
      if (to_string(v) == m) r.size_mention = v;
  }
  return r;
}

std::vector<EvalRecord> read_records(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::vector<EvalRecord> out;
  std::string line;
  for (int n = 1; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    try {
      out.push_back(EvalRecord::from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error(file.string() + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

void grade(EvalRecord& r, const Instance& inst, const JudgeHook& judge) {
  r.parsed = parse_answer(r.raw_response, type_of(inst.ground_truth));
  r.correct.reset();
  r.judged_by.clear();
  if (r.parsed) {
    r.correct = score(*r.parsed, inst.ground_truth);
    r.judged_by = "exact";
  } else if (judge) {
    if (auto v = judge(inst, r.raw_response)) {
      r.correct = *v;
      r.judged_by = "judge";
    }
  }
}

// ---- Aggregation -----------------------------------------------------------

std::optional<double> Accuracy::pct() const {
  if (n == 0) return std::nullopt;
  return round1(100.0 * correct / n);
}

namespace {

std::optional<double> pct_of(const std::map<std::string, Accuracy>& m, const std::string& key) {
  auto it = m.find(key);
  return it == m.end() ? std::nullopt : it->second.pct();
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string right(const std::string& s, size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string fmt(const std::optional<double>& v, int width) {
  std::string s = "-";
  if (v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, *v, std::chars_format::fixed, 1);
    s.assign(buf, r.ptr);
    if (s == "-0.0") s = "0.0";
  }
  return right(s, static_cast<size_t>(width));
}

std::string pad(const std::string& s, size_t width) { return s.size() >= width ? s : s + std::string(width - s.size(), ' '); }

}  // namespace

std::optional<double> ScopeRow::cartesian() const { return pct_of(by_topology, std::string(to_string(Topology::Cartesian))); }
std::optional<double> ScopeRow::polar() const { return pct_of(by_topology, std::string(to_string(Topology::Polar))); }
std::optional<double> ScopeRow::delta() const {
  const auto c = cartesian(), p = polar();
  if (!c || !p) return std::nullopt;
  return round1(*c - *p);
}

const ScopeRow* AggregateReport::find(const std::string& scope, const std::string& name) const {
  for (const auto& r : rows)
    if (r.scope == scope && r.name == name) return &r;
  return nullptr;
}

AggregateReport aggregate(const std::vector<EvalRecord>& records, const std::vector<Instance>& manifest) {
  std::map<std::string, const Instance*> by_id;
  for (const auto& i : manifest) by_id[i.id] = &i;
  std::set<std::string> orphans;
  for (const auto& r : records)
    if (!by_id.count(r.instance_id)) orphans.insert(r.instance_id);
  if (!orphans.empty()) {
    std::string list;
    for (const auto& o : orphans) list += (list.empty() ? "" : ", ") + o;
    throw AggregationError("records reference instances missing from the manifest: " + list);
  }

  // Rows are created in a fixed order so the report does not depend on record order.
  AggregateReport rep;
  std::map<std::pair<std::string, std::string>, ScopeRow> rows;
  std::vector<std::pair<std::string, std::string>> order{{"overall", "all"}};
  for (const auto& t : catalog())
    if (std::find(order.begin(), order.end(), std::make_pair(std::string("category"), t.category)) == order.end())
      order.emplace_back("category", t.category);
  for (const auto& t : catalog()) order.emplace_back("task", t.task_id);
  for (auto a : {Alignment::FullyAligned, Alignment::PartiallyAligned}) order.emplace_back("alignment", to_string(a));
  for (auto b : {Boundary::Bounded, Boundary::Wrapping}) order.emplace_back("boundary", to_string(b));

  for (const auto& r : records) {
    const Instance& inst = *by_id.at(r.instance_id);
    const TaskSpec& task = find_task(inst.task_id);
    const std::string topo(to_string(inst.topology));
    const bool ok = r.correct.value_or(false);
    ++rep.records;
    rep.unjudged += !r.correct.has_value();
    rep.truncated += r.truncated;
    // Boundary strata follow the Polar member of the pair.
    const std::pair<std::string, std::string> keys[] = {
        {"overall", "all"},
        {"category", task.category},
        {"task", task.task_id},
        {"alignment", std::string(to_string(task.alignment))},
        {"boundary", std::string(to_string(side_boundary(task, Topology::Polar)))}};
    for (const auto& k : keys) {
      auto& acc = rows[k].by_topology[topo];
      ++acc.n;
      acc.correct += ok;
    }
    if (r.reasoning_trace && !r.reasoning_trace->empty()) {
      auto& acc = rep.coordinate_invocation[topo];
      ++acc.n;
      acc.correct += detect_coordinate_invocation(*r.reasoning_trace);
    }
  }
  for (const auto& k : order) {
    auto it = rows.find(k);
    if (it == rows.end()) continue;
    it->second.scope = k.first;
    it->second.name = k.second;
    rep.rows.push_back(it->second);
  }
  return rep;
}

json AggregateReport::to_json() const {
  json j;
  j["records"] = records;
  j["unjudged"] = unjudged;
  j["truncated"] = truncated;
  json rs = json::array();
  for (const auto& r : rows) {
    json t = json::object();
    for (const auto& [topo, acc] : r.by_topology)
      t[topo] = {{"n", acc.n}, {"correct", acc.correct}, {"accuracy", opt(acc.pct())}};
    rs.push_back({{"scope", r.scope},
                  {"name", r.name},
                  {"C", opt(r.cartesian())},
                  {"P", opt(r.polar())},
                  {"delta", opt(r.delta())},
                  {"by_topology", t}});
  }
  j["rows"] = rs;
  json ci = json::object();
  for (const auto& [topo, acc] : coordinate_invocation)
    ci[topo] = {{"traces", acc.n}, {"invoking", acc.correct}, {"rate", opt(acc.pct())}};
  j["coordinate_invocation"] = ci;
  j["coordinate_invocation_method"] = "lexical detector; approximates a judge-based count";
  return j;
}

std::string AggregateReport::to_text() const {
  std::string out = pad("scope", 34) + "     C       P   Delta    n(C)   n(P)\n";
  for (const auto& r : rows) {
    const std::string cart(to_string(Topology::Cartesian)), polar(to_string(Topology::Polar));
    const auto n = [&](const std::string& t) {
      auto it = r.by_topology.find(t);
      return it == r.by_topology.end() ? 0 : it->second.n;
    };
    const std::string label = r.scope == "overall" ? "overall" : r.scope + ": " + r.name;
    out += pad(label, 34) + fmt(r.cartesian(), 6) + fmt(r.polar(), 8) + fmt(r.delta(), 8) +
           right(std::to_string(n(cart)), 8) + right(std::to_string(n(polar)), 7) + "\n";
    for (const auto& [topo, acc] : r.by_topology) {
      if (topo == cart || topo == polar) continue;
      out += pad("  " + topo + " layout", 34) + fmt(acc.pct(), 6) + "  (n=" + std::to_string(acc.n) + ")\n";
    }
  }
  out += "records: " + std::to_string(records) + ", unjudged: " + std::to_string(unjudged) +
         ", truncated: " + std::to_string(truncated) + "\n";
  if (!coordinate_invocation.empty()) {
    out += "coordinate invocation (lexical detector, approximates a judge-based count):";
    for (const auto& [topo, acc] : coordinate_invocation)
      out += " " + topo + " " + fmt(acc.pct(), 0) + "% of " + std::to_string(acc.n) + " traces;";
    out.back() = '\n';
  }
  return out;
}

}  // namespace polarbench
