#include "polarbench/cli.hpp"

#include <algorithm>
#include <charconv>
#include <csignal>
#include <fstream>

#include "CLI11.hpp"
#include "httplib.h"
#include "polarbench/dataset.hpp"
#include "polarbench/evalharness.hpp"
#include "polarbench/server.hpp"
#include "polarbench/taskgen.hpp"

namespace polarbench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument(p.string() + " is not valid JSON: " + e.what());
  }
}

void write_text(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
  if (!out) throw std::runtime_error("cannot write " + p.string());
}

std::string fixed1(double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 1);
  return std::string(buf, r.ptr);
}

std::string pad(std::string s, size_t w) {
  if (s.size() < w) s += std::string(w - s.size(), ' ');
  return s;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  for (size_t b = 0; b <= s.size();) {
    const size_t e = std::min(s.find(',', b), s.size());
    if (e > b) out.push_back(s.substr(b, e - b));
    b = e + 1;
  }
  return out;
}

// ---- gen -------------------------------------------------------------------

int cmd_gen(const std::string& config_path, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  GenConfig cfg;
  try {
    if (!config_path.empty()) cfg = GenConfig::from_json(read_json_file(config_path));
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  Dataset ds;
  try {
    ds = generate_dataset(cfg.selected_tasks(), cfg);
  } catch (const GenerationExhausted& e) {
    err << "error: generation exhausted for task " << e.task_id() << ": " << e.what() << "\n";
    return kExitFailure;
  }
  const auto manifest = write_dataset(ds, out_dir);
  out << pad("task", 20) << pad("pairs", 7) << pad("variants", 10) << pad("attempts", 10) << "rejection %\n";
  for (const auto& t : cfg.selected_tasks()) {
    const auto& s = ds.stats.at(t.task_id);
    out << pad(t.task_id, 20) << pad(std::to_string(s.pairs), 7) << pad(std::to_string(s.variants), 10)
        << pad(std::to_string(s.attempts), 10) << fixed1(100.0 * s.rejection_rate()) << "\n";
  }
  out << "wrote " << ds.instances().size() << " instances to " << manifest.string() << "\n";
  return kExitOk;
}

// ---- validate --------------------------------------------------------------

int cmd_validate(const std::string& dir, std::ostream& out, std::ostream& err) {
  std::vector<ManifestEntry> entries;
  try {
    entries = read_manifest(dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  json failures = json::array();
  for (const auto& e : entries) {
    json failed = json::array();
    if (!e.image_problem.empty()) {
      failed.push_back({{"check", "image"}, {"detail", e.image_problem}});
    } else {
      for (const auto& c : validate_instance(e.instance).checks)
        if (!c.ok) failed.push_back({{"check", c.name}, {"detail", c.detail}});
    }
    if (!failed.empty()) failures.push_back({{"id", e.instance.id}, {"failed", failed}});
  }
  out << json{{"checked", entries.size()}, {"failures", failures}}.dump(2) << "\n";
  return failures.empty() ? kExitOk : kExitFailure;
}

// ---- eval / report ---------------------------------------------------------

int write_report(const std::vector<EvalRecord>& records, const std::vector<Instance>& manifest,
                 const fs::path& dir, std::ostream& out, std::ostream& err) {
  AggregateReport rep;
  try {
    rep = aggregate(records, manifest);
  } catch (const AggregationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  write_text(dir / "report.json", rep.to_json().dump(2) + "\n");
  write_text(dir / "report.txt", rep.to_text());
  out << rep.to_text();
  return kExitOk;
}

struct EvalArgs {
  std::string dataset, endpoint, mode = "standard", topology = "both", out, tasks;
  int repeats = 1;
};

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  EndpointConfig ep;
  RunOptions opt;
  try {
    ep = EndpointConfig::from_json(read_json_file(a.endpoint));
    opt.mode = prompt_mode_from_string(a.mode);
    if (opt.mode == PromptMode::TwoStageCaption) throw std::invalid_argument("use --mode two-stage for the probe");
    opt.topology = topology_filter_from_string(a.topology);
    opt.repeats = a.repeats;
    opt.tasks = split_list(a.tasks);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  RunSummary sum;
  try {
    sum = run_eval(a.dataset, ep, opt, a.out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  err << "queried " << sum.queried << ", skipped " << sum.skipped << " already recorded, " << sum.failures.size()
      << " failed\n";
  for (const auto& f : sum.failures) err << "  " << f << "\n";
  const int rc = write_report(read_records(fs::path(a.out) / "records.jsonl"), read_dataset(a.dataset), a.out, out, err);
  return sum.failures.empty() ? rc : kExitFailure;
}

int cmd_report(const std::string& records_dir, std::string dataset, std::ostream& out, std::ostream& err) {
  try {
    if (dataset.empty()) {
      const auto run = fs::path(records_dir) / "run.json";
      if (!fs::exists(run)) throw std::invalid_argument("no --dataset given and " + run.string() + " is missing");
      dataset = read_json_file(run).at("dataset").get<std::string>();
    }
    return write_report(read_records(fs::path(records_dir) / "records.jsonl"), read_dataset(dataset), records_dir,
                        out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

// ---- baseline --------------------------------------------------------------

int cmd_baseline(const std::string& dir, bool as_json, std::ostream& out, std::ostream& err) {
  std::vector<Instance> all;
  try {
    all = read_dataset(dir);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  json rows = json::array();
  std::string text = pad("task", 20) + pad("answer", 13) + pad("n", 7) + "random %\n";
  for (const auto& t : catalog()) {
    std::vector<const Instance*> sample;
    for (const auto& i : all)
      if (i.task_id == t.task_id) sample.push_back(&i);
    if (sample.empty()) continue;
    const double b = random_baseline(t, sample);
    rows.push_back({{"task_id", t.task_id}, {"n", sample.size()}, {"random_baseline", round1(b)}});
    text += pad(t.task_id, 20) + pad(std::string(to_string(t.answer_type)), 13) + pad(std::to_string(sample.size()), 7) +
            fixed1(round1(b)) + "\n";
  }
  out << (as_json ? rows.dump(2) + "\n" : text);
  return kExitOk;
}

// ---- serve -----------------------------------------------------------------

httplib::Server* g_server = nullptr;

void stop_server(int) {
  if (g_server) g_server->stop();
}

int cmd_serve(const std::string& host, int port, const std::string& dataset, const std::string& log_dir,
              const std::string& ui_dir, std::ostream& out, std::ostream& err) {
  std::vector<Instance> all;
  try {
    all = read_dataset(dataset);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  RaterService service(std::move(all), log_dir);
  httplib::Server server;
  mount_routes(server, service, {dataset, ui_dir});
  g_server = &server;
  std::signal(SIGINT, stop_server);
  std::signal(SIGTERM, stop_server);
  out << "serving " << dataset << " on http://" << host << ":" << port << "\n" << std::flush;
  const bool ok = server.listen(host, port);
  g_server = nullptr;
  if (!ok) {
    err << "error: cannot listen on " << host << ":" << port << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Paired Cartesian/Polar visual reasoning benchmark tools", "polarbench"};
  app.require_subcommand(1, 1);

  std::string gen_config, gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a dataset and write manifest.jsonl plus images/");
  gen->add_option("--config", gen_config, "Generation config (JSON); defaults apply when omitted")
      ->check(CLI::ExistingFile);
  gen->add_option("--out", gen_out, "Output directory")->required();

  std::string val_dir;
  auto* val = app.add_subcommand("validate", "Re-check every instance of a dataset against its oracle");
  val->add_option("--dataset", val_dir, "Dataset directory")->required();

  EvalArgs ea;
  auto* ev = app.add_subcommand("eval", "Query a model endpoint on a dataset and report accuracy");
  ev->add_option("--dataset", ea.dataset, "Dataset directory")->required();
  ev->add_option("--endpoint", ea.endpoint, "Endpoint config (JSON)")->required()->check(CLI::ExistingFile);
  ev->add_option("--mode", ea.mode, "standard, conversion-hint, few-shot or two-stage")->capture_default_str();
  ev->add_option("--topology", ea.topology, "c, p or both")->capture_default_str();
  ev->add_option("--out", ea.out, "Directory for records.jsonl and the report")->required();
  ev->add_option("--repeats", ea.repeats, "Runs per instance")->capture_default_str()->check(CLI::PositiveNumber);
  ev->add_option("--tasks", ea.tasks, "Comma-separated task ids (default: all)");

  std::string rep_dir, rep_dataset;
  auto* rep = app.add_subcommand("report", "Aggregate an eval records directory into report.json and report.txt");
  rep->add_option("--records", rep_dir, "Directory holding records.jsonl")->required();
  rep->add_option("--dataset", rep_dataset, "Dataset directory (default: the one recorded by eval)");

  std::string srv_host = "127.0.0.1", srv_dataset, srv_logs = "rater_logs", srv_ui = "ui/dist";
  int srv_port = 8080;
  auto* srv = app.add_subcommand("serve", "Run the human rater service");
  srv->add_option("--port", srv_port, "TCP port")->capture_default_str();
  srv->add_option("--host", srv_host, "Bind address")->capture_default_str();
  srv->add_option("--dataset", srv_dataset, "Dataset directory")->required();
  srv->add_option("--log-dir", srv_logs, "Directory for the session and response logs")->capture_default_str();
  srv->add_option("--ui-dir", srv_ui, "Built rater UI served under /ui/")->capture_default_str();

  std::string base_dir;
  bool base_json = false;
  auto* base = app.add_subcommand("baseline", "Expected accuracy of a uniform random answerer per task");
  base->add_option("--dataset", base_dir, "Dataset directory")->required();
  base->add_flag("--json", base_json, "Print JSON instead of a table");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(gen_config, gen_out, out, err);
    if (*val) return cmd_validate(val_dir, out, err);
    if (*ev) return cmd_eval(ea, out, err);
    if (*rep) return cmd_report(rep_dir, rep_dataset, out, err);
    if (*srv) return cmd_serve(srv_host, srv_port, srv_dataset, srv_logs, srv_ui, out, err);
    if (*base) return cmd_baseline(base_dir, base_json, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace polarbench
