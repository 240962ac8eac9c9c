#include <algorithm>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include <unistd.h>

#include "polarbench/evalharness.hpp"

namespace polarbench {

namespace fs = std::filesystem;
using nlohmann::json;

TopologyFilter topology_filter_from_string(std::string_view s) {
  if (s == "c" || s == "cartesian") return TopologyFilter::Cartesian;
  if (s == "p" || s == "polar") return TopologyFilter::Polar;
  if (s == "both") return TopologyFilter::Both;
  throw std::invalid_argument("topology must be c, p or both, got '" + std::string(s) + "'");
}

namespace {

bool selected(const Instance& inst, const RunOptions& opt) {
  if (!opt.tasks.empty() && std::find(opt.tasks.begin(), opt.tasks.end(), inst.task_id) == opt.tasks.end()) {
    return false;
  }
  switch (opt.topology) {
    case TopologyFilter::Cartesian: return inst.topology == Topology::Cartesian;
    case TopologyFilter::Polar: return inst.topology == Topology::Polar;
    case TopologyFilter::Both: return true;
  }
  return false;
}

struct Job {
  const Instance* inst;
  int repeat;
};

// Appends one line and forces it to disk before returning.
class RecordLog {
 public:
  explicit RecordLog(const fs::path& p) : f_(std::fopen(p.c_str(), "ab")) {
    if (!f_) throw std::runtime_error("cannot open " + p.string());
  }
  ~RecordLog() { std::fclose(f_); }
  RecordLog(const RecordLog&) = delete;
  RecordLog& operator=(const RecordLog&) = delete;

  void append(const std::string& line) {
    std::lock_guard<std::mutex> lock(mu_);
    std::fwrite(line.data(), 1, line.size(), f_);
    std::fputc('\n', f_);
    std::fflush(f_);
    ::fsync(::fileno(f_));
  }

 private:
  std::FILE* f_;
  std::mutex mu_;
};

EvalRecord evaluate(const Instance& inst, int repeat, const std::vector<Instance>& all, const EndpointConfig& ep,
                    const RunOptions& opt) {
  EvalRecord r;
  r.instance_id = inst.id;
  r.mode = opt.mode;
  r.repeat = repeat;
  r.model = ep.model;
  const std::string rid = r.key();
  PromptInputs in;
  if (opt.mode == PromptMode::FewShot) in.exemplars = pick_exemplars(inst, all);
  if (opt.mode == PromptMode::TwoStageAnswer) {
    const auto cap = query_model(build_prompt(inst, PromptMode::TwoStageCaption), ep, rid + "|caption");
    r.caption = cap.raw;
    r.size_mention = check_grid_size_mention(cap.raw, inst.grid.major, inst.grid.minor);
    r.latency_ms += cap.latency_ms;
    r.truncated |= cap.truncated;
    in.caption = cap.raw;
  }
  if (opt.mode == PromptMode::TwoStageCaption) {
    const auto cap = query_model(build_prompt(inst, PromptMode::TwoStageCaption), ep, rid);
    r.raw_response = cap.raw;
    r.caption = cap.raw;
    r.size_mention = check_grid_size_mention(cap.raw, inst.grid.major, inst.grid.minor);
    r.latency_ms = cap.latency_ms;
    r.truncated = cap.truncated;
    return r;
  }
  const auto res = query_model(build_prompt(inst, opt.mode, in), ep, rid);
  r.raw_response = res.raw;
  r.reasoning_trace = res.trace;
  r.latency_ms += res.latency_ms;
  r.truncated |= res.truncated;
  grade(r, inst, opt.judge);
  return r;
}

}  // namespace

RunSummary run_eval(const fs::path& dataset_dir, const EndpointConfig& endpoint, const RunOptions& opt,
                    const fs::path& out_dir) {
  if (opt.repeats < 1) throw std::invalid_argument("repeats must be at least 1");
  const auto all = read_dataset(dataset_dir);
  fs::create_directories(out_dir);
  const auto log_path = out_dir / "records.jsonl";

  std::map<std::string, EvalRecord> done;
  if (fs::exists(log_path)) {
    for (auto& r : read_records(log_path)) done[r.key()] = std::move(r);
  }

  RunSummary sum;
  std::vector<Job> jobs;
  for (const auto& inst : all) {
    if (!selected(inst, opt)) continue;
    for (int k = 0; k < opt.repeats; ++k) {
      EvalRecord probe;
      probe.instance_id = inst.id;
      probe.mode = opt.mode;
      probe.repeat = k;
      auto it = done.find(probe.key());
      // Truncated answers are re-run.
      if (it != done.end() && !it->second.truncated) {
        ++sum.skipped;
        continue;
      }
      jobs.push_back({&inst, k});
    }
  }

  {
    RecordLog log(log_path);
    std::mutex mu;
    size_t next = 0;
    const auto worker = [&] {
      for (;;) {
        size_t i;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= jobs.size()) return;
          i = next++;
        }
        const Job& job = jobs[i];
        try {
          auto rec = evaluate(*job.inst, job.repeat, all, endpoint, opt);
          log.append(rec.to_json().dump());
          std::lock_guard<std::mutex> lock(mu);
          ++sum.queried;
          done[rec.key()] = std::move(rec);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(mu);
          sum.failures.push_back(job.inst->id + ": " + e.what());
        }
      }
    };
    const size_t n = std::min<size_t>(static_cast<size_t>(endpoint.concurrency), std::max<size_t>(jobs.size(), 1));
    std::vector<std::thread> pool;
    for (size_t t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::sort(sum.failures.begin(), sum.failures.end());

  // Compact the log: one line per key, sorted, so reruns converge on the same file.
  std::string compact;
  for (const auto& [key, rec] : done) compact += rec.to_json().dump() + "\n";
  const auto tmp = out_dir / "records.jsonl.tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << compact;
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, log_path);

  json run = {{"dataset", fs::absolute(dataset_dir).lexically_normal().string()},
              {"model", endpoint.model},
              {"mode", std::string(to_string(opt.mode))}};
  std::ofstream(out_dir / "run.json", std::ios::binary | std::ios::trunc) << run.dump(2) << "\n";
  return sum;
}

}  // namespace polarbench
