// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "naive.hpp"
#include "polarbench/cli.hpp"
#include "polarbench/dataset.hpp"
#include "polarbench/evalharness.hpp"
#include "polarbench/oracles.hpp"
#include "polarbench/rng.hpp"
#include "stub_endpoint.hpp"
#include "testing.hpp"

using namespace polarbench;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Verdict {
  bool ok = true;
  std::string detail;
};

int run(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int rc = run_cli(args, out, err);
  if (out_text) *out_text = out.str();
  if (rc != 0 && !err.str().empty()) std::cerr << err.str();
  return rc;
}

/// Relative paths of every file under `root`, sorted.
std::vector<std::string> tree(const fs::path& root) {
  std::vector<std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out.push_back(fs::relative(e.path(), root).string());
  std::sort(out.begin(), out.end());
  return out;
}

GridSpec grid(Topology t, int major, int minor, Boundary b) {
  GridSpec g;
  g.topology = t;
  g.major = major;
  g.minor = minor;
  g.boundary = b;
  return g;
}

GridSpec small_grid(Rng& rng, bool allow_wrap) {
  const Topology t = rng.bernoulli(0.5) ? Topology::Polar : Topology::Cartesian;
  const int minor = rng.uniform_int(t == Topology::Polar ? 3 : 1, 8);
  const int major = rng.uniform_int(1, std::max(1, 16 / minor));
  return grid(t, major, minor, allow_wrap && rng.bernoulli(0.5) ? Boundary::Wrapping : Boundary::Bounded);
}

CellRef random_cell(Rng& rng, const GridSpec& g) {
  return {rng.uniform_int(0, g.major - 1), rng.uniform_int(0, g.minor - 1)};
}

std::vector<naive::Offset> offsets(const MoveSet& m) {
  std::vector<naive::Offset> out;
  for (const auto& mv : m.moves) out.push_back({mv.d_major, mv.d_minor});
  return out;
}

std::vector<Instance> generate(const std::vector<std::string>& tasks, int n, uint64_t base_seed) {
  GenConfig cfg;
  cfg.n_per_task = n;
  cfg.base_seed = base_seed;
  cfg.tasks = tasks;
  cfg.layout_variants = false;
  return testing::owned(generate_dataset(cfg.selected_tasks(), cfg).instances());
}

const Instance* by_id(const std::vector<Instance>& all, const std::string& id) {
  for (const auto& i : all)
    if (i.id == id) return &i;
  return nullptr;
}

// ---------------------------------------------------------------------------

struct Context {
  testing::TempDir work{"acceptance"};
  fs::path dataset() const { return work / "ds1"; }
  std::vector<Instance> instances;  // the 100-per-task dataset, read back from disk
};

Verdict a1(Context& ctx) {
  testing::spit(ctx.work / "config.json", R"({"n_per_task": 100})");
  const auto t0 = Clock::now();
  if (run({"gen", "--config", (ctx.work / "config.json").string(), "--out", ctx.dataset().string()}) != 0) {
    return {false, "first gen failed"};
  }
  const double secs = seconds_since(t0);
  if (run({"gen", "--config", (ctx.work / "config.json").string(), "--out", (ctx.work / "ds2").string()}) != 0) {
    return {false, "second gen failed"};
  }
  const auto a = tree(ctx.dataset()), b = tree(ctx.work / "ds2");
  if (a != b) return {false, "file trees differ"};
  for (const auto& f : a) {
    if (testing::slurp(ctx.dataset() / f) != testing::slurp(ctx.work / "ds2" / f)) return {false, f + " differs"};
  }
  ctx.instances = read_dataset(ctx.dataset());
  return {secs < 300.0, std::to_string(a.size()) + " files byte-identical; 100 pairs/task in " + fmt("%.1f s", secs)};
}

Verdict a2(Context& ctx) {
  std::string out;
  const int rc = run({"validate", "--dataset", ctx.dataset().string()}, &out);
  const auto j = json::parse(out);
  const bool ok = rc == 0 && j["failures"].empty() && j["checked"].get<size_t>() == ctx.instances.size();
  return {ok, std::to_string(j["checked"].get<size_t>()) + " checked, " + std::to_string(j["failures"].size()) +
                  " failed"};
}

Verdict a3(Context& ctx) {
  int pairs = 0, mapped = 0, truth_only = 0;
  std::vector<std::string> bad;
  for (const auto& p : ctx.instances) {
    if (p.topology != Topology::Polar) continue;
    const auto& task = find_task(p.task_id);
    if (task.alignment != Alignment::FullyAligned) continue;
    const Instance* c = by_id(ctx.instances, p.task_id + "_cartesian_" + std::to_string(p.seed));
    if (!c) {
      bad.push_back(p.id + ": no counterpart");
      continue;
    }
    ++pairs;
    if (!(c->ground_truth == p.ground_truth)) bad.push_back(p.id + ": truths differ");
    // Polar puzzle content read through map_cell as a Cartesian grid.
    if (task.task_id == "grid_rotation") {
      ++truth_only;  // rotation is a sector shift on the disc, a quarter turn on the square
      continue;
    }
    Instance as_cart = p;
    as_cart.grid = mapped_spec(p.grid);
    as_cart.topology = Topology::Cartesian;
    if (!(solve_instance(as_cart) == c->ground_truth)) bad.push_back(p.id + ": mapped oracle differs");
    ++mapped;
  }
  std::string detail = std::to_string(pairs) + " fully aligned pairs, " + std::to_string(mapped) +
                       " re-solved through map_cell, " + std::to_string(truth_only) + " grid_rotation truth-only";
  if (!bad.empty()) detail += "; first mismatch " + bad.front();
  return {bad.empty() && pairs > 0, detail};
}

Verdict a4(Context&) {
  const auto knights = generate({"knight_paths"}, 1000, 0);
  int pairs = 0, below = 0, strictly = 0;
  for (const auto& p : knights) {
    if (p.topology != Topology::Polar) continue;
    const Instance* c = by_id(knights, "knight_paths_cartesian_" + std::to_string(p.seed));
    const auto wrap = std::get<Digit>(p.ground_truth).value, bound = std::get<Digit>(c->ground_truth).value;
    ++pairs;
    below += wrap < bound;
    strictly += wrap > bound;
  }
  const auto flips = generate({"minimum_flips"}, 1000, 0);
  int diverging = 0;
  for (const auto& p : flips) {
    if (p.topology != Topology::Polar) continue;
    const Instance* c = by_id(flips, "minimum_flips_cartesian_" + std::to_string(p.seed));
    diverging += !(c->ground_truth == p.ground_truth);
  }
  return {pairs == 1000 && below == 0 && diverging > 0,
          "knight " + std::to_string(pairs) + " pairs, wrapping < bounded in " + std::to_string(below) +
              " (strictly more in " + std::to_string(strictly) + "); minimum_flips Bounded != Wrapping in " +
              std::to_string(diverging) + "/1000"};
}

Verdict a5(Context&) {
  constexpr int kConfigs = 500;
  std::map<std::string, int> mismatches;
  Rng rng(derive_seed("acceptance_a5", 0));

  for (int i = 0; i < kConfigs; ++i) {
    const auto g = small_grid(rng, false);
    const auto moves = rng.bernoulli(0.5) ? MoveSet::right_down() : MoveSet::right_down_diagonal();
    const auto a = random_cell(rng, g), b = random_cell(rng, g);
    std::set<CellRef> blocked;
    for (const auto& c : all_cells(g))
      if (c != a && c != b && rng.bernoulli(0.2)) blocked.insert(c);
    std::optional<CellRef> cp;
    if (rng.bernoulli(0.3)) cp = random_cell(rng, g);
    mismatches["monotone_paths"] +=
        count_monotone_paths(g, moves, a, b, blocked, cp) != naive::enumerate_paths(g, offsets(moves), a, b, blocked, cp);
  }
  for (int i = 0; i < kConfigs; ++i) {
    const auto g = small_grid(rng, true);
    const auto a = random_cell(rng, g), b = random_cell(rng, g);
    const int k = rng.uniform_int(0, 4);
    mismatches["knight_walks"] += count_fixed_length_walks(g, MoveSet::knight(), a, b, k) !=
                                  naive::enumerate_walks(g, offsets(MoveSet::knight()), a, b, k);
  }
  for (int i = 0; i < kConfigs; ++i) {
    const auto g = small_grid(rng, true);
    std::map<CellRef, char> letters;
    for (const auto& c : all_cells(g)) letters[c] = static_cast<char>('A' + rng.uniform_int(0, 2));
    const auto start = random_cell(rng, g);
    std::string word(1, letters[start]);
    const int len = rng.uniform_int(1, 5);
    while (static_cast<int>(word.size()) < len) word += static_cast<char>('A' + rng.uniform_int(0, 2));
    mismatches["word_paths"] +=
        count_word_paths(g, letters, word, start) != naive::enumerate_word_paths(g, letters, word, start);
  }
  for (int i = 0; i < kConfigs; ++i) {
    const int n = rng.uniform_int(1, 4);
    const Boundary b = rng.bernoulli(0.5) ? Boundary::Wrapping : Boundary::Bounded;
    std::set<CellRef> fixed;
    if (rng.bernoulli(0.5)) fixed.insert({rng.uniform_int(0, n - 1), rng.uniform_int(0, n - 1)});
    mismatches["queens"] +=
        count_queen_completions(n, fixed, b).count != naive::permutation_queens(n, fixed, b == Boundary::Wrapping);
  }
  const std::vector<int> solved{1, 2, 3, 4, 3, 4, 1, 2, 2, 1, 4, 3, 4, 3, 2, 1};
  for (int i = 0; i < kConfigs; ++i) {
    auto b = SudokuBoard::empty(4);
    for (int k = 0; k < 16; ++k)
      if (rng.bernoulli(0.45)) b.cells[static_cast<size_t>(k)] = solved[static_cast<size_t>(k)];
    const CellRef cell{rng.uniform_int(0, 3), rng.uniform_int(0, 3)};
    const uint64_t completions = naive::sudoku_completions(4, 2, 2, b.cells, 2);
    bool agree = sudoku_has_completion(b) == (completions > 0);
    if (completions == 1) agree = agree && solve_sudoku_cell(b, cell) == solved[static_cast<size_t>(cell.major * 4 + cell.minor)];
    mismatches["sudoku"] += !agree;
  }
  for (int i = 0; i < kConfigs; ++i) {
    const int n = rng.uniform_int(3, kMaxFlipCells);
    const int strip = rng.uniform_int(1, n);
    std::vector<int> cells, target;
    for (int k = 0; k < n; ++k) {
      cells.push_back(rng.uniform_int(0, 1));
      target.push_back(rng.uniform_int(0, 1));
    }
    for (Boundary b : {Boundary::Bounded, Boundary::Wrapping})
      mismatches["minimum_flips"] +=
          min_flip_moves(cells, strip, target, b) != naive::subset_min_flips(cells, strip, target, b == Boundary::Wrapping);
  }

  // Exact walk probabilities against simulation on generated random_walk instances.
  const auto walks = generate({"random_walk"}, 10, 0);
  double worst = 0;
  int checked = 0;
  for (const auto& inst : walks) {
    const auto cell = [&](const char* k) { return CellRef{inst.puzzle.at(k).at(0).get<int>(), inst.puzzle.at(k).at(1).get<int>()}; };
    const auto exact = walk_pass_probability(inst.grid, cell("a"), cell("b"), cell("c")).to_double();
    const double mc = naive::monte_carlo_pass(inst.grid, cell("a"), cell("b"), cell("c"), 1000000, inst.seed + 1);
    worst = std::max(worst, std::abs(mc - exact));
    ++checked;
  }
  int total = 0;
  std::string detail;
  for (const auto& [name, n] : mismatches) {
    total += n;
    detail += name + " " + std::to_string(n) + "/" + std::to_string(name == "minimum_flips" ? 2 * kConfigs : kConfigs) + ", ";
  }
  detail += "walk probability max |MC - exact| = " + fmt("%.4f", worst) + " over " + std::to_string(checked) +
            " instances x 1e6 trials";
  return {total == 0 && checked == 20 && worst <= 0.01, "mismatches: " + detail};
}

Verdict a6(Context& ctx) {
  std::string out;
  if (run({"baseline", "--dataset", ctx.dataset().string(), "--json"}, &out) != 0) return {false, "baseline failed"};
  const auto rows = json::parse(out);
  std::vector<std::string> bad;
  std::map<std::string, std::vector<std::string>> seen;  // expected value -> tasks
  for (const auto& row : rows) {
    const auto& task = find_task(row["task_id"].get<std::string>());
    const double got = row["random_baseline"].get<double>();
    std::optional<double> expected;
    if (task.option_counts.size() == 1) expected = round1(100.0 / task.option_counts[0]);
    if (task.option_counts.empty() && !task.finite_coordinate_domain) expected = 0.0;
    if (!expected) continue;
    seen[fmt("%.1f", *expected)].push_back(task.task_id);
    if (got != *expected) bad.push_back(task.task_id + "=" + fmt("%.1f", got));
  }
  // The only four-option items are mazes with four entrances.
  std::vector<const Instance*> four;
  for (const auto& i : ctx.instances)
    if (i.task_id == "maze" && i.options.size() == 4) four.push_back(&i);
  std::string four_out;
  if (!four.empty()) {
    write_dataset(four, ctx.work / "four");
    run({"baseline", "--dataset", (ctx.work / "four").string(), "--json"}, &four_out);
    const double got = json::parse(four_out)[0]["random_baseline"].get<double>();
    seen["25.0"].push_back("maze[4 options]");
    if (got != 25.0) bad.push_back("maze[4 options]=" + fmt("%.1f", got));
  }

  // Simulated random answerer over 10,000 instances per task.
  const auto big = generate({}, 5000, 1);
  Rng rng(derive_seed("acceptance_a6", 0));
  double worst = 0;
  for (const auto& task : catalog()) {
    std::vector<const Instance*> sample;
    for (const auto& i : big)
      if (i.task_id == task.task_id) sample.push_back(&i);
    int hits = 0;
    for (const auto* inst : sample) {
      const size_t k = answer_domain_size(task, *inst);
      Answer guess;
      if (!inst->options.empty()) {
        // Pick an option; open-typed tasks with options answer with its value.
        const auto pick = static_cast<size_t>(rng.uniform_int(0, static_cast<int>(k) - 1));
        if (task.answer_type == AnswerType::OptionLabel) {
          guess = OptionLabel{option_letter(pick)};
        } else {
          const auto parsed = parse_answer("Answer: " + inst->options[pick], task.answer_type);
          if (!parsed) throw std::runtime_error(inst->id + ": option text does not parse");
          guess = *parsed;
        }
      } else if (k > 0) {
        const int cell = rng.uniform_int(0, static_cast<int>(k) - 1);
        guess = Coordinate{cell / inst->grid.minor, cell % inst->grid.minor};
      } else if (task.answer_type == AnswerType::Str) {
        std::string s;
        for (int j = 0; j < 8; ++j) s += static_cast<char>('A' + rng.uniform_int(0, 25));
        guess = Str{s};
      } else if (task.answer_type == AnswerType::IntList) {
        guess = IntList{{rng.uniform_int(int64_t{1}, int64_t{1} << 40)}};
      } else {
        guess = Digit{rng.uniform_int(int64_t{0}, int64_t{1} << 40)};
      }
      hits += score(guess, inst->ground_truth);
    }
    const double sim = 100.0 * hits / static_cast<double>(sample.size());
    const double analytic = random_baseline(task, sample);
    worst = std::max(worst, std::abs(sim - analytic));
    if (sample.size() != 10000 || std::abs(sim - analytic) > 2.0) {
      bad.push_back(task.task_id + " simulated " + fmt("%.2f", sim) + " vs " + fmt("%.2f", analytic));
    }
  }
  std::string detail;
  for (const auto& [v, tasks] : seen) detail += v + ": " + std::to_string(tasks.size()) + " tasks; ";
  detail += "simulated answerer max deviation " + fmt("%.2f", worst) + " points over 10000 instances/task";
  if (!bad.empty()) detail += "; off: " + bad.front();
  return {bad.empty() && seen.count("20.0") && seen.count("16.7") && seen.count("25.0") && seen.count("0.0"), detail};
}

Verdict a7(Context&) {
  std::string detail;
  bool ok = true;
  for (int n : {4, 6, 8, 9, 10, 12}) {
    const auto t0 = Clock::now();
    const auto r = count_queen_completions(n, {}, Boundary::Wrapping);
    const double secs = seconds_since(t0);
    ok = ok && r.count == 0 && secs < 10.0;
    detail += "N=" + std::to_string(n) + ":" + std::to_string(r.count) + " (" + fmt("%.2f s", secs) + ") ";
  }
  // Independent permutation search where it is cheap enough.
  for (int n : {4, 6, 8, 9}) ok = ok && naive::permutation_queens(n, {}, true) == 0;
  return {ok, detail + "; permutation search agrees up to N=9"};
}

Verdict a8(Context& ctx) {
  EndpointConfig ep;
  ep.model = "stub";
  ep.backoff_ms = 1;
  ep.concurrency = 8;
  ep.timeout_s = 30;

  testing::StubEndpoint echo([&](const std::string& rid, const json&) {
    const Instance* inst = by_id(ctx.instances, testing::instance_of(rid));
    return inst ? testing::StubReply{200, "Answer: " + to_text(inst->ground_truth)} : testing::StubReply{500};
  });
  ep.url = echo.url();
  auto sum = run_eval(ctx.dataset(), ep, {}, ctx.work / "echo");
  const auto echo_rep = aggregate(read_records(ctx.work / "echo" / "records.jsonl"), ctx.instances);
  const auto* all = echo_rep.find("overall", "all");
  const bool echo_ok = sum.failures.empty() && all && all->cartesian() == 100.0 && all->polar() == 100.0 &&
                       all->delta() == 0.0;

  testing::StubEndpoint always_a([](const std::string&, const json&) { return testing::StubReply{200, "Answer: A"}; });
  ep.url = always_a.url();
  sum = run_eval(ctx.dataset(), ep, {}, ctx.work / "always_a");
  const auto a_rep = aggregate(read_records(ctx.work / "always_a" / "records.jsonl"), ctx.instances);
  std::map<std::string, std::pair<int, int>> freq;  // topology -> (n, truth is A)
  for (const auto& i : ctx.instances) {
    auto& f = freq[std::string(to_string(i.topology))];
    ++f.first;
    f.second += i.ground_truth == Answer{OptionLabel{'A'}};
  }
  bool a_ok = sum.failures.empty();
  std::string a_detail;
  for (const auto& [topo, acc] : a_rep.find("overall", "all")->by_topology) {
    const auto& f = freq.at(topo);
    const double expect = round1(100.0 * f.second / f.first);
    a_ok = a_ok && acc.pct() == expect;
    a_detail += topo + " " + fmt("%.1f", acc.pct().value_or(-1)) + " vs A-truth " + fmt("%.1f", expect) + ", ";
  }

  std::ifstream in(std::string(POLARBENCH_TEST_DATA) + "/parse_corpus.jsonl");
  int cases = 0, exact = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const auto c = json::parse(line);
    const auto got = parse_answer(c["raw"].get<std::string>(), answer_type_from_string(c["type"].get<std::string>()));
    const bool match = c["expect"].is_null() ? !got.has_value() : got && *got == answer_from_json(c["expect"]);
    ++cases;
    exact += match;
  }
  const bool parse_ok = cases >= 50 && exact == cases;
  std::string detail = "echo " + fmt("%.1f", all ? all->cartesian().value_or(-1) : -1) + "/" +
                       fmt("%.1f", all ? all->polar().value_or(-1) : -1) + "/delta " +
                       fmt("%.1f", all ? all->delta().value_or(-1) : -1) + "; always-A " + a_detail + "parse corpus " +
                       std::to_string(exact) + "/" + std::to_string(cases);
  return {echo_ok && a_ok && parse_ok, detail};
}

Verdict a9(Context&) {
  const bool pos = detect_coordinate_invocation("starting at (2,3), moving to (3,5)") &&
                   detect_coordinate_invocation("row 2 has a gap on the left");
  std::ifstream in(std::string(POLARBENCH_TEST_DATA) + "/detector_negatives.txt");
  int negatives = 0, false_hits = 0;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    ++negatives;
    false_hits += detect_coordinate_invocation(line);
  }
  return {pos && negatives == 20 && false_hits == 0,
          std::string("positives ") + (pos ? "2/2" : "missed") + ", false positives " + std::to_string(false_hits) +
              "/" + std::to_string(negatives)};
}

}  // namespace

int main() {
  Context ctx;
  const std::vector<std::pair<std::string, std::function<Verdict(Context&)>>> criteria = {
      {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4}, {"A5", a5},
      {"A6", a6}, {"A7", a7}, {"A8", a8}, {"A9", a9}};
  int failed = 0;
  for (const auto& [id, check] : criteria) {
    Verdict v;
    const auto t0 = Clock::now();
    try {
      v = check(ctx);
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.ok;
    std::cout << id << " " << (v.ok ? "PASS" : "FAIL") << "  " << v.detail << "  [" << fmt("%.1f s", seconds_since(t0))
              << "]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
