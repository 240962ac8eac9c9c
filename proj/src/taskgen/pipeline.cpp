#include <algorithm>
#include <cmath>

#include "generator.hpp"

namespace polarbench {

using gen::json;

// ---- Config ----------------------------------------------------------------

namespace {

[[noreturn]] void config_fail(const std::string& field, const std::string& why) {
  throw ConfigError("config field '" + field + "': " + why);
}

template <class T>
T field_as(const json& j, const std::string& field) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    config_fail(field, "has the wrong type");
  }
}

}  // namespace

GenConfig GenConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {"n_per_task", "base_seed", "tasks", "layout_variants", "ranges",
                                              "inner_radius_ratio"};
  for (const auto& [k, _] : j.items())
    if (!known.count(k)) config_fail(k, "unknown field");

  GenConfig c;
  if (j.contains("n_per_task")) {
    const auto& v = j["n_per_task"];
    if (!v.is_number_integer() || v.get<int64_t>() < 1 || v.get<int64_t>() > 100000) {
      config_fail("n_per_task", "must be an integer in 1..100000");
    }
    c.n_per_task = v.get<int>();
  }
  if (j.contains("base_seed")) {
    const auto& v = j["base_seed"];
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<int64_t>() >= 0)) {
      config_fail("base_seed", "must be a non-negative integer");
    }
    c.base_seed = v.get<uint64_t>();
  }
  if (j.contains("tasks")) {
    if (!j["tasks"].is_array()) config_fail("tasks", "must be an array of task ids");
    for (size_t i = 0; i < j["tasks"].size(); ++i) {
      const auto id = field_as<std::string>(j["tasks"][i], "tasks[" + std::to_string(i) + "]");
      try {
        find_task(id);
      } catch (const std::invalid_argument&) {
        config_fail("tasks[" + std::to_string(i) + "]", "unknown task '" + id + "'");
      }
      c.tasks.push_back(id);
    }
  }
  if (j.contains("layout_variants")) c.layout_variants = field_as<bool>(j["layout_variants"], "layout_variants");
  if (j.contains("ranges")) {
    if (!j["ranges"].is_object()) config_fail("ranges", "must map task ids to parameter ranges");
    for (const auto& [task, params] : j["ranges"].items()) {
      const std::string base = "ranges." + task;
      const TaskSpec* spec = nullptr;
      try {
        spec = &find_task(task);
      } catch (const std::invalid_argument&) {
        config_fail(base, "unknown task");
      }
      if (!params.is_object()) config_fail(base, "must map parameter names to [lo, hi]");
      for (const auto& [name, range] : params.items()) {
        const std::string f = base + "." + name;
        auto lim = spec->param_limits.find(name);
        if (lim == spec->param_limits.end()) config_fail(f, "unknown parameter");
        if (!range.is_array() || range.size() != 2 || !range[0].is_number_integer() ||
            !range[1].is_number_integer()) {
          config_fail(f, "must be an integer pair [lo, hi]");
        }
        const ParamRange r{range[0].get<int>(), range[1].get<int>()};
        if (r.lo > r.hi) config_fail(f, "lo exceeds hi");
        if (r.lo < lim->second.lo || r.hi > lim->second.hi) {
          config_fail(f, "must lie within [" + std::to_string(lim->second.lo) + ", " +
                             std::to_string(lim->second.hi) + "]");
        }
        c.range_overrides[task][name] = r;
      }
    }
  }
  if (j.contains("inner_radius_ratio")) {
    if (!j["inner_radius_ratio"].is_object()) config_fail("inner_radius_ratio", "must map task ids to ratios");
    for (const auto& [task, v] : j["inner_radius_ratio"].items()) {
      const std::string f = "inner_radius_ratio." + task;
      try {
        find_task(task);
      } catch (const std::invalid_argument&) {
        config_fail(f, "unknown task");
      }
      if (!v.is_number()) config_fail(f, "must be a number");
      const double r = v.get<double>();
      if (!(r > 0.0 && r < 1.0)) config_fail(f, "must lie strictly between 0 and 1");
      c.inner_radius_overrides[task] = r;
    }
  }
  return c;
}

json GenConfig::to_json() const {
  json j;
  j["n_per_task"] = n_per_task;
  j["base_seed"] = base_seed;
  j["tasks"] = tasks;
  j["layout_variants"] = layout_variants;
  json ranges = json::object();
  for (const auto& [task, params] : range_overrides)
    for (const auto& [name, r] : params) ranges[task][name] = {r.lo, r.hi};
  j["ranges"] = ranges;
  j["inner_radius_ratio"] = json(inner_radius_overrides);
  return j;
}

std::map<std::string, ParamRange> GenConfig::ranges_for(const TaskSpec& spec) const {
  auto out = spec.param_ranges;
  if (auto it = range_overrides.find(spec.task_id); it != range_overrides.end())
    for (const auto& [k, v] : it->second) out[k] = v;
  return out;
}

double GenConfig::inner_radius_for(const TaskSpec& spec) const {
  auto it = inner_radius_overrides.find(spec.task_id);
  return it == inner_radius_overrides.end() ? spec.inner_radius_ratio : it->second;
}

std::vector<TaskSpec> GenConfig::selected_tasks() const {
  if (tasks.empty()) return catalog();
  std::vector<TaskSpec> out;
  for (const auto& t : catalog())
    if (std::find(tasks.begin(), tasks.end(), t.task_id) != tasks.end()) out.push_back(t);
  return out;
}

// ---- Generation ------------------------------------------------------------

GenerationExhausted::GenerationExhausted(const std::string& task_id, uint64_t seed, const std::string& last_reason)
    : std::runtime_error("generation exhausted for " + task_id + " seed " + std::to_string(seed) + " after " +
                         std::to_string(kMaxAttempts) + " attempts; last rejection: " + last_reason),
      task_id_(task_id),
      reason_(last_reason) {}

std::string instance_id(const std::string& task_id, Topology topology, uint64_t seed) {
  std::string t(to_string(topology));
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char ch) { return std::tolower(ch); });
  return task_id + "_" + t + "_" + std::to_string(seed);
}

namespace {

constexpr double kDefaultFont = 20.0;
constexpr double kMinFont = 9.0;

std::string divergence_reason(const std::string& task_id) {
  if (task_id == "knight_paths") return "angular wrapping adds seam-crossing knight moves";
  if (task_id == "minimum_flips") return "wrapping strips join the last and first cells, changing which patterns are reachable";
  if (task_id == "bouncing_point") return "the point wraps across the sector seam instead of reflecting at the side edges";
  if (task_id == "random_walk") return "sector wrap-around adds seam edges to the walk graph";
  return "boundary conditions differ between the layouts";
}

std::string compose_question(const gen::TaskGenerator& g, const TaskSpec& task, const json& puzzle,
                             const GridSpec& grid, const std::string& narrative,
                             const std::vector<std::string>& options) {
  std::string q = narrative + "\n\n" + gen::layout_note(grid);
  if (auto extra = g.layout_extra(puzzle, grid); !extra.empty()) q += " " + extra;
  if (!options.empty()) q += "\n\n" + gen::options_block(options);
  q += "\n\n" + gen::format_instruction(task.answer_type, grid);
  return q;
}

bool has_text(const SceneSpec& s) {
  if (!s.cell_glyphs.empty()) return true;
  return std::any_of(s.overlays.begin(), s.overlays.end(),
                     [](const Overlay& o) { return std::holds_alternative<EdgeLabel>(o); });
}

double fitted_font(const std::vector<SceneSpec>& scenes) {
  double f = kDefaultFont;
  for (const auto& s : scenes) f = std::min(f, max_font_px(s));
  f = std::floor(f * 2.0) / 2.0;
  const bool text = std::any_of(scenes.begin(), scenes.end(), has_text);
  if (text && f < kMinFont) {
    throw gen::Reject("glyphs would need a " + format_px(f) + " px font; enlarge the inner radius or shrink the grid");
  }
  return std::max(f, kMinFont);
}

struct Accepted {
  gen::Draft draft;
  int attempts = 0;
};

Accepted accept_draft(const TaskSpec& task, uint64_t seed, const GenConfig& config,
                      const std::function<void(const gen::Draft&)>& check) {
  const auto& g = gen::generator_for(task.task_id);
  const gen::Ranges ranges(config.ranges_for(task));
  std::string last = "none";
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(derive_seed(task.task_id, seed, static_cast<uint64_t>(attempt)));
    try {
      auto d = g.draw(rng, ranges);
      check(d);
      return {std::move(d), attempt + 1};
    } catch (const gen::Reject& e) {
      last = e.what();
    } catch (const AmbiguityError& e) {
      last = e.what();
    } catch (const PreconditionError& e) {
      last = e.what();
    } catch (const UnreachableError& e) {
      last = e.what();
    } catch (const RenderError& e) {
      last = e.what();
    } catch (const std::overflow_error& e) {
      last = e.what();
    }
  }
  throw GenerationExhausted(task.task_id, seed, last);
}

Instance make_instance(const TaskSpec& task, const gen::TaskGenerator& g, const json& puzzle, const GridSpec& grid,
                       uint64_t seed, const gen::Draft& d) {
  Instance inst;
  inst.id = instance_id(task.task_id, grid.topology, seed);
  inst.task_id = task.task_id;
  inst.topology = grid.topology;
  inst.boundary = grid.boundary;
  inst.seed = seed;
  inst.grid = grid;
  inst.narrative = g.narrative(puzzle);
  inst.options = d.options;
  inst.question = compose_question(g, task, puzzle, grid, inst.narrative, d.options);
  inst.puzzle = puzzle;
  inst.ground_truth = g.solve(puzzle, grid, d.options);
  if (type_of(inst.ground_truth) != task.answer_type || !well_formed(inst.ground_truth)) {
    throw std::logic_error(task.task_id + " oracle produced a malformed answer");
  }
  return inst;
}

void finish_render(std::vector<Instance*> insts, const std::vector<SceneSpec>& scenes_in, int attempts,
                   const json& construction, Alignment alignment) {
  auto scenes = scenes_in;
  const double font = fitted_font(scenes);
  for (size_t i = 0; i < insts.size(); ++i) {
    scenes[i].font_px = font;
    insts[i]->svg = render(scenes[i]).bytes;
    auto& m = insts[i]->meta;
    m["alignment"] = std::string(to_string(alignment));
    m["generator_version"] = kGeneratorVersion;
    m["attempts"] = attempts;
    m["font_px"] = font;
    m["inner_radius_ratio"] = insts[i]->grid.inner_radius_ratio;
    m["narrative"] = insts[i]->narrative;
    m["construction"] = construction;
  }
}

GridSpec side_grid(const TaskSpec& task, const gen::Draft& d, Topology t, const GenConfig& config) {
  GridSpec g{t, d.major, d.minor, side_boundary(task, t), config.inner_radius_for(task)};
  validate(g);
  return g;
}

InstancePair build_pair(const TaskSpec& task, uint64_t seed, const GenConfig& config, const gen::Draft& d,
                        int attempts) {
  const auto& g = gen::generator_for(task.task_id);
  InstancePair p;
  p.alignment = task.alignment;
  p.attempts = attempts;
  const auto gc = side_grid(task, d, Topology::Cartesian, config);
  const auto gp = side_grid(task, d, Topology::Polar, config);
  p.cartesian = make_instance(task, g, d.cartesian, gc, seed, d);
  p.polar = make_instance(task, g, d.polar, gp, seed, d);
  if (p.cartesian.narrative != p.polar.narrative) throw std::logic_error(task.task_id + " narratives differ");

  finish_render({&p.cartesian, &p.polar}, {g.scene(d.cartesian, gc), g.scene(d.polar, gp)}, attempts,
                d.construction, task.alignment);

  const bool equal = p.cartesian.ground_truth == p.polar.ground_truth;
  if (task.alignment == Alignment::FullyAligned) {
    if (!equal) throw std::logic_error(task.task_id + " fully aligned pair has different ground truths");
  } else {
    p.cartesian.meta["counterpart_truth"] = to_json(p.polar.ground_truth);
    p.polar.meta["counterpart_truth"] = to_json(p.cartesian.ground_truth);
    for (auto* inst : {&p.cartesian, &p.polar}) {
      inst->meta["truths_equal"] = equal;
      inst->meta["divergence_reason"] = equal ? "" : divergence_reason(task.task_id);
    }
  }
  return p;
}

}  // namespace

InstancePair generate_pair(const TaskSpec& task, uint64_t seed, const GenConfig& config) {
  InstancePair out;
  auto acc = accept_draft(task, seed, config, [&](const gen::Draft& d) { out = build_pair(task, seed, config, d, 0); });
  for (auto* inst : {&out.cartesian, &out.polar}) inst->meta["attempts"] = acc.attempts;
  out.attempts = acc.attempts;
  return out;
}

namespace {

Instance build_variant(const TaskSpec& task, uint64_t seed, Topology topology, const GenConfig& config,
                       const gen::Draft& d, int attempts) {
  const auto& g = gen::generator_for(task.task_id);
  const auto grid = side_grid(task, d, topology, config);
  auto inst = make_instance(task, g, d.cartesian, grid, seed, d);
  finish_render({&inst}, {g.scene(d.cartesian, grid)}, attempts, d.construction, Alignment::FullyAligned);
  inst.meta["layout_variant"] = true;
  return inst;
}

void require_variant(const TaskSpec& task, Topology topology) {
  if (!gen::generator_for(task.task_id).supports_variants()) {
    throw std::invalid_argument("task '" + task.task_id + "' has no layout variants");
  }
  if (topology != Topology::Hexagonal && topology != Topology::Octagonal) {
    throw std::invalid_argument("layout variants are Hexagonal or Octagonal");
  }
}

}  // namespace

Instance generate_layout_variant(const TaskSpec& task, uint64_t seed, Topology topology, const GenConfig& config) {
  require_variant(task, topology);
  // The variant reuses the draw the pair accepted, so it runs the pair checks.
  InstancePair pair;
  auto acc = accept_draft(task, seed, config, [&](const gen::Draft& d) { pair = build_pair(task, seed, config, d, 0); });
  return build_variant(task, seed, topology, config, acc.draft, acc.attempts);
}

std::vector<const Instance*> Dataset::instances() const {
  std::vector<const Instance*> out;
  size_t v = 0;
  for (const auto& p : pairs) {
    out.push_back(&p.cartesian);
    out.push_back(&p.polar);
    while (v < variants.size() && variants[v].task_id == p.cartesian.task_id && variants[v].seed == p.cartesian.seed)
      out.push_back(&variants[v++]);
  }
  for (; v < variants.size(); ++v) out.push_back(&variants[v]);
  return out;
}

Dataset generate_dataset(const std::vector<TaskSpec>& tasks, const GenConfig& config) {
  if (config.n_per_task < 1) throw std::invalid_argument("n_per_task must be at least 1");
  Dataset ds;
  for (const auto& task : tasks) {
    auto& st = ds.stats[task.task_id];
    const bool variants = config.layout_variants && gen::generator_for(task.task_id).supports_variants();
    for (int k = 0; k < config.n_per_task; ++k) {
      const uint64_t seed = config.base_seed + static_cast<uint64_t>(k);
      InstancePair pair;
      auto acc =
          accept_draft(task, seed, config, [&](const gen::Draft& d) { pair = build_pair(task, seed, config, d, 0); });
      for (auto* inst : {&pair.cartesian, &pair.polar}) inst->meta["attempts"] = acc.attempts;
      pair.attempts = acc.attempts;
      st.pairs += 1;
      st.attempts += acc.attempts;
      ds.pairs.push_back(std::move(pair));
      if (variants) {
        for (auto t : {Topology::Hexagonal, Topology::Octagonal}) {
          ds.variants.push_back(build_variant(task, seed, t, config, acc.draft, acc.attempts));
          st.variants += 1;
        }
      }
    }
  }
  return ds;
}

// ---- Validation ------------------------------------------------------------

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

json ValidationReport::to_json() const {
  json j;
  j["id"] = instance_id;
  j["ok"] = ok();
  j["checks"] = json::array();
  for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return j;
}

Answer solve_instance(const Instance& inst) {
  return gen::generator_for(inst.task_id).solve(inst.puzzle, inst.grid, inst.options);
}

SceneSpec instance_scene(const Instance& inst) {
  auto s = gen::generator_for(inst.task_id).scene(inst.puzzle, inst.grid);
  if (inst.meta.contains("font_px")) s.font_px = inst.meta["font_px"].get<double>();
  return s;
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport rep;
  rep.instance_id = inst.id;
  const auto add = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  const TaskSpec* task = nullptr;
  try {
    task = &find_task(inst.task_id);
  } catch (const std::exception& e) {
    add("catalog", false, e.what());
    return rep;
  }
  add("catalog", true);

  const bool layout_ok = std::find(task->layouts.begin(), task->layouts.end(), inst.topology) != task->layouts.end() &&
                         inst.grid.topology == inst.topology && inst.grid.boundary == inst.boundary &&
                         inst.boundary == side_boundary(*task, inst.topology) &&
                         inst.id == instance_id(inst.task_id, inst.topology, inst.seed);
  add("layout", layout_ok, layout_ok ? "" : "topology, boundary or id disagree with the catalog");

  const bool type_ok = type_of(inst.ground_truth) == task->answer_type && well_formed(inst.ground_truth);
  add("answer_type", type_ok,
      type_ok ? "" : "expected " + std::string(to_string(task->answer_type)) + ", got " + to_text(inst.ground_truth));

  try {
    const Answer recomputed = solve_instance(inst);
    const bool same = recomputed == inst.ground_truth;
    add("oracle_agreement", same,
        same ? "" : "oracle gives " + to_text(recomputed) + ", record says " + to_text(inst.ground_truth));
  } catch (const std::exception& e) {
    add("oracle_agreement", false, e.what());
  }

  {
    std::string why;
    const auto& counts = task->option_counts;
    if (counts.empty()) {
      if (!inst.options.empty()) why = "open-answer task carries options";
    } else {
      if (std::find(counts.begin(), counts.end(), static_cast<int>(inst.options.size())) == counts.end()) {
        why = "option count " + std::to_string(inst.options.size()) + " not allowed";
      }
      auto sorted = inst.options;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) why = "duplicate options";
      const std::string truth_text =
          task->answer_type == AnswerType::OptionLabel ? std::string() : to_text(inst.ground_truth);
      if (const auto* o = std::get_if<OptionLabel>(&inst.ground_truth)) {
        if (static_cast<size_t>(o->letter - 'A') >= inst.options.size()) why = "truth letter has no option";
      } else if (std::count(inst.options.begin(), inst.options.end(), truth_text) != 1) {
        why = "truth must appear exactly once among the options";
      }
    }
    add("distractors", why.empty(), why);
  }

  try {
    const auto bytes = render(instance_scene(inst)).bytes;
    const bool same = inst.svg.empty() || bytes == inst.svg;
    add("render", same, same ? "" : "image differs from a fresh render of the puzzle");
  } catch (const std::exception& e) {
    add("render", false, e.what());
  }

  const bool question_ok = !inst.narrative.empty() && inst.question.find(inst.narrative) == 0;
  add("question", question_ok, question_ok ? "" : "question does not open with the narrative");
  return rep;
}

}  // namespace polarbench
