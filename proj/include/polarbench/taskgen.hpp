#pragma once
// Seeded generation of Cartesian/Polar instance pairs for the task catalog,
// plus the validator that re-derives every answer from emitted content.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "polarbench/answer.hpp"
#include "polarbench/render.hpp"
#include "polarbench/topology.hpp"

namespace polarbench {

inline constexpr const char* kGeneratorVersion = "1.0.0";
inline constexpr int kMaxAttempts = 1000;

enum class Alignment { FullyAligned, PartiallyAligned };
enum class BoundaryPolicy { Bounded, Wrapping, TopologyInvariant };

std::string_view to_string(Alignment a);
std::string_view to_string(BoundaryPolicy b);
Alignment alignment_from_string(std::string_view s);

struct ParamRange {
  int lo = 0;
  int hi = 0;
  friend bool operator==(const ParamRange&, const ParamRange&) = default;
};

struct TaskSpec {
  std::string task_id;
  std::string title;
  std::string category;
  std::string subcategory;
  AnswerType answer_type = AnswerType::OptionLabel;
  Alignment alignment = Alignment::FullyAligned;
  BoundaryPolicy boundary_policy = BoundaryPolicy::Bounded;
  std::map<std::string, ParamRange> param_ranges;  // defaults
  std::map<std::string, ParamRange> param_limits;  // what overrides may request
  std::vector<Topology> layouts;
  std::vector<int> option_counts;  // allowed option counts; empty = open answer
  bool finite_coordinate_domain = false;  // open coordinate answer over the grid's cells
  double inner_radius_ratio = 0.25;
};

/// The 15 implemented tasks in catalog order.
const std::vector<TaskSpec>& catalog();
/// Throws std::invalid_argument for unknown ids.
const TaskSpec& find_task(std::string_view task_id);

/// Boundary each side of a pair is generated with.
Boundary side_boundary(const TaskSpec& spec, Topology topology);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GenConfig {
  int n_per_task = 100;
  uint64_t base_seed = 0;
  std::vector<std::string> tasks;  // empty = whole catalog
  bool layout_variants = true;     // hex/oct word search
  std::map<std::string, std::map<std::string, ParamRange>> range_overrides;
  std::map<std::string, double> inner_radius_overrides;

  /// Throws ConfigError naming the offending field.
  static GenConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  std::map<std::string, ParamRange> ranges_for(const TaskSpec& spec) const;
  double inner_radius_for(const TaskSpec& spec) const;
  std::vector<TaskSpec> selected_tasks() const;
};

struct Instance {
  std::string id;  // <task>_<topology>_<seed>
  std::string task_id;
  Topology topology = Topology::Cartesian;
  Boundary boundary = Boundary::Bounded;
  uint64_t seed = 0;
  GridSpec grid;
  std::string narrative;  // shared by both members of a pair
  std::string question;   // full text shown to the solver
  std::vector<std::string> options;
  Answer ground_truth;
  nlohmann::json puzzle;  // logical content the scene and the oracle read
  nlohmann::json meta;    // alignment, attempts, counterpart truth, render params
  std::string svg;

  friend bool operator==(const Instance&, const Instance&) = default;
};

struct InstancePair {
  Instance cartesian;
  Instance polar;
  Alignment alignment = Alignment::FullyAligned;
  int attempts = 1;
};

/// Raised when every redraw for a (task, seed) failed validation.
class GenerationExhausted : public std::runtime_error {
 public:
  GenerationExhausted(const std::string& task_id, uint64_t seed, const std::string& last_reason);
  const std::string& task_id() const { return task_id_; }
  const std::string& last_reason() const { return reason_; }

 private:
  std::string task_id_;
  std::string reason_;
};

InstancePair generate_pair(const TaskSpec& task, uint64_t seed, const GenConfig& config);

/// Hexagonal or Octagonal word-search instance over the same letters as the
/// pair generated for `seed`.
Instance generate_layout_variant(const TaskSpec& task, uint64_t seed, Topology topology, const GenConfig& config);

struct TaskStats {
  int pairs = 0;
  int variants = 0;
  int attempts = 0;  // total draws including the accepted ones
  double rejection_rate() const { return attempts == 0 ? 0.0 : 1.0 - static_cast<double>(pairs) / attempts; }
};

struct Dataset {
  std::vector<InstancePair> pairs;
  std::vector<Instance> variants;
  std::map<std::string, TaskStats> stats;

  /// Every instance in manifest order: task, then seed, then topology.
  std::vector<const Instance*> instances() const;
};

Dataset generate_dataset(const std::vector<TaskSpec>& tasks, const GenConfig& config);

struct CheckResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct ValidationReport {
  std::string instance_id;
  std::vector<CheckResult> checks;
  bool ok() const;
  nlohmann::json to_json() const;
};

/// Re-runs the oracle on the instance's puzzle content and checks answer
/// agreement, option validity, rendering and answer-type conformance.
ValidationReport validate_instance(const Instance& inst);

/// Recomputes the ground truth from the puzzle content alone.
Answer solve_instance(const Instance& inst);

/// Rebuilds the scene the SVG was rendered from.
SceneSpec instance_scene(const Instance& inst);

std::string instance_id(const std::string& task_id, Topology topology, uint64_t seed);

}  // namespace polarbench
