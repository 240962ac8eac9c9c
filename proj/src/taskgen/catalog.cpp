#include <memory>

#include "generator.hpp"

namespace polarbench {

namespace gen {
std::unique_ptr<TaskGenerator> make_sudoku();
std::unique_ptr<TaskGenerator> make_n_queens();
std::unique_ptr<TaskGenerator> make_minimum_flips();
std::unique_ptr<TaskGenerator> make_bouncing_point();
std::unique_ptr<TaskGenerator> make_lattice_paths();
std::unique_ptr<TaskGenerator> make_knight_paths();
std::unique_ptr<TaskGenerator> make_random_walk();
std::unique_ptr<TaskGenerator> make_maze();
std::unique_ptr<TaskGenerator> make_monotonic_path();
std::unique_ptr<TaskGenerator> make_word_search();
std::unique_ptr<TaskGenerator> make_wall_follower();
std::unique_ptr<TaskGenerator> make_grid_rotation();
std::unique_ptr<TaskGenerator> make_area_counting();
std::unique_ptr<TaskGenerator> make_pipe_lengths();
std::unique_ptr<TaskGenerator> make_letter_collection();
}  // namespace gen

namespace {

constexpr const char* kAlgorithmic = "Algorithmic Logic and Simulation";
constexpr const char* kCombinatorics = "Combinatorics and Probability";
constexpr const char* kNavigation = "Navigation and Routing";
constexpr const char* kSpatial = "Spatial Transformation and Geometry";
constexpr const char* kPattern = "Visual Pattern Matching";

const std::vector<Topology> kPaired = {Topology::Cartesian, Topology::Polar};

std::vector<TaskSpec> build_catalog() {
  using enum AnswerType;
  using enum Alignment;
  const auto full = FullyAligned;
  const auto partial = PartiallyAligned;
  std::vector<TaskSpec> c;

  c.push_back({"sudoku", "Sudoku", kAlgorithmic, "Constraint Satisfaction", OptionLabel, full,
               BoundaryPolicy::TopologyInvariant,
               {{"size", {6, 9}}, {"blank_pct", {45, 60}}},
               {{"size", {6, 9}}, {"blank_pct", {10, 75}}},
               kPaired, {5}, false, 0.3});
  c.push_back({"n_queens", "N-Queens", kAlgorithmic, "Constraint Satisfaction", OptionLabel, full,
               BoundaryPolicy::Bounded,
               {{"size", {5, 8}}},
               {{"size", {5, kMaxQueens}}},
               kPaired, {5}, false, 0.25});
  c.push_back({"minimum_flips", "Minimum Flips", kAlgorithmic, "Move Optimization", OptionLabel, partial,
               BoundaryPolicy::Wrapping,
               {{"length", {8, 14}}, {"strip", {3, 3}}},
               {{"length", {5, kMaxFlipCells}}, {"strip", {2, 4}}},
               kPaired, {5}, false, 0.45});
  c.push_back({"bouncing_point", "Bouncing Point", kAlgorithmic, "Motion and Trajectory Prediction", Coordinate,
               partial, BoundaryPolicy::Wrapping,
               {{"rows", {3, 6}}, {"cols", {5, 10}}, {"steps", {5, 20}}},
               {{"rows", {2, 10}}, {"cols", {3, 16}}, {"steps", {1, 60}}},
               kPaired, {}, true, 0.25});
  c.push_back({"lattice_paths", "Lattice Paths", kCombinatorics, "Bounded Combinatorics", Digit, full,
               BoundaryPolicy::Bounded,
               {{"rows", {3, 5}}, {"cols", {4, 7}}, {"blocked", {1, 4}}},
               {{"rows", {2, 8}}, {"cols", {3, 10}}, {"blocked", {0, 10}}},
               kPaired, {}, false, 0.25});
  c.push_back({"knight_paths", "Knight Paths", kCombinatorics, "Topological Combinatorics", Digit, partial,
               BoundaryPolicy::Wrapping,
               {{"rows", {4, 6}}, {"cols", {5, 9}}, {"steps", {2, 3}}},
               {{"rows", {3, 10}}, {"cols", {4, 12}}, {"steps", {1, 5}}},
               kPaired, {}, false, 0.25});
  c.push_back({"random_walk", "Random Walk", kCombinatorics, "Stochastic Processes", OptionLabel, partial,
               BoundaryPolicy::Wrapping,
               {{"rows", {2, 3}}, {"cols", {3, 5}}},
               {{"rows", {1, 5}}, {"cols", {3, 8}}},
               kPaired, {5}, false, 0.25});
  c.push_back({"maze", "Maze", kNavigation, "Optimal Pathfinding", OptionLabel, full, BoundaryPolicy::Bounded,
               {{"rows", {4, 6}}, {"cols", {6, 10}}, {"entrances", {2, 5}}},
               {{"rows", {3, 10}}, {"cols", {4, 16}}, {"entrances", {2, 6}}},
               kPaired, {2, 3, 4, 5}, false, 0.25});
  c.push_back({"monotonic_path", "Monotonic Path", kNavigation, "Constraint-Based Routing", OptionLabel, full,
               BoundaryPolicy::Wrapping,
               {{"rows", {4, 5}}, {"cols", {6, 8}}},
               {{"rows", {3, 7}}, {"cols", {6, 12}}},
               kPaired, {6}, false, 0.3});
  c.push_back({"word_search", "Word Search", kNavigation, "Constraint-Based Routing", Digit, full,
               BoundaryPolicy::TopologyInvariant,
               {{"rows", {4, 6}}, {"cols", {5, 7}}, {"word_length", {3, 4}}},
               {{"rows", {3, 8}}, {"cols", {3, 10}}, {"word_length", {2, 5}}},
               {Topology::Cartesian, Topology::Polar, Topology::Hexagonal, Topology::Octagonal}, {}, false, 0.3});
  c.push_back({"wall_follower", "Wall Follower", kNavigation, "Rule-Based Navigation", Coordinate, full,
               BoundaryPolicy::Bounded,
               {{"rows", {4, 6}}, {"cols", {5, 8}}, {"wall_pct", {20, 35}}},
               {{"rows", {3, 10}}, {"cols", {3, 12}}, {"wall_pct", {0, 60}}},
               kPaired, {5}, false, 0.25});
  c.push_back({"grid_rotation", "Grid Rotation", kSpatial, "Rotations and Reflections", OptionLabel, full,
               BoundaryPolicy::TopologyInvariant,
               {{"size", {4, 8}}, {"filled_pct", {25, 45}}},
               {{"size", {4, 8}}, {"filled_pct", {10, 70}}},
               kPaired, {5}, false, 0.25});
  c.push_back({"area_counting", "Area Counting", kSpatial, "Geometric Measurement and Counting", Digit, full,
               BoundaryPolicy::Bounded,
               {{"rows", {4, 7}}, {"cols", {6, 10}}, {"region", {4, 12}}},
               {{"rows", {2, 10}}, {"cols", {3, 14}}, {"region", {1, 40}}},
               kPaired, {}, false, 0.25});
  c.push_back({"pipe_lengths", "Pipe Lengths", kSpatial, "Geometric Measurement and Counting", IntList, full,
               BoundaryPolicy::TopologyInvariant,
               {{"rows", {3, 5}}, {"cols", {4, 7}}},
               {{"rows", {2, 8}}, {"cols", {3, 10}}},
               kPaired, {}, false, 0.25});
  c.push_back({"letter_collection", "Letter Collection", kPattern, "Visual Spotting and Search", Str, full,
               BoundaryPolicy::Wrapping,
               {{"rows", {5, 6}}, {"cols", {8, 12}}, {"path", {6, 10}}, {"letters", {3, 5}}},
               {{"rows", {3, 8}}, {"cols", {6, 16}}, {"path", {3, 16}}, {"letters", {1, 8}}},
               kPaired, {}, false, 0.35});
  return c;
}

}  // namespace

const std::vector<TaskSpec>& catalog() {
  static const std::vector<TaskSpec> c = build_catalog();
  return c;
}

const TaskSpec& find_task(std::string_view task_id) {
  for (const auto& t : catalog())
    if (t.task_id == task_id) return t;
  throw std::invalid_argument("unknown task '" + std::string(task_id) + "'");
}

Boundary side_boundary(const TaskSpec& spec, Topology topology) {
  if (spec.alignment == Alignment::PartiallyAligned) {
    return topology == Topology::Polar ? Boundary::Wrapping : Boundary::Bounded;
  }
  return spec.boundary_policy == BoundaryPolicy::Wrapping && (topology == Topology::Cartesian ||
                                                              topology == Topology::Polar)
             ? Boundary::Wrapping
             : Boundary::Bounded;
}

std::string_view to_string(Alignment a) { return a == Alignment::FullyAligned ? "fully_aligned" : "partially_aligned"; }

std::string_view to_string(BoundaryPolicy b) {
  switch (b) {
    case BoundaryPolicy::Bounded: return "bounded";
    case BoundaryPolicy::Wrapping: return "wrapping";
    case BoundaryPolicy::TopologyInvariant: return "topology_invariant";
  }
  return "?";
}

Alignment alignment_from_string(std::string_view s) {
  if (s == "fully_aligned") return Alignment::FullyAligned;
  if (s == "partially_aligned") return Alignment::PartiallyAligned;
  throw std::invalid_argument("unknown alignment '" + std::string(s) + "'");
}

namespace gen {

const TaskGenerator& generator_for(const std::string& task_id) {
  static const auto registry = [] {
    std::map<std::string, std::unique_ptr<TaskGenerator>> r;
    r["sudoku"] = make_sudoku();
    r["n_queens"] = make_n_queens();
    r["minimum_flips"] = make_minimum_flips();
    r["bouncing_point"] = make_bouncing_point();
    r["lattice_paths"] = make_lattice_paths();
    r["knight_paths"] = make_knight_paths();
    r["random_walk"] = make_random_walk();
    r["maze"] = make_maze();
    r["monotonic_path"] = make_monotonic_path();
    r["word_search"] = make_word_search();
    r["wall_follower"] = make_wall_follower();
    r["grid_rotation"] = make_grid_rotation();
    r["area_counting"] = make_area_counting();
    r["pipe_lengths"] = make_pipe_lengths();
    r["letter_collection"] = make_letter_collection();
    return r;
  }();
  auto it = registry.find(task_id);
  if (it == registry.end()) throw std::invalid_argument("no generator for task '" + task_id + "'");
  return *it->second;
}

}  // namespace gen

}  // namespace polarbench
