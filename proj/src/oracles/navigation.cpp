#include <algorithm>
#include <deque>

#include "polarbench/oracles.hpp"

namespace polarbench {

namespace {

bool open_side(const GridSpec& spec, const WallSet& walls, const CellRef& from, Heading h, CellRef& out) {
  auto next = step(from, h, spec);
  if (!next || walls.count(make_edge(from, *next))) return false;
  out = *next;
  return true;
}

}  // namespace

FollowResult simulate_wall_follower(const GridSpec& spec, const WallSet& walls, const CellRef& start, Heading heading) {
  validate(spec);
  require_in_range(start, spec);
  const int budget = 4 * spec.cell_count() * 4;
  std::set<std::pair<CellRef, Heading>> seen{{start, heading}};
  CellRef cell = start;
  int rotations = 0;
  for (int steps = 1; steps <= budget; ++steps) {
    CellRef next;
    if (open_side(spec, walls, cell, heading, next)) {
      cell = next;
      rotations = 0;
    } else {
      heading = turn_right(heading);
      if (++rotations == 4) return {FollowOutcome::Stopped, cell, steps};
    }
    if (!seen.insert({cell, heading}).second) return {FollowOutcome::Loop, cell, steps};
  }
  throw std::logic_error("wall follower exceeded its step budget");
}

CellRef simulate_bouncing_point(const GridSpec& spec, const CellRef& start, std::pair<int, int> velocity, int n) {
  validate(spec);
  require_in_range(start, spec);
  auto [vi, vj] = velocity;
  if (std::abs(vi) > 1 || std::abs(vj) > 1) throw PreconditionError("velocity components must lie in [-1, 1]");
  if (n < 0) throw PreconditionError("step count must be non-negative");
  CellRef p = start;
  // Rings (and bounded columns) reflect: the component flips sign before a
  // move that would leave the grid.
  const auto reflect = [](int pos, int& v, int size) {
    if (v == 0) return pos;
    if (pos + v < 0 || pos + v >= size) v = -v;
    const int next = pos + v;
    return (next < 0 || next >= size) ? pos : next;
  };
  for (int s = 0; s < n; ++s) {
    p.major = reflect(p.major, vi, spec.major);
    if (spec.boundary == Boundary::Wrapping) {
      p.minor = ((p.minor + vj) % spec.minor + spec.minor) % spec.minor;
    } else {
      p.minor = reflect(p.minor, vj, spec.minor);
    }
  }
  return p;
}

uint64_t count_word_paths(const GridSpec& spec, const std::map<CellRef, char>& letters, const std::string& word,
                          const CellRef& start) {
  validate(spec);
  require_in_range(start, spec);
  if (word.empty()) throw PreconditionError("word must be non-empty");
  const auto letter = [&](const CellRef& c) {
    auto it = letters.find(c);
    return it == letters.end() ? '\0' : it->second;
  };
  if (letter(start) != word[0]) throw PreconditionError("start cell does not hold the word's first letter");

  std::map<CellRef, uint64_t> cur{{start, 1}};
  for (size_t i = 1; i < word.size(); ++i) {
    std::map<CellRef, uint64_t> nxt;
    for (const auto& [cell, ways] : cur) {
      for (const auto& nb : neighbors(cell, spec)) {
        if (letter(nb) != word[i]) continue;
        uint64_t& slot = nxt[nb];
        if (__builtin_add_overflow(slot, ways, &slot)) throw std::overflow_error("word path count exceeds 64 bits");
      }
    }
    cur = std::move(nxt);
  }
  uint64_t total = 0;
  for (const auto& [_, ways] : cur) total += ways;
  return total;
}

std::set<CellRef> open_reachable(const GridSpec& spec, const WallSet& walls, const CellRef& from) {
  validate(spec);
  require_in_range(from, spec);
  std::set<CellRef> seen{from};
  std::deque<CellRef> q{from};
  while (!q.empty()) {
    const auto cur = q.front();
    q.pop_front();
    for (const auto& nb : neighbors(cur, spec)) {
      if (walls.count(make_edge(cur, nb))) continue;
      if (seen.insert(nb).second) q.push_back(nb);
    }
  }
  return seen;
}

std::string solve_maze_entrance(const GridSpec& spec, const WallSet& walls, const LabeledCells& entrances,
                                const CellRef& exit) {
  if (entrances.size() < 2) throw PreconditionError("a maze needs at least two entrances");
  const auto reach = open_reachable(spec, walls, exit);
  std::vector<std::string> hits;
  for (const auto& [label, cell] : entrances) {
    require_in_range(cell, spec);
    if (reach.count(cell)) hits.push_back(label);
  }
  if (hits.size() != 1) {
    throw AmbiguityError(std::to_string(hits.size()) + " entrances reach the exit; expected exactly one");
  }
  return hits.front();
}

std::set<CellRef> increasing_reachable(const GridSpec& spec, const std::map<CellRef, int>& room_values,
                                       const CellRef& start) {
  validate(spec);
  require_in_range(start, spec);
  const auto value = [&](const CellRef& c) {
    auto it = room_values.find(c);
    if (it == room_values.end()) throw PreconditionError("room " + to_string(c) + " has no value");
    return it->second;
  };
  std::set<CellRef> seen{start};
  std::vector<CellRef> stack{start};
  while (!stack.empty()) {
    const auto cur = stack.back();
    stack.pop_back();
    const int v = value(cur);
    for (const auto& nb : neighbors(cur, spec))
      if (value(nb) > v && seen.insert(nb).second) stack.push_back(nb);
  }
  return seen;
}

std::string solve_monotonic_exit(const GridSpec& spec, const std::map<CellRef, int>& room_values,
                                 const CellRef& start, const LabeledCells& exits) {
  const auto reach = increasing_reachable(spec, room_values, start);
  std::vector<std::string> hits;
  for (const auto& [label, cell] : exits) {
    require_in_range(cell, spec);
    if (reach.count(cell)) hits.push_back(label);
  }
  if (hits.size() != 1) {
    throw AmbiguityError(std::to_string(hits.size()) + " exits are reachable; expected exactly one");
  }
  return hits.front();
}

std::string collect_right_hand_letters(const GridSpec& spec, const std::vector<PathStep>& path,
                                       const std::map<CellRef, char>& letters) {
  validate(spec);
  for (size_t i = 0; i < path.size(); ++i) {
    require_in_range(path[i].cell, spec);
    if (i + 1 < path.size()) {
      if (!adjacent(path[i].cell, path[i + 1].cell, spec)) {
        throw PreconditionError("path cells " + to_string(path[i].cell) + " and " + to_string(path[i + 1].cell) +
                                " are not adjacent");
      }
      if (heading_between(path[i].cell, path[i + 1].cell, spec) != path[i].heading) {
        throw PreconditionError("heading at " + to_string(path[i].cell) + " disagrees with the next step");
      }
    }
  }
  std::string out;
  for (const auto& s : path) {
    auto right = step(s.cell, right_of(s.heading), spec);
    if (!right) continue;
    if (auto it = letters.find(*right); it != letters.end()) out += it->second;
  }
  return out;
}

}  // namespace polarbench
