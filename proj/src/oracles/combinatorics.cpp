#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <deque>
#include <limits>

#include "polarbench/oracles.hpp"

namespace polarbench {

namespace {

void require_planar(const GridSpec& spec) {
  validate(spec);
  if (spec.topology != Topology::Cartesian && spec.topology != Topology::Polar) {
    throw PreconditionError("move-set oracles need a Cartesian or Polar grid");
  }
}

std::optional<CellRef> apply(const GridSpec& spec, const CellRef& from, const Move& m) {
  CellRef to{from.major + m.d_major, from.minor + m.d_minor};
  if (spec.boundary == Boundary::Wrapping && m.wraps) {
    to.minor = ((to.minor % spec.minor) + spec.minor) % spec.minor;
  }
  if (!in_range(to, spec) || to == from) return std::nullopt;
  return to;
}

uint64_t checked_add(uint64_t a, uint64_t b) {
  uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("path count exceeds 64 bits");
  return out;
}

/// Integer potential that strictly increases along every move, or nullopt.
std::optional<std::pair<int, int>> topological_weights(const GridSpec& spec, const MoveSet& moves) {
  const bool seam = spec.boundary == Boundary::Wrapping &&
                    std::any_of(moves.moves.begin(), moves.moves.end(),
                                [](const Move& m) { return m.wraps && m.d_minor != 0; });
  for (int s1 : {1, -1}) {
    if (seam) {
      // Crossing the seam breaks any order on the minor axis.
      if (std::all_of(moves.moves.begin(), moves.moves.end(), [&](const Move& m) { return s1 * m.d_major > 0; }))
        return std::pair{s1, 0};
      continue;
    }
    for (int s2 : {1, -1}) {
      const bool ok = std::all_of(moves.moves.begin(), moves.moves.end(), [&](const Move& m) {
        return s1 * m.d_major >= 0 && s2 * m.d_minor >= 0 && (m.d_major != 0 || m.d_minor != 0);
      });
      if (ok) return std::pair{s1, s2};
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<CellRef> move_targets(const GridSpec& spec, const MoveSet& moves, const CellRef& from) {
  std::vector<CellRef> out;
  for (const auto& m : moves.moves)
    if (auto to = apply(spec, from, m)) out.push_back(*to);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

uint64_t count_monotone_paths(const GridSpec& spec, const MoveSet& moves, const CellRef& start, const CellRef& end,
                              const std::set<CellRef>& blocked, const std::optional<CellRef>& checkpoint) {
  require_planar(spec);
  require_in_range(start, spec);
  require_in_range(end, spec);
  if (moves.moves.empty()) throw PreconditionError("empty move set");
  if (blocked.count(start) || blocked.count(end)) throw PreconditionError("start or end cell is blocked");
  if (checkpoint) require_in_range(*checkpoint, spec);
  const auto weights = topological_weights(spec, moves);
  if (!weights) {
    throw PreconditionError("move set is not monotone on this grid; use count_fixed_length_walks instead");
  }

  auto cells = all_cells(spec);
  const auto potential = [&](const CellRef& c) { return weights->first * c.major + weights->second * c.minor; };
  std::stable_sort(cells.begin(), cells.end(),
                   [&](const CellRef& a, const CellRef& b) { return potential(a) < potential(b); });

  // ways[flag][cell]: flag = checkpoint already visited (always 1 without one)
  const size_t n = static_cast<size_t>(spec.cell_count());
  std::vector<uint64_t> ways[2] = {std::vector<uint64_t>(n, 0), std::vector<uint64_t>(n, 0)};
  const auto idx = [&](const CellRef& c) { return static_cast<size_t>(linear_index(c, spec)); };
  const auto flag_at = [&](const CellRef& c, int flag) { return (!checkpoint || *checkpoint == c) ? 1 : flag; };
  ways[flag_at(start, 0)][idx(start)] = 1;

  for (const auto& c : cells) {
    if (blocked.count(c)) continue;
    for (int f = 0; f < 2; ++f) {
      const uint64_t w = ways[f][idx(c)];
      if (w == 0) continue;
      for (const auto& m : moves.moves) {
        auto to = apply(spec, c, m);
        if (!to || blocked.count(*to)) continue;
        const int nf = flag_at(*to, f);
        ways[nf][idx(*to)] = checked_add(ways[nf][idx(*to)], w);
      }
    }
  }
  return ways[1][idx(end)];
}

uint64_t count_fixed_length_walks(const GridSpec& spec, const MoveSet& moves, const CellRef& start,
                                  const CellRef& target, int k) {
  require_planar(spec);
  require_in_range(start, spec);
  require_in_range(target, spec);
  if (k < 0) throw PreconditionError("walk length must be non-negative");
  const size_t n = static_cast<size_t>(spec.cell_count());
  std::vector<std::vector<size_t>> next(n);
  for (const auto& c : all_cells(spec)) {
    for (const auto& t : move_targets(spec, moves, c))
      next[static_cast<size_t>(linear_index(c, spec))].push_back(static_cast<size_t>(linear_index(t, spec)));
  }
  std::vector<uint64_t> cur(n, 0), nxt(n, 0);
  cur[static_cast<size_t>(linear_index(start, spec))] = 1;
  for (int s = 0; s < k; ++s) {
    std::fill(nxt.begin(), nxt.end(), 0);
    for (size_t i = 0; i < n; ++i) {
      if (!cur[i]) continue;
      for (size_t j : next[i]) nxt[j] = checked_add(nxt[j], cur[i]);
    }
    std::swap(cur, nxt);
  }
  return cur[static_cast<size_t>(linear_index(target, spec))];
}

Rational walk_pass_probability(const GridSpec& spec, const CellRef& a, const CellRef& b, const CellRef& c) {
  using boost::multiprecision::cpp_rational;
  validate(spec);
  require_in_range(a, spec);
  require_in_range(b, spec);
  require_in_range(c, spec);
  if (a == b || b == c) throw PreconditionError("walk endpoints must differ from each other and from C");
  if (a == c) return Rational(1);

  // B must lie in A's component.
  {
    std::set<CellRef> seen{a};
    std::deque<CellRef> q{a};
    while (!q.empty()) {
      auto cur = q.front();
      q.pop_front();
      for (const auto& nb : neighbors(cur, spec))
        if (seen.insert(nb).second) q.push_back(nb);
    }
    if (!seen.count(b)) throw UnreachableError("B " + to_string(b) + " is unreachable from A " + to_string(a));
  }

  // Transient states (cell, visited-C flag) reachable from (a, 0); B absorbs.
  using State = std::pair<CellRef, int>;
  std::map<State, size_t> index;
  std::vector<State> states;
  std::deque<State> q{{a, 0}};
  index[{a, 0}] = 0;
  states.push_back({a, 0});
  while (!q.empty()) {
    auto [cell, flag] = q.front();
    q.pop_front();
    for (const auto& nb : neighbors(cell, spec)) {
      if (nb == b) continue;
      State s{nb, flag || nb == c ? 1 : 0};
      if (!index.count(s)) {
        index[s] = states.size();
        states.push_back(s);
        q.push_back(s);
      }
    }
  }

  // (I - P) x = r, where r collects the one-step mass absorbed at (B, 1).
  const size_t n = states.size();
  std::vector<std::vector<cpp_rational>> m(n, std::vector<cpp_rational>(n + 1, cpp_rational(0)));
  for (size_t i = 0; i < n; ++i) {
    const auto [cell, flag] = states[i];
    const auto nbs = neighbors(cell, spec);
    const cpp_rational p(1, static_cast<int64_t>(nbs.size()));
    m[i][i] += 1;
    for (const auto& nb : nbs) {
      if (nb == b) {
        if (flag) m[i][n] += p;
        continue;
      }
      m[i][index.at({nb, flag || nb == c ? 1 : 0})] -= p;
    }
  }
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw std::logic_error("singular hitting system");
    std::swap(m[piv], m[col]);
    const cpp_rational inv = 1 / m[col][col];
    for (size_t k = col; k <= n; ++k) m[col][k] *= inv;
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const cpp_rational f = m[r][col];
      for (size_t k = col; k <= n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  const cpp_rational& x = m[0][n];
  const auto num = boost::multiprecision::numerator(x);
  const auto den = boost::multiprecision::denominator(x);
  if (num > std::numeric_limits<int64_t>::max() || den > std::numeric_limits<int64_t>::max()) {
    throw std::overflow_error("walk probability does not fit 64-bit fraction");
  }
  return Rational(static_cast<int64_t>(num), static_cast<int64_t>(den));
}

}  // namespace polarbench
