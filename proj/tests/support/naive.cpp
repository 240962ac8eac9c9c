#include "naive.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace naive {

std::optional<CellRef> shift(const GridSpec& g, const CellRef& c, int dr, int dc) {
  int r = c.major + dr;
  int m = c.minor + dc;
  if (g.boundary == Boundary::Wrapping) m = ((m % g.minor) + g.minor) % g.minor;
  if (r < 0 || r >= g.major || m < 0 || m >= g.minor) return std::nullopt;
  CellRef out{r, m};
  if (out == c) return std::nullopt;
  return out;
}

std::vector<CellRef> side_neighbors(const GridSpec& g, const CellRef& c) {
  std::set<CellRef> out;
  for (auto [dr, dc] : {Offset{1, 0}, Offset{-1, 0}, Offset{0, 1}, Offset{0, -1}})
    if (auto n = shift(g, c, dr, dc)) out.insert(*n);
  return {out.begin(), out.end()};
}

uint64_t enumerate_paths(const GridSpec& g, const std::vector<Offset>& moves, const CellRef& start,
                         const CellRef& end, const std::set<CellRef>& blocked,
                         const std::optional<CellRef>& checkpoint) {
  // Distinct cell sequences, collected explicitly.
  std::set<std::vector<CellRef>> found;
  std::vector<CellRef> trail{start};
  std::function<void()> dfs = [&] {
    const CellRef cur = trail.back();
    if (cur == end) {
      if (!checkpoint || std::find(trail.begin(), trail.end(), *checkpoint) != trail.end()) found.insert(trail);
      return;
    }
    if (trail.size() > static_cast<size_t>(g.cell_count())) return;
    for (auto [dr, dc] : moves) {
      auto n = shift(g, cur, dr, dc);
      if (!n || blocked.count(*n)) continue;
      trail.push_back(*n);
      dfs();
      trail.pop_back();
    }
  };
  dfs();
  return found.size();
}

uint64_t enumerate_walks(const GridSpec& g, const std::vector<Offset>& moves, const CellRef& start,
                         const CellRef& target, int k) {
  std::set<std::vector<CellRef>> found;
  std::vector<CellRef> trail{start};
  std::function<void()> dfs = [&] {
    if (static_cast<int>(trail.size()) == k + 1) {
      if (trail.back() == target) found.insert(trail);
      return;
    }
    for (auto [dr, dc] : moves) {
      auto n = shift(g, trail.back(), dr, dc);
      if (!n) continue;
      trail.push_back(*n);
      dfs();
      trail.pop_back();
    }
  };
  dfs();
  return found.size();
}

double monte_carlo_pass(const GridSpec& g, const CellRef& a, const CellRef& b, const CellRef& c, int64_t trials,
                        uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::map<CellRef, std::vector<CellRef>> adj;
  for (int r = 0; r < g.major; ++r)
    for (int m = 0; m < g.minor; ++m) adj[{r, m}] = side_neighbors(g, {r, m});
  int64_t hits = 0;
  for (int64_t t = 0; t < trials; ++t) {
    CellRef cur = a;
    bool seen = cur == c;
    while (cur != b) {
      const auto& nb = adj[cur];
      cur = nb[std::uniform_int_distribution<size_t>(0, nb.size() - 1)(gen)];
      seen = seen || cur == c;
    }
    hits += seen;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

std::optional<int> subset_min_flips(const std::vector<int>& cells, int strip, const std::vector<int>& target,
                                    bool cyclic) {
  const int n = static_cast<int>(cells.size());
  const int starts = cyclic ? n : n - strip + 1;
  std::optional<int> best;
  for (uint32_t subset = 0; subset < (1u << starts); ++subset) {
    std::vector<int> v = cells;
    for (int s = 0; s < starts; ++s) {
      if (!(subset >> s & 1)) continue;
      for (int i = 0; i < strip; ++i) v[static_cast<size_t>((s + i) % n)] ^= 1;
    }
    if (v != target) continue;
    const int used = __builtin_popcount(subset);
    if (!best || used < *best) best = used;
  }
  return best;
}

uint64_t permutation_queens(int n, const std::set<CellRef>& fixed, bool wrapping) {
  std::vector<int> cols(static_cast<size_t>(n));
  std::iota(cols.begin(), cols.end(), 0);
  uint64_t count = 0;
  do {
    bool ok = true;
    for (const auto& f : fixed) ok = ok && cols[static_cast<size_t>(f.major)] == f.minor;
    for (int i = 0; ok && i < n; ++i) {
      for (int j = i + 1; ok && j < n; ++j) {
        const int ci = cols[static_cast<size_t>(i)], cj = cols[static_cast<size_t>(j)];
        if (wrapping) {
          ok = ((i - ci) % n + n) % n != ((j - cj) % n + n) % n && (i + ci) % n != (j + cj) % n;
        } else {
          ok = std::abs(i - j) != std::abs(ci - cj);
        }
      }
    }
    count += ok;
  } while (std::next_permutation(cols.begin(), cols.end()));
  return count;
}

uint64_t sudoku_completions(int n, int box_rows, int box_cols, std::vector<int> cells, uint64_t cap) {
  const auto fits = [&](int idx, int v) {
    const int r = idx / n, c = idx % n;
    for (int k = 0; k < n; ++k) {
      if (k != c && cells[static_cast<size_t>(r * n + k)] == v) return false;
      if (k != r && cells[static_cast<size_t>(k * n + c)] == v) return false;
    }
    const int r0 = r / box_rows * box_rows, c0 = c / box_cols * box_cols;
    for (int i = r0; i < r0 + box_rows; ++i)
      for (int j = c0; j < c0 + box_cols; ++j)
        if ((i != r || j != c) && cells[static_cast<size_t>(i * n + j)] == v) return false;
    return true;
  };
  for (int i = 0; i < n * n; ++i)
    if (cells[static_cast<size_t>(i)] && !fits(i, cells[static_cast<size_t>(i)])) return 0;
  uint64_t count = 0;
  std::function<void(int)> fill = [&](int idx) {
    if (count >= cap) return;
    while (idx < n * n && cells[static_cast<size_t>(idx)]) ++idx;
    if (idx == n * n) {
      ++count;
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (!fits(idx, v)) continue;
      cells[static_cast<size_t>(idx)] = v;
      fill(idx + 1);
      cells[static_cast<size_t>(idx)] = 0;
    }
  };
  fill(0);
  return count;
}

uint64_t enumerate_word_paths(const GridSpec& g, const std::map<CellRef, char>& letters, const std::string& word,
                              const CellRef& start) {
  const auto at = [&](const CellRef& c) {
    auto it = letters.find(c);
    return it == letters.end() ? '\0' : it->second;
  };
  uint64_t count = 0;
  std::function<void(const CellRef&, size_t)> dfs = [&](const CellRef& cur, size_t i) {
    if (i == word.size()) {
      ++count;
      return;
    }
    for (const auto& n : side_neighbors(g, cur))
      if (at(n) == word[i]) dfs(n, i + 1);
  };
  if (at(start) == word[0]) dfs(start, 1);
  return count;
}

CellRef bounce(const GridSpec& g, CellRef p, int vr, int vc, int steps) {
  for (int s = 0; s < steps; ++s) {
    if (vr != 0) {
      if (p.major + vr < 0 || p.major + vr >= g.major) vr = -vr;
      if (p.major + vr >= 0 && p.major + vr < g.major) p.major += vr;
    }
    if (vc != 0) {
      if (g.boundary == Boundary::Wrapping) {
        p.minor = (p.minor + vc + g.minor) % g.minor;
      } else {
        if (p.minor + vc < 0 || p.minor + vc >= g.minor) vc = -vc;
        if (p.minor + vc >= 0 && p.minor + vc < g.minor) p.minor += vc;
      }
    }
  }
  return p;
}

}  // namespace naive
