#pragma once
// Slow reference implementations the production oracles are checked against.
// Everything here is written from the rule statements alone and shares no
// code with src/oracles.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polarbench/topology.hpp"

namespace naive {

using polarbench::Boundary;
using polarbench::CellRef;
using polarbench::GridSpec;

using Offset = std::pair<int, int>;

/// Cell reached by (dr, dc), or nullopt when it leaves the grid. Only the
/// minor axis wraps, and only under Wrapping.
std::optional<CellRef> shift(const GridSpec& g, const CellRef& c, int dr, int dc);

/// Side-sharing neighbors on a Cartesian/Polar grid.
std::vector<CellRef> side_neighbors(const GridSpec& g, const CellRef& c);

/// Lists every move sequence from start to end (moves must be monotone).
uint64_t enumerate_paths(const GridSpec& g, const std::vector<Offset>& moves, const CellRef& start,
                         const CellRef& end, const std::set<CellRef>& blocked,
                         const std::optional<CellRef>& checkpoint = std::nullopt);

/// Tries all |moves|^k sequences.
uint64_t enumerate_walks(const GridSpec& g, const std::vector<Offset>& moves, const CellRef& start,
                         const CellRef& target, int k);

/// Fraction of simulated walks from a (absorbed at b) that touch c.
double monte_carlo_pass(const GridSpec& g, const CellRef& a, const CellRef& b, const CellRef& c, int64_t trials,
                        uint64_t seed);

/// Flips commute and cancel in pairs, so the minimum is the smallest subset
/// of strip positions whose combined flip turns cells into target.
std::optional<int> subset_min_flips(const std::vector<int>& cells, int strip, const std::vector<int>& target,
                                    bool cyclic);

/// Queens with one per row, tried over every column permutation. Fixed
/// queens must appear in the placement. Toroidal diagonals when wrapping.
uint64_t permutation_queens(int n, const std::set<CellRef>& fixed, bool wrapping);

/// Counts completions of a partial Latin-square-with-boxes board.
uint64_t sudoku_completions(int n, int box_rows, int box_cols, std::vector<int> cells, uint64_t cap = 2);

/// Enumerates walks from start spelling word over side neighbors.
uint64_t enumerate_word_paths(const GridSpec& g, const std::map<CellRef, char>& letters, const std::string& word,
                              const CellRef& start);

/// Simple step-by-step simulation of a point that reflects off walls (or
/// wraps across the minor seam).
CellRef bounce(const GridSpec& g, CellRef p, int vr, int vc, int steps);

}  // namespace naive
