#include <set>

#include "doctest.h"
#include "naive.hpp"
#include "polarbench/rng.hpp"
#include "polarbench/topology.hpp"

using namespace polarbench;

namespace {

GridSpec grid(Topology t, int major, int minor, Boundary b = Boundary::Bounded) {
  GridSpec g;
  g.topology = t;
  g.major = major;
  g.minor = minor;
  g.boundary = b;
  return g;
}

std::set<CellRef> as_set(const std::vector<CellRef>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("map_cell keeps indices") {
  const auto g = grid(Topology::Cartesian, 3, 4);
  CHECK(map_cell({0, 0}, g) == CellRef{0, 0});
  CHECK(map_cell({2, 3}, g) == CellRef{2, 3});
  CHECK(mapped_spec(g).topology == Topology::Polar);
  CHECK(mapped_spec(mapped_spec(g)) == g);
}

TEST_CASE("map_cell round trips on 5x7") {
  const auto c = grid(Topology::Cartesian, 5, 7);
  const auto p = mapped_spec(c);
  std::set<CellRef> images;
  for (const auto& cell : all_cells(c)) {
    const auto img = map_cell(cell, c);
    CHECK(in_range(img, p));
    CHECK(map_cell(img, p) == cell);
    images.insert(img);
  }
  CHECK(images.size() == 35u);
}

TEST_CASE("map_cell rejects out of range cells and tilings") {
  CHECK_THROWS_AS(map_cell({3, 0}, grid(Topology::Cartesian, 3, 4)), std::out_of_range);
  CHECK_THROWS_AS(map_cell({0, 0}, grid(Topology::Hexagonal, 3, 3)), std::invalid_argument);
}

TEST_CASE("corner and seam neighbors") {
  CHECK(neighbors({0, 0}, grid(Topology::Cartesian, 3, 4)) == std::vector<CellRef>{{0, 1}, {1, 0}});
  CHECK(as_set(neighbors({0, 0}, grid(Topology::Polar, 3, 4, Boundary::Wrapping))) ==
        std::set<CellRef>{{0, 1}, {0, 3}, {1, 0}});
}

TEST_CASE("bounded polar adjacency equals cartesian adjacency") {
  const auto p = grid(Topology::Polar, 3, 4);
  const auto c = mapped_spec(p);
  for (const auto& cell : all_cells(p)) {
    std::set<CellRef> mapped;
    for (const auto& n : neighbors(cell, p)) mapped.insert(map_cell(n, p));
    CHECK(mapped == as_set(neighbors(map_cell(cell, p), c)));
  }
}

TEST_CASE("neighbors are sorted, distinct, symmetric and never self") {
  polarbench::Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Topology t = rng.pick(std::vector<Topology>{Topology::Cartesian, Topology::Polar, Topology::Hexagonal,
                                                      Topology::Octagonal});
    const bool planar = t == Topology::Cartesian || t == Topology::Polar;
    const int minor = rng.uniform_int(t == Topology::Polar ? 3 : 1, 9);
    const auto g =
        grid(t, rng.uniform_int(1, 6), minor, planar && rng.bernoulli(0.5) ? Boundary::Wrapping : Boundary::Bounded);
    for (const auto& cell : all_cells(g)) {
      const auto nb = neighbors(cell, g);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      CHECK(as_set(nb).size() == nb.size());
      for (const auto& n : nb) {
        CHECK(n != cell);
        CHECK(adjacent(n, cell, g));
      }
      if (planar) CHECK(as_set(nb) == as_set(naive::side_neighbors(g, cell)));
    }
  }
}

TEST_CASE("hex interior cells have six neighbors, octagon interior cells eight") {
  CHECK(neighbors({1, 1}, grid(Topology::Hexagonal, 3, 3)).size() == 6u);
  CHECK(neighbors({2, 2}, grid(Topology::Hexagonal, 5, 5)).size() == 6u);
  CHECK(neighbors({1, 1}, grid(Topology::Octagonal, 3, 3)).size() == 8u);
  CHECK(neighbors({0, 0}, grid(Topology::Octagonal, 3, 3)).size() == 3u);
}

TEST_CASE("step respects the boundary") {
  const auto wrap = grid(Topology::Cartesian, 3, 4, Boundary::Wrapping);
  const auto bound = grid(Topology::Cartesian, 3, 4);
  CHECK(step({0, 3}, Heading::MinorPlus, wrap) == CellRef{0, 0});
  CHECK_FALSE(step({0, 3}, Heading::MinorPlus, bound).has_value());
  CHECK_FALSE(step({2, 1}, Heading::MajorPlus, wrap).has_value());
  CHECK_FALSE(step({2, 1}, Heading::MajorPlus, bound).has_value());
  CHECK(step({0, 0}, Heading::MinorMinus, wrap) == CellRef{0, 3});
  CHECK(step({1, 1}, Heading::MajorMinus, bound) == CellRef{0, 1});
}

TEST_CASE("headings rotate clockwise") {
  CHECK(turn_right(Heading::MajorMinus) == Heading::MinorPlus);
  CHECK(turn_right(Heading::MinorPlus) == Heading::MajorPlus);
  CHECK(turn_right(Heading::MajorPlus) == Heading::MinorMinus);
  CHECK(turn_right(Heading::MinorMinus) == Heading::MajorMinus);
  for (Heading h : {Heading::MajorMinus, Heading::MajorPlus, Heading::MinorMinus, Heading::MinorPlus}) {
    CHECK(turn_left(turn_right(h)) == h);
    CHECK(reverse(reverse(h)) == h);
    CHECK(turn_right(turn_right(h)) == reverse(h));
    CHECK(heading_from_string(to_string(h)) == h);
  }
  CHECK(right_of(Heading::MinorPlus) == Heading::MajorPlus);
  CHECK(right_of(Heading::MajorPlus) == Heading::MinorMinus);
}

TEST_CASE("heading_between inverts step, including across the seam") {
  const auto g = grid(Topology::Polar, 3, 5, Boundary::Wrapping);
  for (const auto& cell : all_cells(g)) {
    for (Heading h : {Heading::MajorMinus, Heading::MajorPlus, Heading::MinorMinus, Heading::MinorPlus}) {
      if (auto to = step(cell, h, g)) CHECK(heading_between(cell, *to, g) == h);
    }
  }
  CHECK_THROWS_AS(heading_between({0, 0}, {2, 0}, g), std::invalid_argument);
}

TEST_CASE("linear index round trip") {
  const auto g = grid(Topology::Cartesian, 4, 6);
  for (int i = 0; i < g.cell_count(); ++i) CHECK(linear_index(cell_at(i, g), g) == i);
}

TEST_CASE("validate rejects broken specs") {
  CHECK_THROWS_AS(validate(grid(Topology::Cartesian, 0, 3)), std::invalid_argument);
  CHECK_THROWS_AS(validate(grid(Topology::Polar, 3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(validate(grid(Topology::Hexagonal, 3, 3, Boundary::Wrapping)), std::invalid_argument);
  auto g = grid(Topology::Polar, 3, 6);
  g.inner_radius_ratio = 1.0;
  CHECK_THROWS_AS(validate(g), std::invalid_argument);
  CHECK_THROWS_WITH_AS(neighbors({5, 0}, grid(Topology::Cartesian, 3, 4)), doctest::Contains("3x4"),
                       std::out_of_range);
}

TEST_CASE("string codecs round trip") {
  for (Topology t : {Topology::Cartesian, Topology::Polar, Topology::Hexagonal, Topology::Octagonal})
    CHECK(topology_from_string(to_string(t)) == t);
  for (Boundary b : {Boundary::Bounded, Boundary::Wrapping}) CHECK(boundary_from_string(to_string(b)) == b);
}
