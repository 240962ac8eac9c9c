#include "doctest.h"
#include "polarbench/dataset.hpp"
#include "polarbench/evalharness.hpp"
#include "testing.hpp"

using namespace polarbench;
using testing::TempDir;
using testing::lines_of;
using testing::slurp;
using testing::spit;

namespace fs = std::filesystem;

namespace {

Instance with_options(const char* task, size_t count) {
  auto inst = generate_pair(find_task(task), 0, GenConfig{}).cartesian;
  inst.options.clear();
  for (size_t i = 0; i < count; ++i) inst.options.push_back("option " + std::to_string(i));
  return inst;
}

}  // namespace

TEST_CASE("sha256 of a known string") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("").size() == 64u);
}

TEST_CASE("one pair writes two records and two images") {
  TempDir dir("ds");
  const auto pair = generate_pair(find_task("maze"), 4, GenConfig{});
  const auto manifest = write_dataset({&pair.cartesian, &pair.polar}, dir.path());
  CHECK(manifest == dir.path() / "manifest.jsonl");
  CHECK(lines_of(slurp(manifest)).size() == 2u);
  size_t svgs = 0;
  for (const auto& e : fs::directory_iterator(dir / "images")) svgs += e.path().extension() == ".svg";
  CHECK(svgs == 2u);
  CHECK(slurp(dir / "images" / (pair.polar.id + ".svg")) == pair.polar.svg);
}

TEST_CASE("manifest records carry the documented fields") {
  const auto& inst = testing::small_dataset().pairs.at(0).polar;
  const auto rec = manifest_record(inst);
  for (const char* key : {"id", "task_id", "category", "subcategory", "topology", "boundary", "alignment",
                          "answer_type", "seed", "question", "ground_truth", "image_path", "image_sha256", "grid",
                          "generator_version", "puzzle", "meta"}) {
    CHECK_MESSAGE(rec.contains(key), key);
  }
  CHECK(rec["image_path"] == "images/" + inst.id + ".svg");
  CHECK(rec["image_sha256"] == sha256_hex(inst.svg));
  CHECK(rec["generator_version"] == kGeneratorVersion);
}

TEST_CASE("writing is deterministic and replaces stale content") {
  TempDir a("dsa"), b("dsb");
  const auto& ds = testing::small_dataset();
  write_dataset(ds, a.path());
  spit(a / "images" / "stale.svg", "<svg/>");
  write_dataset(ds, a.path());
  write_dataset(ds, b.path());
  CHECK(slurp(a / "manifest.jsonl") == slurp(b / "manifest.jsonl"));
  CHECK_FALSE(fs::exists(a / "images" / "stale.svg"));
  for (const auto& e : fs::directory_iterator(b / "images"))
    CHECK(slurp(e.path()) == slurp(a / "images" / e.path().filename()));
}

TEST_CASE("round trip preserves instances") {
  TempDir dir("rt");
  const auto& ds = testing::small_dataset();
  write_dataset(ds, dir.path());
  const auto back = read_dataset(dir.path());
  const auto orig = ds.instances();
  REQUIRE(back.size() == orig.size());
  for (size_t i = 0; i < back.size(); ++i) {
    CAPTURE(orig[i]->id);
    CHECK(back[i] == *orig[i]);
  }
}

TEST_CASE("image problems are reported per entry") {
  TempDir dir("img");
  const auto pair = generate_pair(find_task("sudoku"), 1, GenConfig{});
  write_dataset({&pair.cartesian, &pair.polar}, dir.path());
  fs::remove(dir / "images" / (pair.polar.id + ".svg"));
  spit(dir / "images" / (pair.cartesian.id + ".svg"), "<svg>changed</svg>");
  const auto entries = read_manifest(dir.path());
  REQUIRE(entries.size() == 2u);
  CHECK(entries[0].image_problem.find("digest") != std::string::npos);
  CHECK(entries[1].image_problem.find(pair.polar.id + ".svg") != std::string::npos);
  CHECK_THROWS_AS(read_dataset(dir.path()), DatasetError);
}

TEST_CASE("malformed manifests name the line") {
  TempDir dir("bad");
  const auto pair = generate_pair(find_task("sudoku"), 1, GenConfig{});
  write_dataset({&pair.cartesian, &pair.polar}, dir.path());
  auto text = slurp(dir / "manifest.jsonl");
  spit(dir / "manifest.jsonl", text + "{not json\n");
  CHECK_THROWS_WITH_AS(read_manifest(dir.path()), doctest::Contains("manifest.jsonl:3"), DatasetError);
  CHECK_THROWS_AS(read_manifest(dir / "nowhere"), DatasetError);
}

TEST_CASE("duplicate ids are rejected") {
  TempDir dir("dup");
  const auto pair = generate_pair(find_task("sudoku"), 1, GenConfig{});
  CHECK_THROWS_AS(write_dataset({&pair.cartesian, &pair.cartesian}, dir.path()), DatasetError);
}

TEST_CASE("forced baselines") {
  CHECK(round1(random_baseline(find_task("sudoku"), {&testing::small_dataset().pairs.at(0).cartesian})) == 20.0);
  const auto five = with_options("n_queens", 5);
  const auto six = with_options("n_queens", 6);
  const auto four = with_options("n_queens", 4);
  CHECK(round1(random_baseline(find_task("n_queens"), {&five})) == 20.0);
  CHECK(round1(random_baseline(find_task("n_queens"), {&six})) == 16.7);
  CHECK(round1(random_baseline(find_task("n_queens"), {&four})) == 25.0);
  CHECK(round1(random_baseline(find_task("n_queens"), {&five, &four})) == 22.5);

  const auto lattice = generate_pair(find_task("lattice_paths"), 0, GenConfig{}).cartesian;
  CHECK(random_baseline(find_task("lattice_paths"), {&lattice}) == 0.0);
  CHECK(answer_domain_size(find_task("lattice_paths"), lattice) == 0u);

  // Open coordinate answers over a finite grid: one cell out of all of them.
  const auto bounce = generate_pair(find_task("bouncing_point"), 0, GenConfig{}).polar;
  CHECK(answer_domain_size(find_task("bouncing_point"), bounce) == static_cast<size_t>(bounce.grid.cell_count()));
  CHECK_THROWS_AS(random_baseline(find_task("sudoku"), {}), std::invalid_argument);
}
