#pragma once
// Internal interface every task generator implements, plus shared helpers.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "polarbench/oracles.hpp"
#include "polarbench/rng.hpp"
#include "polarbench/taskgen.hpp"

namespace polarbench::gen {

using nlohmann::json;

/// A draw that failed a solvability or distractor check; the caller redraws.
class Reject : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Ranges {
 public:
  explicit Ranges(std::map<std::string, ParamRange> r) : r_(std::move(r)) {}
  int draw(Rng& rng, const std::string& name) const;
  const ParamRange& at(const std::string& name) const;

 private:
  std::map<std::string, ParamRange> r_;
};

struct Draft {
  int major = 1;
  int minor = 1;
  json cartesian;     // puzzle content per side; identical unless the task
  json polar;         // needs side-specific rendering (grid rotation panels)
  json construction;  // what the generator planted
  std::vector<std::string> options;
};

class TaskGenerator {
 public:
  virtual ~TaskGenerator() = default;
  virtual Draft draw(Rng& rng, const Ranges& ranges) const = 0;
  /// Oracle run over puzzle content; throws AmbiguityError or
  /// PreconditionError when the content does not pin down one answer.
  virtual Answer solve(const json& puzzle, const GridSpec& grid, const std::vector<std::string>& options) const = 0;
  virtual SceneSpec scene(const json& puzzle, const GridSpec& grid) const = 0;
  virtual std::string narrative(const json& puzzle) const = 0;
  /// Extra topology-specific instructions appended after the layout note.
  virtual std::string layout_extra(const json&, const GridSpec&) const { return {}; }
  /// Cartesian grid of a layout variant (word search only).
  virtual bool supports_variants() const { return false; }
};

const TaskGenerator& generator_for(const std::string& task_id);

// ---- JSON helpers ----------------------------------------------------------

json cell_json(const CellRef& c);
CellRef cell_from(const json& j);
json cells_json(const std::vector<CellRef>& cells);
std::vector<CellRef> cells_from(const json& j);
json walls_json(const WallSet& walls);
WallSet walls_from(const json& j);

// ---- Question text ---------------------------------------------------------

/// Axis vocabulary and numbering conventions for one side.
std::string layout_note(const GridSpec& grid);
std::string format_instruction(AnswerType type, const GridSpec& grid);
std::string options_block(const std::vector<std::string>& options);
/// Direction words for a heading on the given topology ("right", "clockwise").
std::string heading_words(Heading h, Topology t);
/// Explicit right-turn cycle for the topology.
std::string right_turn_note(Topology t);
std::string coordinate_text(const CellRef& c);

// ---- Options ---------------------------------------------------------------

/// Option letter of the unique option equal to `value`; AmbiguityError when
/// zero or several options match.
OptionLabel pick_option(const std::vector<std::string>& options, const std::string& value);

/// Shuffled option list holding every entry of `required` plus distractors
/// drawn from `pool` until `count` entries exist. Entries are distinct.
std::vector<std::string> build_options(Rng& rng, const std::vector<std::string>& required,
                                       std::vector<std::string> pool, size_t count);

// ---- Palette ---------------------------------------------------------------

inline constexpr const char* kShade = "#9e9e9e";
inline constexpr const char* kHighlight = "#ffe082";
inline constexpr const char* kStartFill = "#a5d6a7";
inline constexpr const char* kTargetFill = "#ef9a9a";
const std::vector<std::string>& palette();
/// Plain-English name of a palette color.
std::string color_name(const std::string& hex);

}  // namespace polarbench::gen
