#pragma once
// Tagged union over the five answer formats plus its JSON and text codecs.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace polarbench {

enum class AnswerType { OptionLabel, Digit, Coordinate, Str, IntList };

struct OptionLabel {
  char letter = 'A';
  friend bool operator==(const OptionLabel&, const OptionLabel&) = default;
};
struct Digit {
  int64_t value = 0;
  friend bool operator==(const Digit&, const Digit&) = default;
};
struct Coordinate {
  int major = 0;
  int minor = 0;
  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};
struct Str {
  std::string text;
  friend bool operator==(const Str&, const Str&) = default;
};
/// Non-increasing sequence; duplicates allowed.
struct IntList {
  std::vector<int64_t> values;
  friend bool operator==(const IntList&, const IntList&) = default;
};

using Answer = std::variant<OptionLabel, Digit, Coordinate, Str, IntList>;

AnswerType type_of(const Answer& a);

/// Checks the per-alternative invariants (letter in A..F, list order).
bool well_formed(const Answer& a);

/// Canonical human/model-facing rendering: "B", "13", "(2, 5)", "CAT", "[5, 3]".
std::string to_text(const Answer& a);

nlohmann::json to_json(const Answer& a);
/// Throws std::invalid_argument on malformed input.
Answer answer_from_json(const nlohmann::json& j);

std::string_view to_string(AnswerType t);
AnswerType answer_type_from_string(std::string_view s);

inline char option_letter(size_t index) { return static_cast<char>('A' + index); }

}  // namespace polarbench
