#include "polarbench/answer.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace polarbench {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

AnswerType type_of(const Answer& a) { return static_cast<AnswerType>(a.index()); }

bool well_formed(const Answer& a) {
  return std::visit(overloaded{
                        [](const OptionLabel& o) { return o.letter >= 'A' && o.letter <= 'F'; },
                        [](const Digit&) { return true; },
                        [](const Coordinate& c) { return c.major >= 0 && c.minor >= 0; },
                        [](const Str&) { return true; },
                        [](const IntList& l) {
                          return std::is_sorted(l.values.begin(), l.values.end(), std::greater<>());
                        },
                    },
                    a);
}

std::string to_text(const Answer& a) {
  return std::visit(overloaded{
                        [](const OptionLabel& o) { return std::string(1, o.letter); },
                        [](const Digit& d) { return std::to_string(d.value); },
                        [](const Coordinate& c) {
                          return "(" + std::to_string(c.major) + ", " + std::to_string(c.minor) + ")";
                        },
                        [](const Str& s) { return s.text; },
                        [](const IntList& l) {
                          std::string out = "[";
                          for (size_t i = 0; i < l.values.size(); ++i) {
                            if (i) out += ", ";
                            out += std::to_string(l.values[i]);
                          }
                          return out + "]";
                        },
                    },
                    a);
}

nlohmann::json to_json(const Answer& a) {
  nlohmann::json j;
  j["type"] = std::string(to_string(type_of(a)));
  std::visit(overloaded{
                 [&](const OptionLabel& o) { j["value"] = std::string(1, o.letter); },
                 [&](const Digit& d) { j["value"] = d.value; },
                 [&](const Coordinate& c) { j["value"] = nlohmann::json::array({c.major, c.minor}); },
                 [&](const Str& s) { j["value"] = s.text; },
                 [&](const IntList& l) { j["value"] = l.values; },
             },
             a);
  return j;
}

Answer answer_from_json(const nlohmann::json& j) {
  try {
    const auto type = answer_type_from_string(j.at("type").get<std::string>());
    const auto& v = j.at("value");
    switch (type) {
      case AnswerType::OptionLabel: {
        const auto s = v.get<std::string>();
        if (s.size() != 1) throw std::invalid_argument("option label must be one letter");
        return OptionLabel{s[0]};
      }
      case AnswerType::Digit: return Digit{v.get<int64_t>()};
      case AnswerType::Coordinate:
        if (!v.is_array() || v.size() != 2) throw std::invalid_argument("coordinate must be a pair");
        return Coordinate{v[0].get<int>(), v[1].get<int>()};
      case AnswerType::Str: return Str{v.get<std::string>()};
      case AnswerType::IntList: return IntList{v.get<std::vector<int64_t>>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed answer: ") + e.what());
  }
  throw std::invalid_argument("malformed answer");
}

std::string_view to_string(AnswerType t) {
  switch (t) {
    case AnswerType::OptionLabel: return "option";
    case AnswerType::Digit: return "digit";
    case AnswerType::Coordinate: return "coordinate";
    case AnswerType::Str: return "string";
    case AnswerType::IntList: return "list";
  }
  return "?";
}

AnswerType answer_type_from_string(std::string_view s) {
  for (auto t : {AnswerType::OptionLabel, AnswerType::Digit, AnswerType::Coordinate, AnswerType::Str,
                 AnswerType::IntList})
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown answer type '" + std::string(s) + "'");
}

}  // namespace polarbench
