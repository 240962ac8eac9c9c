#include <algorithm>
#include <cctype>
#include <charconv>
#include <regex>

#include "polarbench/evalharness.hpp"

namespace polarbench {

namespace {

struct Hit {
  size_t pos = 0;
  Answer value;
};

std::string strip_decoration(std::string_view raw) {
  std::string s(raw);
  static const std::regex boxed(R"(\\(?:boxed|text|mathrm)\{([^{}]*)\})");
  s = std::regex_replace(s, boxed, "$1");
  std::string out;
  for (char c : s)
    if (c != '*' && c != '`' && c != '$') out += c;
  return out;
}

// Start of the text following the last answer marker, or npos.
size_t after_last_marker(const std::string& s) {
  static const std::regex marker(R"(\banswer\s*(?:is|would be|will be|should be)?\s*[:=]|\banswer\s+(?:is|would be|will be|should be)\b)",
                                 std::regex::icase);
  size_t pos = std::string::npos;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), marker); it != std::sregex_iterator(); ++it) {
    pos = static_cast<size_t>(it->position() + it->length());
  }
  return pos;
}

// First hit at or after `tail` when there is one, otherwise the last hit.
std::optional<Answer> choose(const std::vector<Hit>& hits, size_t tail) {
  if (hits.empty()) return std::nullopt;
  if (tail != std::string::npos) {
    for (const auto& h : hits)
      if (h.pos >= tail) return h.value;
  }
  return hits.back().value;
}

bool word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::optional<int64_t> to_int(std::string digits) {
  digits.erase(std::remove(digits.begin(), digits.end(), ','), digits.end());
  int64_t v = 0;
  auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || p != digits.data() + digits.size()) return std::nullopt;
  return v;
}

std::optional<Answer> parse_option(const std::string& s, size_t tail) {
  if (tail != std::string::npos) {
    static const std::regex lead(R"(^[\s:]*(?:[Oo]ption\s*)?\(?([A-F])\)?(?![A-Za-z0-9]))");
    std::smatch m;
    const std::string rest = s.substr(tail);
    if (std::regex_search(rest, m, lead)) return OptionLabel{m[1].str()[0]};
  }
  static const std::regex paren(R"(\(([A-F])\))");
  static const std::regex named(R"(\b[Oo]ption\s+\(?([A-F])\)?(?![A-Za-z0-9]))");
  std::vector<Hit> hits;
  for (const auto* re : {&paren, &named})
    for (auto it = std::sregex_iterator(s.begin(), s.end(), *re); it != std::sregex_iterator(); ++it)
      hits.push_back({static_cast<size_t>(it->position()), OptionLabel{(*it)[1].str()[0]}});
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.pos < b.pos; });
  if (!hits.empty()) return hits.back().value;
  // A bare letter as the whole response.
  std::string bare;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c)) && !std::ispunct(static_cast<unsigned char>(c))) bare += c;
  if (bare.size() == 1 && bare[0] >= 'A' && bare[0] <= 'F') return OptionLabel{bare[0]};
  return std::nullopt;
}

std::optional<Answer> parse_digit(const std::string& s, size_t tail) {
  static const std::regex num(R"(\d{1,3}(?:,\d{3})+(?!\d)|\d+)");
  std::vector<Hit> hits;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), num); it != std::sregex_iterator(); ++it) {
    const size_t b = static_cast<size_t>(it->position()), e = b + static_cast<size_t>(it->length());
    // Skip pieces of words, decimals, fractions and ranges like 3-4.
    if (b > 0 && (word_char(s[b - 1]) || s[b - 1] == '.' || s[b - 1] == '/')) continue;
    if (e < s.size() && (word_char(s[e]) || s[e] == '/')) continue;
    if (e + 1 < s.size() && s[e] == '.' && std::isdigit(static_cast<unsigned char>(s[e + 1]))) continue;
    if (auto v = to_int(it->str())) hits.push_back({b, Digit{*v}});
  }
  return choose(hits, tail);
}

std::optional<Answer> parse_coordinate(const std::string& s, size_t tail) {
  static const std::regex tuple(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
  static const std::regex words(R"((?:ring|row)\s*(\d+)\s*(?:,|and)?\s*(?:sector|column|col)\.?\s*(\d+))",
                                std::regex::icase);
  std::vector<Hit> hits;
  for (const auto* re : {&tuple, &words}) {
    for (auto it = std::sregex_iterator(s.begin(), s.end(), *re); it != std::sregex_iterator(); ++it) {
      auto a = to_int((*it)[1].str()), b = to_int((*it)[2].str());
      if (a && b && *a <= 1'000'000 && *b <= 1'000'000) {
        hits.push_back({static_cast<size_t>(it->position()), Coordinate{static_cast<int>(*a), static_cast<int>(*b)}});
      }
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.pos < b.pos; });
  return choose(hits, tail);
}

std::optional<Answer> parse_str(const std::string& s, size_t tail) {
  static const std::regex quoted(R"re(["']([A-Za-z]+)["'])re");
  static const std::regex word(R"([A-Za-z]+)");
  std::smatch m;
  if (tail != std::string::npos) {
    const std::string rest = s.substr(tail);
    static const std::regex lead_quoted(R"re(^\s*["']([A-Za-z]+)["'])re");
    static const std::regex lead_word(R"(^\s*([A-Za-z]+))");
    if (std::regex_search(rest, m, lead_quoted) || std::regex_search(rest, m, lead_word)) return Str{m[1].str()};
  }
  std::string last;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), quoted); it != std::sregex_iterator(); ++it)
    last = (*it)[1].str();
  if (!last.empty()) return Str{last};
  // Final token of the final non-empty line.
  auto end = s.find_last_not_of(" \t\r\n");
  if (end == std::string::npos) return std::nullopt;
  const auto start = s.find_last_of('\n', end);
  const std::string line = s.substr(start == std::string::npos ? 0 : start + 1, end + 1 - (start == std::string::npos ? 0 : start + 1));
  for (auto it = std::sregex_iterator(line.begin(), line.end(), word); it != std::sregex_iterator(); ++it)
    last = it->str();
  if (last.empty()) return std::nullopt;
  return Str{last};
}

std::optional<IntList> list_from(const std::string& body) {
  IntList out;
  static const std::regex num(R"(\d+)");
  for (auto it = std::sregex_iterator(body.begin(), body.end(), num); it != std::sregex_iterator(); ++it) {
    auto v = to_int(it->str());
    if (!v) return std::nullopt;
    out.values.push_back(*v);
  }
  return out;
}

std::optional<Answer> parse_list(const std::string& s, size_t tail) {
  static const std::regex bracket(R"(\[\s*(\d+(?:\s*,\s*\d+)*)?\s*\])");
  std::vector<Hit> hits;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), bracket); it != std::sregex_iterator(); ++it)
    if (auto l = list_from((*it)[1].str())) hits.push_back({static_cast<size_t>(it->position()), *l});
  if (tail != std::string::npos) {
    for (const auto& h : hits)
      if (h.pos >= tail) return h.value;
    static const std::regex bare(R"(^\s*(\d+(?:\s*,\s*\d+)+))");
    std::smatch m;
    const std::string rest = s.substr(tail);
    if (std::regex_search(rest, m, bare))
      if (auto l = list_from(m[1].str())) return *l;
  }
  if (hits.empty()) return std::nullopt;
  return hits.back().value;
}

std::string trim_lower(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  std::string out(s.substr(b, e - b + 1));
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::optional<Answer> parse_answer(std::string_view raw, AnswerType type) {
  try {
    const std::string s = strip_decoration(raw);
    const size_t tail = after_last_marker(s);
    switch (type) {
      case AnswerType::OptionLabel: return parse_option(s, tail);
      case AnswerType::Digit: return parse_digit(s, tail);
      case AnswerType::Coordinate: return parse_coordinate(s, tail);
      case AnswerType::Str: return parse_str(s, tail);
      case AnswerType::IntList: return parse_list(s, tail);
    }
  } catch (...) {
  }
  return std::nullopt;
}

bool score(const Answer& parsed, const Answer& truth) {
  if (parsed.index() != truth.index()) return false;
  if (const auto* p = std::get_if<Str>(&parsed)) return trim_lower(p->text) == trim_lower(std::get<Str>(truth).text);
  return parsed == truth;
}

bool detect_coordinate_invocation(std::string_view trace) {
  static const std::regex tuple(R"(\(\s*-?\d+\s*,\s*-?\d+\s*\))");
  static const std::regex axis(R"(\b(?:rows?|columns?|cols?)\s*#?\s*\d+)", std::regex::icase);
  const std::string s(trace);
  return std::regex_search(s, tuple) || std::regex_search(s, axis);
}

std::string_view to_string(SizeMention m) {
  switch (m) {
    case SizeMention::Correct: return "correct";
    case SizeMention::Incorrect: return "incorrect";
    case SizeMention::Unmentioned: return "unmentioned";
  }
  return "?";
}

SizeMention check_grid_size_mention(std::string_view caption, int major, int minor) {
  std::string s = trim_lower(caption);
  // "×" in UTF-8.
  for (size_t p; (p = s.find("\xC3\x97")) != std::string::npos;) s.replace(p, 2, "x");
  static const char* words[] = {"zero", "one", "two",   "three",  "four",   "five",  "six",
                                "seven", "eight", "nine", "ten", "eleven", "twelve"};
  for (int i = 0; i <= 12; ++i) s = std::regex_replace(s, std::regex(std::string("\\b") + words[i] + "\\b"), std::to_string(i));

  bool hit = false, contradiction = false;
  const auto pair = [&](int64_t a, int64_t b, bool ordered) {
    hit = true;
    const bool ok = (a == major && b == minor) || (!ordered && a == minor && b == major);
    contradiction |= !ok;
  };
  static const std::regex dims(R"((\d+)\s*(?:x|by|\*)\s*(\d+))");
  static const std::regex major_first(
      R"((\d+)\s*(?:concentric\s+)?(?:rings|rows)\b[^.;]*?\b(\d+)\s*(?:angular\s+|radial\s+)?(?:sectors|columns|wedges)\b)");
  static const std::regex minor_first(
      R"((\d+)\s*(?:angular\s+|radial\s+)?(?:sectors|columns|wedges)\b[^.;]*?\b(\d+)\s*(?:concentric\s+)?(?:rings|rows)\b)");
  for (auto it = std::sregex_iterator(s.begin(), s.end(), dims); it != std::sregex_iterator(); ++it) {
    auto a = to_int((*it)[1].str()), b = to_int((*it)[2].str());
    if (a && b) pair(*a, *b, false);
  }
  for (auto it = std::sregex_iterator(s.begin(), s.end(), major_first); it != std::sregex_iterator(); ++it) {
    auto a = to_int((*it)[1].str()), b = to_int((*it)[2].str());
    if (a && b) pair(*a, *b, true);
  }
  for (auto it = std::sregex_iterator(s.begin(), s.end(), minor_first); it != std::sregex_iterator(); ++it) {
    auto a = to_int((*it)[1].str()), b = to_int((*it)[2].str());
    if (a && b) pair(*b, *a, true);
  }
  if (contradiction) return SizeMention::Incorrect;
  return hit ? SizeMention::Correct : SizeMention::Unmentioned;
}

}  // namespace polarbench
