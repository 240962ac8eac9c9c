#include <numeric>

#include "polarbench/oracles.hpp"

namespace polarbench {

Rational::Rational(int64_t num, int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int64_t g = std::gcd(num, den);
  num_ = num / (g == 0 ? 1 : g);
  den_ = den / (g == 0 ? 1 : g);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  const __int128 l = static_cast<__int128>(x.num_) * y.den_;
  const __int128 r = static_cast<__int128>(y.num_) * x.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

CellEdge make_edge(const CellRef& x, const CellRef& y) { return x < y ? CellEdge{x, y} : CellEdge{y, x}; }

MoveSet MoveSet::right_down() { return {{{0, 1, true}, {1, 0, true}}}; }

MoveSet MoveSet::right_down_diagonal() { return {{{0, 1, true}, {1, 0, true}, {1, 1, true}}}; }

MoveSet MoveSet::knight() {
  return {{{1, 2, true},
           {2, 1, true},
           {2, -1, true},
           {1, -2, true},
           {-1, -2, true},
           {-2, -1, true},
           {-2, 1, true},
           {-1, 2, true}}};
}

}  // namespace polarbench
