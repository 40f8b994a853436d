#include "jlie/rational.hpp"

#include <cctype>
#include <cmath>

#include "jlie/errors.hpp"

namespace jlie {

Rational rational_from_string(const std::string& raw) {
  std::size_t begin = raw.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos)
    throw ParseError("expected rational, got '" + raw + "'");
  std::string text = raw.substr(begin, raw.find_last_not_of(" \t\r\n") - begin + 1);
  std::size_t i = 0;
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    return j;
  };
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  std::size_t num_end = digits(i);
  if (num_end == i) throw ParseError("expected rational, got '" + text + "'");
  i = num_end;
  if (i < text.size()) {
    if (text[i] != '/') throw ParseError("expected rational, got '" + text + "'");
    std::size_t den_end = digits(i + 1);
    if (den_end == i + 1 || den_end != text.size())
      throw ParseError("expected rational, got '" + text + "'");
    BigInt den(text.substr(i + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
  }
  return Rational(text);
}

Rational rationalize(double value, std::uint64_t max_den) {
  if (!std::isfinite(value)) throw EvalError("cannot rationalize a non-finite value");
  bool neg = value < 0;
  double x = neg ? -value : value;
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    double fa = std::floor(x);
    if (fa > 9.2e18) break;
    BigInt a(static_cast<std::uint64_t>(fa));
    BigInt p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den && q1 != 0) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double frac = x - fa;
    if (frac < 1e-18) break;
    x = 1.0 / frac;
  }
  if (q1 == 0) return Rational(p1);
  Rational r(p1, q1);
  return neg ? Rational(-r) : r;
}

}  // namespace jlie
