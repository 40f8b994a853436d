#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace jlie {

// Arbitrary-precision rational scalar. All symbolic coefficients use this
// type so structure constants and linear solves stay exact.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// 128-bit binary float used by the probabilistic zero test. epsilon is about
// 5.9e-39, far below the 1e-30 verdict tolerance.
using BigFloat = boost::multiprecision::number<
    boost::multiprecision::backends::cpp_bin_float<
        128, boost::multiprecision::backends::digit_base_2>,
    boost::multiprecision::et_off>;

inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigFloat to_bigfloat(const Rational& r) {
  return BigFloat(boost::multiprecision::numerator(r)) /
         BigFloat(boost::multiprecision::denominator(r));
}

// Parses "p" or "p/q" with optional leading '-'. Throws jlie::ParseError on
// anything else (including q == 0).
Rational rational_from_string(const std::string& text);

// Nearest rational with denominator <= max_den, by continued fractions.
Rational rationalize(double value, std::uint64_t max_den);

}  // namespace jlie
