#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rogers {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(Int base, unsigned exp) {
  Int out = 1;
  while (exp) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

inline Rat rat_pow(const Rat& base, unsigned exp) {
  return Rat(int_pow(numerator(base), exp), int_pow(denominator(base), exp));
}

inline double to_double(const Rat& x) { return x.convert_to<double>(); }

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// Parses "3", "-7/2" or a plain decimal like "0.25" into an exact rational.
inline Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(num, den);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    Int den = int_pow(10, static_cast<unsigned>(s.size() - dot - 1));
    return Rat(Int(digits), den);
  }
  return Rat(Int(s));
}

inline std::string rat_to_string(const Rat& x) {
  std::string out = numerator(x).str();
  if (denominator(x) != 1) out += "/" + denominator(x).str();
  return out;
}

}  // namespace rogers
