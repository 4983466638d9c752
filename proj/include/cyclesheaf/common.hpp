#pragma once

// Shared vocabulary: exact rationals, integer sequences and the two error
// categories surfaced by the command-line front end.

#include <boost/rational.hpp>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cyclesheaf {

using Int = std::int64_t;
using Rational = boost::rational<Int>;
using IntVec = std::vector<Int>;

/// A well-formed request that the mathematics rejects (precondition or
/// theorem hypothesis violated). Exit status 1 at the CLI.
class DomainError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON, bad numbers, inconsistent lengths in a file.
/// Exit status 2 at the CLI.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Int checked_add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer overflow in addition");
  return out;
}

inline Int checked_sub(Int a, Int b) {
  Int out;
  if (__builtin_sub_overflow(a, b, &out)) throw std::overflow_error("integer overflow in subtraction");
  return out;
}

inline Int checked_mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer overflow in multiplication");
  return out;
}

// Floor modulus: result in [0, m) for m > 0.
inline Int floor_mod(Int a, Int m) {
  Int r = a % m;
  return r < 0 ? r + m : r;
}

inline Int sum(const IntVec& v) {
  Int s = 0;
  for (Int x : v) s = checked_add(s, x);
  return s;
}

} // namespace detail

/// Parses "p", "p/q" or "-p/q" into a reduced rational.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> Int {
    if (s.empty()) throw InputError("malformed rational '" + std::string(text) + "'");
    std::size_t pos = 0;
    Int v = 0;
    try {
      v = std::stoll(std::string(s), &pos);
    } catch (const std::exception&) {
      throw InputError("malformed rational '" + std::string(text) + "'");
    }
    if (pos != s.size()) throw InputError("malformed rational '" + std::string(text) + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline std::string to_string(const Rational& q) {
  std::ostringstream out;
  out << q.numerator();
  if (q.denominator() != 1) out << '/' << q.denominator();
  return out.str();
}

/// Parses a comma-separated list of integers such as "2,-2,0".
inline IntVec parse_int_list(std::string_view text) {
  IntVec out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto comma = text.find(',', start);
    auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (piece.empty()) throw InputError("malformed integer list '" + std::string(text) + "'");
    std::size_t pos = 0;
    Int v = 0;
    try {
      v = std::stoll(std::string(piece), &pos);
    } catch (const std::exception&) {
      throw InputError("malformed integer list '" + std::string(text) + "'");
    }
    if (pos != piece.size()) throw InputError("malformed integer list '" + std::string(text) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline std::string join(const IntVec& v, std::string_view sep = ",") {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << sep;
    out << v[i];
  }
  return out.str();
}

} // namespace cyclesheaf
