#pragma once

#include <boost/rational.hpp>

#include <charconv>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adopt {

using Vertex = std::size_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

// Exact weights. Every operation on rational inputs stays rational.
using Rational = boost::rational<std::int64_t>;

template <class W>
concept WeightType = std::same_as<W, Rational> || std::floating_point<W>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameters, out-of-range vertex ids, malformed structures.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Degree bounds that no spanning tree (or no flow) can satisfy.
class Infeasible : public Error {
 public:
  using Error::Error;
};

// An adoption or flow violating its documented precondition.
class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Counts basic operations so that scaling tests can check linear growth
/// without relying on wall-clock time.
struct OpCounter {
  std::uint64_t count = 0;
  void tick(std::uint64_t k = 1) { count += k; }
};

inline void tick(OpCounter* ops, std::uint64_t k = 1) {
  if (ops != nullptr) ops->tick(k);
}

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}
inline double to_double(double x) { return x; }

inline std::string format_weight(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline std::string format_weight(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::int64_t parse_int64(std::string_view s, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("not a rational number: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses "p", "p/q" or a finite decimal such as "-1.25" into an exact
/// rational.
inline Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t p = detail::parse_int64(text.substr(0, slash), text);
    std::int64_t q = detail::parse_int64(text.substr(slash + 1), text);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part.front() == '-';
    if (negative || (!int_part.empty() && int_part.front() == '+')) int_part.remove_prefix(1);
    if (frac.size() > 18) throw ParseError("too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::int64_t whole = int_part.empty() ? 0 : detail::parse_int64(int_part, text);
    std::int64_t fraction = frac.empty() ? 0 : detail::parse_int64(frac, text);
    if (fraction < 0) throw ParseError("not a rational number: '" + std::string(text) + "'");
    Rational r(whole * scale + fraction, scale);
    return negative ? -r : r;
  }
  return Rational(detail::parse_int64(text, text));
}

/// Ratio of two weights; 1 when the denominator is zero and the numerator
/// is zero as well (an empty tree compared with itself).
template <WeightType W>
W weight_ratio(const W& num, const W& den) {
  if (den == W(0)) {
    if (num == W(0)) return W(1);
    throw InvalidArgument("ratio against a zero-weight reference");
  }
  return num / den;
}

}  // namespace adopt
