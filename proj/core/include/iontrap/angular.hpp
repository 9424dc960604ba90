#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <string>
#include <string_view>

namespace iontrap {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Angular-momentum quantum number j or m, stored as the integer 2j.
class HalfInteger {
public:
  constexpr HalfInteger() = default;
  constexpr HalfInteger(int whole) : twice_(2 * whole) {}  // NOLINT: implicit by design of j = 1, 2, ...

  static constexpr HalfInteger from_twice(int twice) {
    HalfInteger h;
    h.twice_ = twice;
    return h;
  }
  /// Accepts "3/2", "-1/2", "2", "+1".
  static HalfInteger parse(std::string_view text);

  constexpr int twice() const { return twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  constexpr double value() const { return 0.5 * twice_; }
  std::string str() const;

  constexpr HalfInteger operator-() const { return from_twice(-twice_); }
  friend constexpr HalfInteger operator+(HalfInteger a, HalfInteger b) {
    return from_twice(a.twice_ + b.twice_);
  }
  friend constexpr HalfInteger operator-(HalfInteger a, HalfInteger b) {
    return from_twice(a.twice_ - b.twice_);
  }
  friend constexpr bool operator==(HalfInteger, HalfInteger) = default;
  friend constexpr auto operator<=>(HalfInteger, HalfInteger) = default;

private:
  int twice_ = 0;
};

/// sign * sqrt(square), with square >= 0 an exact rational.
struct SqrtRational {
  int sign = 0;  // -1, 0, +1
  Rational square = 0;

  double to_double() const;
  friend bool operator==(const SqrtRational &, const SqrtRational &) = default;
};

/// Throws DomainError if (j, m) is not a valid pair: 2j < 0, |m| > j, or
/// j - m not an integer.
void check_angular_pair(HalfInteger j, HalfInteger m);

/// Wigner 3-j symbol (j1 j2 j3; m1 m2 m3), Condon-Shortley phase, evaluated
/// exactly with the Racah single-sum formula. Zero whenever the m's do not
/// sum to zero or the j's violate the triangle rule.
SqrtRational wigner_3j_exact(HalfInteger j1, HalfInteger j2, HalfInteger j3,
                             HalfInteger m1, HalfInteger m2, HalfInteger m3);

double wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3,
                 HalfInteger m1, HalfInteger m2, HalfInteger m3);

} // namespace iontrap
