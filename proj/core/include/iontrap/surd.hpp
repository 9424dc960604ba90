#pragma once

#include "iontrap/angular.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <string>

namespace iontrap {

/// Exact real number of the form sum_r q_r sqrt(r), with each r a distinct
/// square-free positive integer and q_r a nonzero rational. Closed under
/// addition and multiplication, which is all the spherical tensor algebra
/// needs.
class Surd {
public:
  Surd() = default;
  Surd(const Rational &q);  // NOLINT: implicit rational embedding
  Surd(int q) : Surd(Rational(q)) {}  // NOLINT

  /// sign * sqrt(square). The radicand is reduced to square-free form by
  /// trial division, so this is meant for the small radicands of low-j
  /// coupling coefficients.
  static Surd from_sqrt(const SqrtRational &value);
  static Surd sqrt(const Rational &square);

  bool is_zero() const { return terms_.empty(); }
  double to_double() const;
  std::string str() const;

  Surd operator-() const;
  Surd &operator+=(const Surd &rhs);
  Surd &operator-=(const Surd &rhs) { return *this += -rhs; }
  friend Surd operator+(Surd a, const Surd &b) { return a += b; }
  friend Surd operator-(Surd a, const Surd &b) { return a -= b; }
  friend Surd operator*(const Surd &a, const Surd &b);
  friend bool operator==(const Surd &, const Surd &) = default;

private:
  std::map<std::uint64_t, Rational> terms_;  // radicand -> coefficient
};

/// Exact complex number with Surd real and imaginary parts.
struct ComplexSurd {
  Surd re;
  Surd im;

  ComplexSurd() = default;
  ComplexSurd(Surd real, Surd imag = Surd()) : re(std::move(real)), im(std::move(imag)) {}  // NOLINT

  static ComplexSurd i() { return {Surd(0), Surd(1)}; }

  ComplexSurd conj() const { return {re, -im}; }
  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  ComplexSurd operator-() const { return {-re, -im}; }
  ComplexSurd &operator+=(const ComplexSurd &rhs) {
    re += rhs.re;
    im += rhs.im;
    return *this;
  }
  friend ComplexSurd operator+(ComplexSurd a, const ComplexSurd &b) { return a += b; }
  friend ComplexSurd operator-(ComplexSurd a, const ComplexSurd &b) { return a += -b; }
  friend ComplexSurd operator*(const ComplexSurd &a, const ComplexSurd &b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const ComplexSurd &, const ComplexSurd &) = default;
};

} // namespace iontrap
