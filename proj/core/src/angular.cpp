#include "iontrap/angular.hpp"

#include "iontrap/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace iontrap {

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k)
    f *= k;
  return f;
}

int parse_int(std::string_view text) {
  if (!text.empty() && text.front() == '+')
    text.remove_prefix(1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw DomainError("not an integer: '" + std::string(text) + "'");
  return value;
}

} // namespace

HalfInteger HalfInteger::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return HalfInteger(parse_int(text));
  if (text.substr(slash + 1) != "2")
    throw DomainError("half-integer denominator must be 2: '" + std::string(text) + "'");
  const int numerator = parse_int(text.substr(0, slash));
  if (numerator % 2 == 0)
    throw DomainError("write even numerators as integers: '" + std::string(text) + "'");
  return from_twice(numerator);
}

std::string HalfInteger::str() const {
  if (is_integer())
    return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

double SqrtRational::to_double() const {
  if (sign == 0)
    return 0.0;
  return sign * std::sqrt(square.convert_to<double>());
}

void check_angular_pair(HalfInteger j, HalfInteger m) {
  if (j.twice() < 0)
    throw DomainError("angular momentum j=" + j.str() + " is negative");
  if (std::abs(m.twice()) > j.twice())
    throw DomainError("|m|=" + m.str() + " exceeds j=" + j.str());
  if ((j.twice() - m.twice()) % 2 != 0)
    throw DomainError("j=" + j.str() + " and m=" + m.str() + " differ by a half-integer");
}

SqrtRational wigner_3j_exact(HalfInteger j1, HalfInteger j2, HalfInteger j3,
                             HalfInteger m1, HalfInteger m2, HalfInteger m3) {
  check_angular_pair(j1, m1);
  check_angular_pair(j2, m2);
  check_angular_pair(j3, m3);

  if ((m1 + m2 + m3).twice() != 0)
    return {};
  const int t1 = j1.twice(), t2 = j2.twice(), t3 = j3.twice();
  if (t3 > t1 + t2 || t3 < std::abs(t1 - t2))
    return {};
  // With every j - m integral and the m's summing to zero, j1 + j2 + j3 is
  // an integer, so all the halved quantities below are exact.
  const auto half = [](int twice) { return twice / 2; };
  const int a1 = half(t1 + t2 - t3);
  const int a2 = half(t1 - t2 + t3);
  const int a3 = half(-t1 + t2 + t3);
  const int jsum = half(t1 + t2 + t3);

  const int j1pm1 = half(t1 + m1.twice()), j1mm1 = half(t1 - m1.twice());
  const int j2pm2 = half(t2 + m2.twice()), j2mm2 = half(t2 - m2.twice());
  const int j3pm3 = half(t3 + m3.twice()), j3mm3 = half(t3 - m3.twice());

  // Racah: sum_k (-1)^k / [k! (j3-j2+k+m1)! (j3-j1+k-m2)! (j1+j2-j3-k)!
  //                         (j1-k-m1)! (j2-k+m2)!]
  const int b1 = half(t3 - t2 + m1.twice());
  const int b2 = half(t3 - t1 - m2.twice());
  const int kmin = std::max({0, -b1, -b2});
  const int kmax = std::min({a1, j1mm1, j2pm2});

  Rational sum = 0;
  for (int k = kmin; k <= kmax; ++k) {
    const BigInt denom = factorial(k) * factorial(b1 + k) * factorial(b2 + k) *
                         factorial(a1 - k) * factorial(j1mm1 - k) * factorial(j2pm2 - k);
    const Rational term(BigInt(1), denom);
    sum += (k % 2 == 0) ? term : Rational(-term);
  }
  if (sum == 0)
    return {};

  const Rational triangle(factorial(a1) * factorial(a2) * factorial(a3), factorial(jsum + 1));
  const BigInt moments = factorial(j1pm1) * factorial(j1mm1) * factorial(j2pm2) *
                         factorial(j2mm2) * factorial(j3pm3) * factorial(j3mm3);

  // (-1)^(j1 - j2 - m3)
  const int phase_exponent = half(t1 - t2 - m3.twice());
  int sign = (phase_exponent % 2 == 0) ? 1 : -1;
  if (sum < 0)
    sign = -sign;

  SqrtRational out;
  out.sign = sign;
  out.square = triangle * Rational(moments) * sum * sum;
  return out;
}

double wigner_3j(HalfInteger j1, HalfInteger j2, HalfInteger j3,
                 HalfInteger m1, HalfInteger m2, HalfInteger m3) {
  return wigner_3j_exact(j1, j2, j3, m1, m2, m3).to_double();
}

} // namespace iontrap
