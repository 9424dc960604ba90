#include "iontrap/surd.hpp"

#include "iontrap/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace iontrap {

namespace {

// n = outside^2 * inside with inside square-free.
void split_square(BigInt n, BigInt &outside, BigInt &inside) {
  outside = 1;
  inside = 1;
  for (BigInt p = 2; p * p <= n; ++p) {
    int power = 0;
    while (n % p == 0) {
      n /= p;
      ++power;
    }
    for (int k = 0; k < power / 2; ++k)
      outside *= p;
    if (power % 2 == 1)
      inside *= p;
  }
  inside *= n;
}

} // namespace

Surd::Surd(const Rational &q) {
  if (q != 0)
    terms_.emplace(1, q);
}

Surd Surd::sqrt(const Rational &square) {
  if (square < 0)
    throw DomainError("Surd::sqrt of a negative rational");
  if (square == 0)
    return {};
  // sqrt(a/b) = sqrt(a b) / b
  const BigInt a = boost::multiprecision::numerator(square);
  const BigInt b = boost::multiprecision::denominator(square);
  BigInt outside, inside;
  split_square(a * b, outside, inside);
  if (inside > std::numeric_limits<std::uint64_t>::max())
    throw DomainError("Surd::sqrt radicand too large");
  Surd out;
  out.terms_.emplace(inside.convert_to<std::uint64_t>(), Rational(outside, b));
  return out;
}

Surd Surd::from_sqrt(const SqrtRational &value) {
  Surd s = sqrt(value.square);
  return value.sign < 0 ? -s : s;
}

double Surd::to_double() const {
  double total = 0.0;
  for (const auto &[radicand, coeff] : terms_)
    total += coeff.convert_to<double>() * std::sqrt(static_cast<double>(radicand));
  return total;
}

std::string Surd::str() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto &[radicand, coeff] : terms_) {
    if (!first)
      os << " + ";
    first = false;
    os << coeff;
    if (radicand != 1)
      os << "*sqrt(" << radicand << ")";
  }
  return os.str();
}

Surd Surd::operator-() const {
  Surd out = *this;
  for (auto &[radicand, coeff] : out.terms_)
    coeff = -coeff;
  return out;
}

Surd &Surd::operator+=(const Surd &rhs) {
  for (const auto &[radicand, coeff] : rhs.terms_) {
    auto [it, inserted] = terms_.emplace(radicand, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0)
        terms_.erase(it);
    }
  }
  return *this;
}

Surd operator*(const Surd &a, const Surd &b) {
  Surd out;
  for (const auto &[ra, qa] : a.terms_) {
    for (const auto &[rb, qb] : b.terms_) {
      // sqrt(ra) sqrt(rb) = g sqrt(ra/g * rb/g) with g = gcd(ra, rb); both
      // quotients stay square-free and coprime.
      const std::uint64_t g = std::gcd(ra, rb);
      Surd term;
      term.terms_.emplace((ra / g) * (rb / g), qa * qb * Rational(static_cast<long long>(g)));
      out += term;
    }
  }
  return out;
}

} // namespace iontrap
