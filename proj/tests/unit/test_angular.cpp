#include <doctest.h>

#include "racah_float.hpp"

#include "iontrap/angular.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/surd.hpp"

#include <cmath>

using namespace iontrap;

namespace {

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

int parity(int twice_sum) { return (twice_sum / 2) % 2 ? -1 : 1; }

} // namespace

TEST_CASE("half-integer parsing and printing") {
  CHECK(HalfInteger::parse("3/2").twice() == 3);
  CHECK(HalfInteger::parse("-1/2").twice() == -1);
  CHECK(HalfInteger::parse("+1").twice() == 2);
  CHECK(HalfInteger::parse("0").twice() == 0);
  CHECK_THROWS_AS(HalfInteger::parse("4/2"), DomainError);
  CHECK_THROWS_AS(HalfInteger::parse("1/3"), DomainError);
  CHECK_THROWS_AS(HalfInteger::parse("abc"), DomainError);
  CHECK_THROWS_AS(HalfInteger::parse(""), DomainError);
  CHECK(h(3).str() == "3/2");
  CHECK(h(-1).str() == "-1/2");
  CHECK(h(4).str() == "2");
  CHECK((h(1) + h(1)) == HalfInteger(1));
  CHECK(h(-3) < h(1));
}

TEST_CASE("angular pair validation") {
  CHECK_NOTHROW(check_angular_pair(h(3), h(-3)));
  CHECK_THROWS_AS(check_angular_pair(h(3), h(5)), DomainError);
  CHECK_THROWS_AS(check_angular_pair(h(2), h(1)), DomainError);
  CHECK_THROWS_AS(check_angular_pair(h(-2), h(0)), DomainError);
}

TEST_CASE("tabulated 3-j values are exact") {
  // (1/2 1/2 1; 1/2 -1/2 0) = 1/sqrt(6)
  SqrtRational w = wigner_3j_exact(h(1), h(1), 1, h(1), h(-1), 0);
  CHECK(w.sign == 1);
  CHECK(w.square == Rational(1, 6));
  // (1 1 0; 0 0 0) = -1/sqrt(3)
  w = wigner_3j_exact(1, 1, 0, 0, 0, 0);
  CHECK(w.sign == -1);
  CHECK(w.square == Rational(1, 3));
  // (1 1 2; 0 0 0) = sqrt(2/15)
  w = wigner_3j_exact(1, 1, 2, 0, 0, 0);
  CHECK(w.sign == 1);
  CHECK(w.square == Rational(2, 15));
  // (1 1 1; 0 0 0) vanishes by parity
  CHECK(wigner_3j_exact(1, 1, 1, 0, 0, 0).sign == 0);
  // selection rules
  CHECK(wigner_3j(1, 1, 2, 1, 1, 0) == 0.0);
  CHECK(wigner_3j(1, 1, 3, 0, 0, 0) == 0.0);
}

TEST_CASE("exact 3-j agrees with a floating Racah sum for all j <= 3") {
  int compared = 0;
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int c = std::abs(a - b); c <= std::min(a + b, 6); c += 2)
        for (int ma = -a; ma <= a; ma += 2)
          for (int mb = -b; mb <= b; mb += 2) {
            const int mc = -ma - mb;
            if (std::abs(mc) > c)
              continue;
            const double exact = wigner_3j(h(a), h(b), h(c), h(ma), h(mb), h(mc));
            const double ref = oracle::three_j_twice(a, b, c, ma, mb, mc);
            CHECK(std::abs(exact - ref) < 1e-13);
            ++compared;
          }
  CHECK(compared > 1000);
}

TEST_CASE("3-j orthogonality for all j <= 3") {
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int c = std::abs(a - b); c <= std::min(a + b, 6); c += 2)
        for (int c2 = std::abs(a - b); c2 <= std::min(a + b, 6); c2 += 2)
          for (int mc = -std::min(c, c2); mc <= std::min(c, c2); mc += 2) {
            double sum = 0.0;
            for (int ma = -a; ma <= a; ma += 2) {
              const int mb = -ma - mc;
              if (std::abs(mb) > b)
                continue;
              sum += wigner_3j(h(a), h(b), h(c), h(ma), h(mb), h(mc)) *
                     wigner_3j(h(a), h(b), h(c2), h(ma), h(mb), h(mc));
            }
            const double expected = c == c2 ? 1.0 / (c + 1) : 0.0;
            CHECK(std::abs(sum - expected) < 1e-12);
          }
}

TEST_CASE("3-j permutation and reflection symmetry") {
  for (int a = 0; a <= 6; ++a)
    for (int b = 0; b <= 6; ++b)
      for (int c = std::abs(a - b); c <= std::min(a + b, 6); c += 2)
        for (int ma = -a; ma <= a; ma += 2)
          for (int mb = -b; mb <= b; mb += 2) {
            const int mc = -ma - mb;
            if (std::abs(mc) > c)
              continue;
            const SqrtRational w = wigner_3j_exact(h(a), h(b), h(c), h(ma), h(mb), h(mc));
            const int odd = parity(a + b + c);
            // cyclic
            CHECK(wigner_3j_exact(h(b), h(c), h(a), h(mb), h(mc), h(ma)) == w);
            // odd permutation and m reflection pick up (-1)^(j1+j2+j3)
            SqrtRational flipped = w;
            flipped.sign *= odd;
            CHECK(wigner_3j_exact(h(b), h(a), h(c), h(mb), h(ma), h(mc)) == flipped);
            CHECK(wigner_3j_exact(h(a), h(b), h(c), h(-ma), h(-mb), h(-mc)) == flipped);
          }
}

TEST_CASE("3-j rejects inconsistent arguments") {
  CHECK_THROWS_AS(wigner_3j(1, 1, 1, 2, 0, -2), DomainError);
  CHECK_THROWS_AS(wigner_3j(h(1), 1, h(1), 0, 0, 0), DomainError);
}

TEST_CASE("surd arithmetic is exact") {
  const Surd r2 = Surd::sqrt(2);
  CHECK(r2 * r2 == Surd(2));
  CHECK(Surd::sqrt(8) == Surd(2) * r2);
  CHECK(Surd::sqrt(Rational(1, 2)) == Surd(Rational(1, 2)) * r2);
  CHECK((r2 - r2).is_zero());
  CHECK((r2 + Surd(1)).to_double() == doctest::Approx(1.0 + std::sqrt(2.0)));
  CHECK(Surd::sqrt(0).is_zero());
  const SqrtRational minus_third{-1, Rational(1, 3)};
  CHECK(Surd::from_sqrt(minus_third).to_double() == doctest::Approx(-1.0 / std::sqrt(3.0)));
  const ComplexSurd i = ComplexSurd::i();
  CHECK(i * i == ComplexSurd(Surd(-1)));
  CHECK(i.conj() == -i);
}
