#include <doctest.h>

#include "iontrap/errors.hpp"
#include "iontrap/validity.hpp"

#include <cmath>
#include <thread>

using namespace iontrap;

TEST_CASE("Sigma in closed form for two and three ions") {
  CHECK(std::abs(sigma_function(2) - 1.0 / std::sqrt(3.0)) < 1e-10);
  const double mu3 = 29.0 / 5.0;
  const double expected = 1.0 / std::sqrt(3.0) + (mu3 + 1.0) / ((mu3 - 1.0) * (mu3 - 1.0) * std::sqrt(mu3));
  CHECK(std::abs(sigma_function(3) - expected) < 1e-10);
  CHECK(std::abs(sigma_function(3) - 0.700) < 1e-3);
}

TEST_CASE("Sigma rises monotonically to a plateau") {
  double previous = 0.0;
  for (int n = 2; n <= 30; ++n) {
    const double s = sigma_function(n);
    CHECK(s > previous);
    previous = s;
    if (n >= 10) {
      CHECK(s >= 0.80);
      CHECK(s <= 0.84);
    }
  }
  CHECK(std::abs(sigma_function(10) - 0.82) < 0.02);
  // sqrt(8 Sigma) only reaches the rounded 2.6 coefficient on the plateau;
  // at N = 10 it is 2.547.
  CHECK(std::sqrt(8.0 * sigma_function(10)) == doctest::Approx(2.5474).epsilon(1e-4));
  CHECK(std::round(10.0 * std::sqrt(8.0 * 0.82)) / 10.0 == doctest::Approx(2.6));
  CHECK(std::round(10.0 * std::sqrt(8.0 * sigma_function(30))) / 10.0 == doctest::Approx(2.6));
}

TEST_CASE("Sigma reference values") {
  // independent numpy evaluation
  CHECK(sigma_function(5) == doctest::Approx(0.77318845).epsilon(1e-7));
  CHECK(sigma_function(20) == doctest::Approx(0.82183145).epsilon(1e-7));
  CHECK(sigma_function(30) == doctest::Approx(0.82317197).epsilon(1e-7));
}

TEST_CASE("Sigma needs at least two ions") {
  CHECK_THROWS_AS(sigma_function(1), DomainError);
  CHECK_THROWS_AS(p_ext_bound(1.0, 0.1, 1.0, 1), DomainError);
}

TEST_CASE("extraneous bound arithmetic and scaling") {
  const ExtraneousBound b = p_ext_bound(0.1, 1.0, 1.0, 2);
  CHECK(b.exact == doctest::Approx(2.0 * 0.02 / std::sqrt(3.0)).epsilon(1e-12));
  CHECK(b.exact == doctest::Approx(0.0231).epsilon(1e-3));
  CHECK(b.rounded == doctest::Approx(2.6 * 2.6 * 0.005).epsilon(1e-12));
  CHECK(p_ext_bound(0.0, 0.3, 1.0, 5).exact == 0.0);

  const double base = p_ext_bound(0.2, 0.1, 3.0, 6).exact;
  CHECK(p_ext_bound(0.4, 0.1, 3.0, 6).exact == doctest::Approx(4.0 * base).epsilon(1e-14));
  CHECK(p_ext_bound(0.2, 0.3, 3.0, 6).exact == doctest::Approx(9.0 * base).epsilon(1e-14));
  CHECK(p_ext_bound(0.2, 0.1, 6.0, 6).exact == doctest::Approx(base / 4.0).epsilon(1e-14));
  // 1/N times Sigma(N)
  CHECK(p_ext_bound(1.0, 1.0, 1.0, 12).exact / p_ext_bound(1.0, 1.0, 1.0, 6).exact ==
        doctest::Approx(0.5 * sigma_function(12) / sigma_function(6)).epsilon(1e-14));
  CHECK_THROWS_AS(p_ext_bound(1.0, 0.1, 0.0, 3), DomainError);
}

TEST_CASE("exact bound stays under the rounded one while Sigma <= 0.845") {
  for (int n = 2; n <= 30; ++n) {
    const ExtraneousBound b = p_ext_bound(0.3, 0.2, 1.0, n);
    CHECK(b.exact <= b.rounded);
  }
}

TEST_CASE("per-ion bounds average to the chain bound") {
  for (int n : {2, 3, 5, 8}) {
    const auto s = cached_normal_modes(n);
    double mean = 0.0;
    for (int m = 1; m <= n; ++m)
      mean += p_ext_bound_for_ion(0.05, 1.0, 1.0, *s, m);
    mean /= n;
    CHECK(mean == doctest::Approx(p_ext_bound(0.05, 1.0, 1.0, n).exact).epsilon(1e-12));
  }
}

TEST_CASE("sufficiency check") {
  const ValidityReport zero = check_sufficiency(0.0, 0.1, 1.0, 4);
  CHECK(zero.condition_satisfied);
  CHECK(zero.p_ext_bound == 0.0);
  CHECK(zero.threshold == 0.01);
  CHECK(zero.ion_count == 4);

  // x = Omega eta / (sqrt(N) nu) = 0.25 gives bounds near 0.5
  const ValidityReport big = check_sufficiency(0.5, 1.0, 1.0, 4);
  CHECK(big.p_ext_bound > 0.3);
  CHECK_FALSE(big.condition_satisfied);
  CHECK(check_sufficiency(0.5, 1.0, 1.0, 4, 1.0).condition_satisfied);

  CHECK_THROWS_AS(check_sufficiency(0.1, 0.1, 1.0, 4, 0.0), DomainError);
  CHECK_THROWS_AS(check_sufficiency(0.1, 0.1, 1.0, 4, 1.5), DomainError);
}

TEST_CASE("spectrum cache is shared across threads") {
  std::vector<std::shared_ptr<const ModeSpectrum>> got(8);
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([&got, t] { got[t] = cached_normal_modes(17); });
  for (auto &th : pool)
    th.join();
  for (int t = 1; t < 8; ++t)
    CHECK(got[t] == got[0]);
  CHECK(got[0]->size() == 17);
}
