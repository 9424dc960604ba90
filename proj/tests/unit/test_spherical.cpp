#include <doctest.h>

#include "iontrap/errors.hpp"
#include "iontrap/spherical.hpp"

#include <complex>

using namespace iontrap;
using cd = std::complex<double>;

namespace {

int sign_q(int q) { return q % 2 ? -1 : 1; }

ComplexSurd scaled(const ComplexSurd &z, int s) { return s > 0 ? z : -z; }

} // namespace

TEST_CASE("spherical basis vectors by hand") {
  const double r = 1.0 / std::sqrt(2.0);
  const Eigen::Vector3cd plus = spherical_basis(1).components();
  CHECK(std::abs(plus[0] - cd(-r, 0)) < 1e-15);
  CHECK(std::abs(plus[1] - cd(0, r)) < 1e-15);
  CHECK(std::abs(plus[2]) == 0.0);
  const Eigen::Vector3cd minus = spherical_basis(-1).components();
  CHECK(std::abs(minus[0] - cd(r, 0)) < 1e-15);
  CHECK(std::abs(minus[1] - cd(0, r)) < 1e-15);
  CHECK(spherical_basis(0).components() == Eigen::Vector3cd(0, 0, 1));
  CHECK_THROWS_AS(spherical_basis(2), DomainError);
  CHECK_THROWS_AS(rank2_tensor(-3), DomainError);
}

TEST_CASE("basis vector conjugation and orthonormality hold exactly") {
  for (int q = -1; q <= 1; ++q) {
    const auto a = spherical_basis(q).exact;
    const auto b = spherical_basis(-q).exact;
    for (int i = 0; i < 3; ++i)
      CHECK(a[i] == scaled(b[i].conj(), sign_q(q)));
    for (int qp = -1; qp <= 1; ++qp) {
      auto c = spherical_basis(qp).exact;
      for (auto &x : c)
        x = x.conj();
      CHECK(dot(a, c) == ComplexSurd(Surd(q == qp ? 1 : 0)));
    }
  }
}

TEST_CASE("rank-2 tensors match the tabulated matrices") {
  const double s6 = 1.0 / std::sqrt(6.0);
  const cd i(0, 1);
  std::array<Eigen::Matrix3cd, 5> expected;
  expected[4] << s6, -i * s6, 0, -i * s6, -s6, 0, 0, 0, 0;                  // q = 2
  expected[3] << 0, 0, -s6, 0, 0, i * s6, -s6, i * s6, 0;                   // q = 1
  expected[2] << -1.0 / 3, 0, 0, 0, -1.0 / 3, 0, 0, 0, 2.0 / 3;             // q = 0
  expected[1] << 0, 0, s6, 0, 0, i * s6, s6, i * s6, 0;                     // q = -1
  expected[0] << s6, i * s6, 0, i * s6, -s6, 0, 0, 0, 0;                    // q = -2
  for (int q = -2; q <= 2; ++q) {
    CAPTURE(q);
    const Eigen::Matrix3cd got = rank2_tensor(q).components();
    CHECK((got - expected[q + 2]).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((rank2_tensor_table()[q + 2] - expected[q + 2]).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("rank-2 tensor conjugation and normalization hold exactly") {
  for (int q = -2; q <= 2; ++q) {
    const auto a = rank2_tensor(q).exact;
    const auto b = rank2_tensor(-q).exact;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        CHECK(a[r][c] == scaled(b[r][c].conj(), sign_q(q)));
        CHECK(a[r][c] == a[c][r]);  // symmetric
      }
    ComplexSurd trace = a[0][0] + a[1][1] + a[2][2];
    CHECK(trace.is_zero());
    for (int qp = -2; qp <= 2; ++qp) {
      const auto c = rank2_tensor(qp).exact;
      ComplexSurd sum;
      for (int r = 0; r < 3; ++r)
        for (int k = 0; k < 3; ++k)
          sum += a[r][k] * c[r][k].conj();
      CHECK(sum == ComplexSurd(Surd(q == qp ? Rational(2, 3) : Rational(0))));
    }
  }
}
