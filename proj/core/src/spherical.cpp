#include "iontrap/spherical.hpp"

#include "iontrap/errors.hpp"

#include <string>

namespace iontrap {

Eigen::Vector3cd SphericalBasisVector::components() const {
  Eigen::Vector3cd v;
  for (int i = 0; i < 3; ++i)
    v[i] = exact[i].to_complex();
  return v;
}

Eigen::Matrix3cd RankTwoTensor::components() const {
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      m(i, j) = exact[i][j].to_complex();
  return m;
}

SphericalBasisVector spherical_basis(int q) {
  const Surd inv_root2 = Surd::sqrt(Rational(1, 2));
  const ComplexSurd i = ComplexSurd::i();
  SphericalBasisVector v;
  v.q = q;
  switch (q) {
  case 1:
    v.exact = {ComplexSurd(-inv_root2), i * ComplexSurd(inv_root2), ComplexSurd()};
    break;
  case 0:
    v.exact = {ComplexSurd(), ComplexSurd(), ComplexSurd(Surd(1))};
    break;
  case -1:
    v.exact = {ComplexSurd(inv_root2), i * ComplexSurd(inv_root2), ComplexSurd()};
    break;
  default:
    throw DomainError("spherical basis index q=" + std::to_string(q) + " outside [-1, 1]");
  }
  return v;
}

RankTwoTensor rank2_tensor(int q) {
  if (q < -2 || q > 2)
    throw DomainError("rank-2 tensor index q=" + std::to_string(q) + " outside [-2, 2]");

  Surd prefactor = Surd::sqrt(Rational(10, 3));
  if (q % 2 != 0)
    prefactor = -prefactor;

  RankTwoTensor t;
  t.q = q;
  for (int m1 = -1; m1 <= 1; ++m1) {
    for (int m2 = -1; m2 <= 1; ++m2) {
      const SqrtRational w = wigner_3j_exact(1, 1, 2, m1, m2, -q);
      if (w.sign == 0)
        continue;
      const ComplexSurd weight(prefactor * Surd::from_sqrt(w));
      const SphericalBasisVector a = spherical_basis(m1);
      const SphericalBasisVector b = spherical_basis(m2);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          t.exact[i][j] += weight * a.exact[i] * b.exact[j];
    }
  }
  return t;
}

ComplexSurd dot(const std::array<ComplexSurd, 3> &a, const std::array<ComplexSurd, 3> &b) {
  ComplexSurd s;
  for (int i = 0; i < 3; ++i)
    s += a[i] * b[i];
  return s;
}

const std::array<Eigen::Vector3cd, 3> &spherical_basis_table() {
  static const std::array<Eigen::Vector3cd, 3> table = [] {
    std::array<Eigen::Vector3cd, 3> out;
    for (int q = -1; q <= 1; ++q)
      out[q + 1] = spherical_basis(q).components();
    return out;
  }();
  return table;
}

const std::array<Eigen::Matrix3cd, 5> &rank2_tensor_table() {
  static const std::array<Eigen::Matrix3cd, 5> table = [] {
    std::array<Eigen::Matrix3cd, 5> out;
    for (int q = -2; q <= 2; ++q)
      out[q + 2] = rank2_tensor(q).components();
    return out;
  }();
  return table;
}

} // namespace iontrap
