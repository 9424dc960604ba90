#pragma once

#include "iontrap/surd.hpp"

#include <Eigen/Core>
#include <array>

namespace iontrap {

/// Normalized spherical basis vector c^(q), q in {-1, 0, 1}:
///   c^(1) = -(1, -i, 0)/sqrt(2),  c^(0) = (0, 0, 1),  c^(-1) = (1, i, 0)/sqrt(2).
struct SphericalBasisVector {
  int q = 0;
  std::array<ComplexSurd, 3> exact;

  Eigen::Vector3cd components() const;
};

/// Symmetric rank-2 spherical tensor c^(q)_ij, q in {-2, ..., 2}.
struct RankTwoTensor {
  int q = 0;
  std::array<std::array<ComplexSurd, 3>, 3> exact;

  Eigen::Matrix3cd components() const;
};

/// Throws DomainError for |q| > 1.
SphericalBasisVector spherical_basis(int q);

/// Built from the rank-1 vectors by 3-j coupling:
///   c^(q)_ij = sqrt(10/3) (-1)^q sum_{m1,m2} (1 1 2; m1 m2 -q) c^(m1)_i c^(m2)_j.
/// Throws DomainError for |q| > 2.
RankTwoTensor rank2_tensor(int q);

/// Bilinear (unconjugated) dot product a . b.
ComplexSurd dot(const std::array<ComplexSurd, 3> &a, const std::array<ComplexSurd, 3> &b);

/// Floating-point copies of all basis vectors / tensors, indexed by q + 1 and
/// q + 2. Built once on first use; safe to call concurrently.
const std::array<Eigen::Vector3cd, 3> &spherical_basis_table();
const std::array<Eigen::Matrix3cd, 5> &rank2_tensor_table();

} // namespace iontrap
