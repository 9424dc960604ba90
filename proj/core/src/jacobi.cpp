#include "iontrap/jacobi.hpp"

#include "iontrap/errors.hpp"

#include <cmath>

namespace iontrap {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd &a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

} // namespace

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd &input, const JacobiOptions &options) {
  if (input.rows() != input.cols())
    throw DomainError("jacobi_eigen: matrix must be square");
  const Eigen::Index n = input.rows();

  Eigen::MatrixXd a = input.selfadjointView<Eigen::Upper>();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = a.norm();
  const double target = options.threshold * (scale > 0.0 ? scale : 1.0);

  int sweep = 0;
  for (; sweep <= options.max_sweeps; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off <= target || off == 0.0)
      return {a.diagonal(), v, sweep};
    if (sweep == options.max_sweeps)
      throw ConvergenceError("jacobi_eigen: sweep cap exceeded", off, sweep);

    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0)
          continue;
        // Rotation angle chosen so that the (p,q) entry vanishes; the smaller
        // root of t^2 + 2 theta t - 1 = 0 keeps |angle| <= pi/4.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  // unreachable: the loop either returns or throws
  throw ConvergenceError("jacobi_eigen: sweep cap exceeded", off_diagonal_norm(a), sweep);
}

} // namespace iontrap
