#pragma once

// Equilibrium by direct minimization of the dimensionless potential
//   V = sum_m u_m^2 / 2 + sum_{n<m} 1 / (u_m - u_n),
// one coordinate at a time (nonlinear Gauss-Seidel with a 1-D Newton step).
// Independent of the library's full-Jacobian Newton solver.

#include <cmath>
#include <vector>

namespace oracle {

inline std::vector<double> coordinate_descent_equilibrium(int n, double tol = 1e-15,
                                                          int max_sweeps = 200000) {
  std::vector<long double> u(n);
  for (int m = 0; m < n; ++m)
    u[m] = (m - 0.5L * (n - 1)) * 1.5L;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    long double worst = 0.0L;
    for (int m = 0; m < n; ++m) {
      for (int inner = 0; inner < 50; ++inner) {
        long double grad = u[m], curv = 1.0L;
        for (int k = 0; k < n; ++k) {
          if (k == m)
            continue;
          const long double d = u[m] - u[k];
          grad -= (d > 0 ? 1.0L : -1.0L) / (d * d);
          curv += 2.0L / std::fabs(d * d * d);
        }
        const long double delta = grad / curv;
        u[m] -= delta;
        if (std::fabs(delta) < 1e-19L)
          break;
      }
    }
    for (int m = 0; m < n; ++m) {
      long double grad = u[m];
      for (int k = 0; k < n; ++k)
        if (k != m) {
          const long double d = u[m] - u[k];
          grad -= (d > 0 ? 1.0L : -1.0L) / (d * d);
        }
      worst = std::max(worst, std::fabs(grad));
    }
    if (worst < tol)
      break;
  }
  return {u.begin(), u.end()};
}

} // namespace oracle
