#include "fmns/tridiagonal.hpp"

#include <cmath>
#include <string>

#include "fmns/error.hpp"

namespace fmns {

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n) {
    throw StructuralError("solve_tridiagonal: inconsistent band lengths");
  }
  std::vector<double> x(n);
  if (n == 0) return x;

  std::vector<double> c(n, 0.0);
  double pivot = diag[0];
  if (pivot == 0.0 || !std::isfinite(pivot)) throw NumericalError("tridiagonal solve: zero pivot in row 0");
  c[0] = n > 1 ? upper[0] / pivot : 0.0;
  x[0] = rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = diag[i] - lower[i] * c[i - 1];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw NumericalError("tridiagonal solve: zero pivot in row " + std::to_string(i));
    }
    c[i] = i + 1 < n ? upper[i] / pivot : 0.0;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  for (double v : x) {
    if (!std::isfinite(v)) throw NumericalError("tridiagonal solve produced a non-finite value");
  }
  return x;
}

}  // namespace fmns
