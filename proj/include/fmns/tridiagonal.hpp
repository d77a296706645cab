#pragma once

#include <span>
#include <vector>

namespace fmns {

/// Thomas algorithm without pivoting. lower[0] and upper[n-1] are ignored.
/// Throws NumericalError on a zero or non-finite pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

}  // namespace fmns
