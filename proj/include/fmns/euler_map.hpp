#pragma once

// The flow map x = eta(y, t) and the transport of Lagrangian fields back to
// Euler coordinates. Diagnostic/export path only: piecewise-linear throughout.

#include <span>
#include <vector>

#include "fmns/timestepper.hpp"

namespace fmns {

/// eta = y + acc_eta on nodes. Throws DegenerateJacobianError unless strictly increasing.
std::vector<double> flow_map(const State& state, const Grid& grid);

struct EulerSample {
  double x = 0.0;
  double rho = 0.0;    ///< (rho0 + eps)/J
  double u = 0.0;
  double theta = 0.0;
};

struct EulerFrame {
  double t = 0.0;
  std::vector<double> eta;
  std::vector<EulerSample> samples;
};

/// Samples (rho, u, theta) at the sorted positions `x`. Node fields are
/// interpolated in eta between nodes; cell fields between the images of cell
/// centers (held constant over the outer half cells). Throws RangeError for x
/// outside [eta_0, eta_N] and StructuralError for unsorted queries.
EulerFrame to_euler(const State& state, const Problem& problem, std::span<const double> x);

/// x evenly spaced over [0, L] with `count` points.
std::vector<double> uniform_positions(double L, int count);

}  // namespace fmns
