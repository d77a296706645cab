#pragma once

// Fields of the Kazhikhov-Shelukhin type identity
//   1 + (R/mu) rho0 int_0^t theta H B = J H B,
// with h(y,t) = int_0^y rho0 (v - v0) - mu log J + int_0^t pi, H = exp(h/mu),
// B = exp(-(1/mu) int_0^y rho0 (v - v0)).

#include <vector>

#include "fmns/model.hpp"

namespace fmns {

struct State;

struct KSFields {
  std::vector<double> h_field;  ///< cells; constant in y for the continuum solution
  double h = 0.0;               ///< y-average of h_field
  double h_spread = 0.0;        ///< population standard deviation of h_field
  double H = 1.0;
  std::vector<double> B;        ///< cells
};

/// int_0^{y_k+dy/2} rho0 (v - v0) for each cell k, summed over the dual cells
/// of nodes 1..k with node masses.
std::vector<double> momentum_excess(const State& state, const Problem& problem);

/// Throws DegenerateJacobianError if some J <= 0.
KSFields ks_fields(const State& state, const Problem& problem);

}  // namespace fmns
