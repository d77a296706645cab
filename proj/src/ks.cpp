#include "fmns/ks.hpp"

#include <cmath>

#include "fmns/error.hpp"
#include "fmns/timestepper.hpp"

namespace fmns {

std::vector<double> momentum_excess(const State& state, const Problem& problem) {
  const int n = problem.grid.cells();
  const double dy = problem.grid.dy();
  std::vector<double> out(n, 0.0);
  double sum = 0.0;
  for (int k = 1; k < n; ++k) {
    sum += problem.node_mass[k] * (state.v[k] - problem.data.v0[k]);
    out[k] = sum * dy;
  }
  return out;
}

KSFields ks_fields(const State& state, const Problem& problem) {
  const int n = problem.grid.cells();
  const double mu = problem.params.mu;
  const auto excess = momentum_excess(state, problem);
  KSFields ks;
  ks.h_field.resize(n);
  ks.B.resize(n);
  double mean = 0.0;
  for (int k = 0; k < n; ++k) {
    if (!(state.J[k] > 0.0)) throw DegenerateJacobianError("ks_fields: J must be positive");
    ks.h_field[k] = excess[k] - mu * std::log(state.J[k]) + state.acc_pi[k];
    ks.B[k] = std::exp(-excess[k] / mu);
    mean += ks.h_field[k];
  }
  mean /= n;
  double var = 0.0;
  for (double h : ks.h_field) var += (h - mean) * (h - mean);
  ks.h = mean;
  ks.h_spread = std::sqrt(var / n);
  ks.H = std::exp(mean / mu);
  return ks;
}

}  // namespace fmns
