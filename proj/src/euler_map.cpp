#include "fmns/euler_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fmns/error.hpp"

namespace fmns {

namespace {

// Index j with a[j] <= x <= a[j+1] in an increasing array, clamped to the last interval.
std::size_t bracket(const std::vector<double>& a, double x) {
  auto it = std::upper_bound(a.begin(), a.end(), x);
  std::size_t j = it == a.begin() ? 0 : static_cast<std::size_t>(it - a.begin()) - 1;
  return std::min(j, a.size() - 2);
}

double lerp_at(const std::vector<double>& xs, const std::vector<double>& fs, double x) {
  if (x <= xs.front()) return fs.front();
  if (x >= xs.back()) return fs.back();
  const std::size_t j = bracket(xs, x);
  const double w = (x - xs[j]) / (xs[j + 1] - xs[j]);
  return (1.0 - w) * fs[j] + w * fs[j + 1];
}

}  // namespace

std::vector<double> flow_map(const State& state, const Grid& grid) {
  if (static_cast<int>(state.acc_eta.size()) != grid.nodes()) {
    throw StructuralError("flow_map: acc_eta does not match the grid");
  }
  std::vector<double> eta(grid.nodes());
  for (int i = 0; i < grid.nodes(); ++i) eta[i] = grid.node(i) + state.acc_eta[i];
  for (int i = 1; i < grid.nodes(); ++i) {
    if (!(eta[i] > eta[i - 1])) {
      throw DegenerateJacobianError("flow_map: eta is not increasing at node " + std::to_string(i));
    }
  }
  return eta;
}

std::vector<double> uniform_positions(double L, int count) {
  if (count < 2) throw StructuralError("uniform_positions: need at least two points");
  std::vector<double> x(count);
  for (int i = 0; i < count; ++i) x[i] = L * i / (count - 1);
  x.back() = L;
  return x;
}

EulerFrame to_euler(const State& state, const Problem& problem, std::span<const double> x) {
  const Grid& grid = problem.grid;
  const int n = grid.cells();
  EulerFrame frame;
  frame.t = state.t;
  frame.eta = flow_map(state, grid);
  if (!std::is_sorted(x.begin(), x.end())) throw StructuralError("to_euler: positions must be sorted");
  const double lo = frame.eta.front(), hi = frame.eta.back();
  const double slack = 1e-12 * std::max(1.0, std::abs(hi - lo));

  // Images of the cell centers: midpoint of the two bounding node images.
  std::vector<double> centers(n), rho(n);
  for (int k = 0; k < n; ++k) {
    centers[k] = 0.5 * (frame.eta[k] + frame.eta[k + 1]);
    rho[k] = problem.data.rho0[k] / state.J[k];
  }

  frame.samples.reserve(x.size());
  for (double xq : x) {
    if (xq < lo - slack || xq > hi + slack) {
      throw RangeError("to_euler: x = " + std::to_string(xq) + " outside [" + std::to_string(lo) + ", " +
                       std::to_string(hi) + "]");
    }
    EulerSample s;
    s.x = xq;
    s.u = lerp_at(frame.eta, state.v, xq);
    s.rho = lerp_at(centers, rho, xq);
    s.theta = lerp_at(centers, state.theta, xq);
    frame.samples.push_back(s);
  }
  return frame;
}

}  // namespace fmns
