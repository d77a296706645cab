#pragma once

// Independent reference computations for the tests: dense linear algebra and
// a dense re-implementation of one IMEX-Euler step straight from the formulas.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline Matrix zeros(std::size_t n) { return Matrix(n, std::vector<double>(n, 0.0)); }

// Gaussian elimination with partial pivoting.
inline std::vector<double> solve(Matrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    }
    std::swap(a[c], a[p]);
    std::swap(b[c], b[p]);
    if (a[c][c] == 0.0) throw std::runtime_error("singular");
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

inline std::vector<double> multiply(const Matrix& a, const std::vector<double>& x) {
  std::vector<double> y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < x.size(); ++k) y[i] += a[i][k] * x[k];
  }
  return y;
}

struct StepInput {
  double mu = 1, kappa = 1, R = 1, c_v = 1, L = 1, dt = 1e-3;
  bool dirichlet_left = false, dirichlet_right = false;
  std::vector<double> rho, J, v, theta;
};

struct StepOutput {
  std::vector<double> J, v, theta;
};

// One IMEX-Euler step assembled as dense systems for the new values themselves
// (not increments): momentum with 1/J^n and lagged pressure, then J, then
// temperature with 1/J^{n+1}.
inline StepOutput imex_euler_step(const StepInput& in) {
  const std::size_t n = in.rho.size();
  const double dy = in.L / static_cast<double>(n);
  const double dt = in.dt;
  std::vector<double> pi(n);
  for (std::size_t k = 0; k < n; ++k) pi[k] = in.R * in.rho[k] * in.theta[k] / in.J[k];

  // m_i (w_i - v_i)/dt = mu [ (w_{i+1}-w_i)/J_i - (w_i-w_{i-1})/J_{i-1} ]/dy^2 - (pi_i - pi_{i-1})/dy
  const std::size_t m = n - 1;
  Matrix a = zeros(m);
  std::vector<double> b(m);
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t i = r + 1;
    const double mass = 0.5 * (in.rho[i - 1] + in.rho[i]);
    const double cr = in.mu * dt / (in.J[i] * dy * dy);
    const double cl = in.mu * dt / (in.J[i - 1] * dy * dy);
    a[r][r] = mass + cr + cl;
    if (r + 1 < m) a[r][r + 1] = -cr;
    if (r > 0) a[r][r - 1] = -cl;
    b[r] = mass * in.v[i] - dt * (pi[i] - pi[i - 1]) / dy;
  }
  const auto w = solve(a, b);
  StepOutput out;
  out.v.assign(n + 1, 0.0);
  for (std::size_t r = 0; r < m; ++r) out.v[r + 1] = w[r];

  out.J.resize(n);
  std::vector<double> s(n);
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = (out.v[k + 1] - out.v[k]) / dy;
    out.J[k] = in.J[k] + dt * s[k];
  }

  // c_v rho (q - theta)/dt = kappa [F_{k+1} - F_k]/dy - s rho R theta/J' + mu s^2/J'
  Matrix t = zeros(n);
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    t[k][k] = in.c_v * in.rho[k];
    c[k] = in.c_v * in.rho[k] * in.theta[k] +
           dt * (-s[k] * in.R * in.rho[k] * in.theta[k] / out.J[k] + in.mu * s[k] * s[k] / out.J[k]);
  }
  const double g = in.kappa * dt / (dy * dy);
  for (std::size_t i = 1; i < n; ++i) {
    const double face = 0.5 * (1.0 / out.J[i - 1] + 1.0 / out.J[i]);
    // flux across node i moves heat from cell i-1 to cell i
    t[i - 1][i - 1] += g * face;
    t[i - 1][i] -= g * face;
    t[i][i] += g * face;
    t[i][i - 1] -= g * face;
  }
  if (in.dirichlet_left) t[0][0] += 2.0 * g / out.J[0];
  if (in.dirichlet_right) t[n - 1][n - 1] += 2.0 * g / out.J[n - 1];
  out.theta = solve(t, c);
  return out;
}

}  // namespace oracle
