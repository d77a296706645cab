#include "fmns/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fmns/error.hpp"

namespace fmns {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw StructuralError(std::string(what) + " contains a non-finite value");
  }
}

void require_length(const std::vector<double>& values, std::size_t n, const char* what) {
  if (values.size() != n) {
    throw StructuralError(std::string(what) + ": expected " + std::to_string(n) + " samples, got " +
                          std::to_string(values.size()));
  }
}

void check_shapes(const InitialData& data) {
  const std::size_t n = data.rho0.size();
  if (n < 1) throw StructuralError("initial data needs at least one cell");
  require_length(data.theta0, n, "theta0");
  require_length(data.v0, n + 1, "v0");
  require_finite(data.rho0, "rho0");
  require_finite(data.v0, "v0");
  require_finite(data.theta0, "theta0");
  if (data.derivatives) {
    const auto& d = *data.derivatives;
    for (const auto* f : {&d.rho0_d1, &d.rho0_d2, &d.v0_d1, &d.v0_d2, &d.theta0_d1, &d.theta0_d2}) {
      require_length(*f, n, "derivative samples");
      require_finite(*f, "derivative samples");
    }
  }
  if (data.rho0_boundary) require_finite(*data.rho0_boundary, "rho0 boundary values");
}

double max_abs(std::span<const double> f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

// First derivative of a cell field at cell centers.
std::vector<double> cell_d1(std::span<const double> f, double dy) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  if (n == 2) {
    d[0] = d[1] = (f[1] - f[0]) / dy;
    return d;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - f[k - 1]) / (2.0 * dy);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dy);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dy);
  return d;
}

// Second derivative of a sampled field at the sample points.
std::vector<double> point_d2(std::span<const double> f, double dy) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) return d;
  const double inv = 1.0 / (dy * dy);
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - 2.0 * f[k] + f[k - 1]) * inv;
  if (n >= 4) {
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv;
  } else {
    d[0] = d[1];
    d[n - 1] = d[n - 2];
  }
  return d;
}

double l2_cells(std::span<const double> f, double dy) {
  double s = 0.0;
  for (double v : f) s += v * v;
  return std::sqrt(s * dy);
}

}  // namespace

void PhysicalParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string("params.") + name, "must be positive");
  };
  positive(mu, "mu");
  positive(kappa, "kappa");
  positive(R, "R");
  positive(c_v, "c_v");
  positive(L, "L");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw ConfigError("params.eps", "must be nonnegative");
}

InitialDerivatives initial_derivatives(const InitialData& data, const Grid& grid) {
  check_shapes(data);
  if (data.derivatives) return *data.derivatives;
  const double dy = grid.dy();
  InitialDerivatives d;
  d.rho0_d1 = cell_d1(data.rho0, dy);
  d.rho0_d2 = point_d2(data.rho0, dy);
  d.theta0_d1 = cell_d1(data.theta0, dy);
  d.theta0_d2 = point_d2(data.theta0, dy);
  d.v0_d1 = cell_gradient(data.v0, grid);
  const auto node_d2 = point_d2(data.v0, dy);
  d.v0_d2.resize(data.rho0.size());
  for (std::size_t k = 0; k < d.v0_d2.size(); ++k) d.v0_d2[k] = 0.5 * (node_d2[k] + node_d2[k + 1]);
  return d;
}

std::string_view to_string(Violation v) noexcept {
  switch (v) {
    case Violation::NegativeDensity: return "negative density";
    case Violation::NegativeTemperature: return "negative temperature";
    case Violation::EndpointVelocity: return "endpoint velocity nonzero";
    case Violation::EndpointTemperatureSlope: return "endpoint temperature slope nonzero";
    case Violation::EndpointTemperatureValue: return "endpoint temperature nonzero";
    case Violation::VacuumCompatibility: return "compatibility quotient singular at vacuum";
  }
  return "unknown";
}

bool ValidationReport::only_vacuum_flags() const noexcept {
  return std::all_of(issues.begin(), issues.end(),
                     [](const ValidationIssue& i) { return i.kind == Violation::VacuumCompatibility; });
}

bool ValidationReport::has(Violation kind) const noexcept {
  return std::any_of(issues.begin(), issues.end(),
                     [kind](const ValidationIssue& i) { return i.kind == kind; });
}

ValidationReport validate_initial_data(const InitialData& data, const PhysicalParams& params,
                                       ThetaBC bc) {
  check_shapes(data);
  const Grid grid(params.L, data.cells());
  const int n = grid.cells();
  const double dy = grid.dy();
  const double L = grid.length();
  ValidationReport report;
  auto add = [&](Violation kind, int index, std::string detail) {
    std::string msg(to_string(kind));
    if (!detail.empty()) msg += " (" + detail + ")";
    report.issues.push_back({kind, index, std::move(msg)});
  };

  for (int k = 0; k < n; ++k) {
    if (data.rho0[k] < 0.0) add(Violation::NegativeDensity, k, "cell " + std::to_string(k));
    if (data.theta0[k] < 0.0) add(Violation::NegativeTemperature, k, "cell " + std::to_string(k));
  }

  const double v_tol = 1e-12 * std::max(1.0, max_abs(data.v0));
  if (std::abs(data.v0.front()) > v_tol) add(Violation::EndpointVelocity, 0, "y = 0");
  if (std::abs(data.v0.back()) > v_tol) add(Violation::EndpointVelocity, n, "y = L");

  // Wall values from the quadratic through the three cells nearest the wall.
  const double theta_scale = std::max(1.0, max_abs(data.theta0));
  if (n >= 3) {
    const auto& f = data.theta0;
    const double slope_tol = (dy / L) * theta_scale / L;
    const double value_tol = (dy / L) * theta_scale;
    const double slope_left = (-2.0 * f[0] + 3.0 * f[1] - f[2]) / dy;
    const double slope_right = (2.0 * f[n - 1] - 3.0 * f[n - 2] + f[n - 3]) / dy;
    const double value_left = (15.0 * f[0] - 10.0 * f[1] + 3.0 * f[2]) / 8.0;
    const double value_right = (15.0 * f[n - 1] - 10.0 * f[n - 2] + 3.0 * f[n - 3]) / 8.0;
    if (dirichlet_left(bc)) {
      if (std::abs(value_left) > value_tol) add(Violation::EndpointTemperatureValue, 0, "y = 0");
    } else if (std::abs(slope_left) > slope_tol) {
      add(Violation::EndpointTemperatureSlope, 0, "y = 0");
    }
    if (dirichlet_right(bc)) {
      if (std::abs(value_right) > value_tol) add(Violation::EndpointTemperatureValue, n - 1, "y = L");
    } else if (std::abs(slope_right) > slope_tol) {
      add(Violation::EndpointTemperatureSlope, n - 1, "y = L");
    }
  }

  const auto d = initial_derivatives(data, grid);
  std::vector<double> num_g(n), num_h(n);
  for (int k = 0; k < n; ++k) {
    const double rho = data.rho0[k], theta = data.theta0[k];
    const double d_rho_theta = d.rho0_d1[k] * theta + rho * d.theta0_d1[k];
    num_g[k] = params.mu * d.v0_d2[k] - params.R * d_rho_theta;
    num_h[k] = params.kappa * d.theta0_d2[k] + params.mu * d.v0_d1[k] * d.v0_d1[k] -
               params.R * d.v0_d1[k] * rho * theta;
  }
  const double compat_tol =
      10.0 * (dy / L) * std::max({1.0, max_abs(num_g), max_abs(num_h)});

  report.g0.assign(n, 0.0);
  report.h0.assign(n, 0.0);
  auto flag = [&](int k, const std::string& where) {
    if (std::find(report.flagged_cells.begin(), report.flagged_cells.end(), k) !=
        report.flagged_cells.end()) {
      return;
    }
    report.flagged_cells.push_back(k);
    add(Violation::VacuumCompatibility, k, where);
  };
  for (int k = 0; k < n; ++k) {
    if (data.rho0[k] > 0.0) {
      const double s = std::sqrt(data.rho0[k]);
      report.g0[k] = num_g[k] / s;
      report.h0[k] = num_h[k] / s;
    } else if (std::abs(num_g[k]) > compat_tol || std::abs(num_h[k]) > compat_tol) {
      flag(k, "cell " + std::to_string(k));
    }
  }
  if (data.rho0_boundary && n >= 2) {
    const auto [rho_left, rho_right] = *data.rho0_boundary;
    auto wall_numerators_vanish = [&](int a, int b) {
      const double g = 1.5 * num_g[a] - 0.5 * num_g[b];
      const double h = 1.5 * num_h[a] - 0.5 * num_h[b];
      return std::abs(g) <= compat_tol && std::abs(h) <= compat_tol;
    };
    if (rho_left <= 0.0 && !wall_numerators_vanish(0, 1)) flag(0, "wall y = 0");
    if (rho_right <= 0.0 && !wall_numerators_vanish(n - 1, n - 2)) flag(n - 1, "wall y = L");
  }
  std::sort(report.flagged_cells.begin(), report.flagged_cells.end());
  return report;
}

double pressure(double rho0, double theta, double J, double R) {
  if (!(J > 0.0)) throw DegenerateJacobianError("pressure: J must be positive");
  return R * rho0 * theta / J;
}

double effective_flux(double dv_dy, double J, double pi, double mu) {
  if (!(J > 0.0)) throw DegenerateJacobianError("effective_flux: J must be positive");
  return mu * dv_dy / J - pi;
}

double specific_energy(double v, double theta, double c_v) noexcept {
  return 0.5 * v * v + c_v * theta;
}

InitialData regularized(const InitialData& data, double eps) {
  InitialData out = data;
  if (eps == 0.0) return out;
  for (double& r : out.rho0) r += eps;
  for (double& t : out.theta0) t += eps;
  if (out.rho0_boundary) {
    (*out.rho0_boundary)[0] += eps;
    (*out.rho0_boundary)[1] += eps;
  }
  return out;
}

std::vector<double> node_masses(std::span<const double> rho_cells) {
  const std::size_t n = rho_cells.size();
  std::vector<double> m(n + 1);
  m[0] = rho_cells[0];
  m[n] = rho_cells[n - 1];
  for (std::size_t i = 1; i < n; ++i) m[i] = 0.5 * (rho_cells[i - 1] + rho_cells[i]);
  return m;
}

double total_energy(std::span<const double> rho_cells, std::span<const double> v,
                    std::span<const double> theta, double c_v, const Grid& grid) {
  const std::size_t n = rho_cells.size();
  double kinetic = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    kinetic += 0.5 * (rho_cells[i - 1] + rho_cells[i]) * v[i] * v[i];
  }
  double internal = 0.0;
  for (std::size_t k = 0; k < n; ++k) internal += rho_cells[k] * theta[k];
  return (0.5 * kinetic + c_v * internal) * grid.dy();
}

double AprioriConstants::f1(double t) const { return m1 * std::exp(f1_rate * t); }

AprioriConstants apriori_constants(const InitialData& data, const PhysicalParams& params,
                                   const Grid& grid, ThetaBC bc) {
  check_shapes(data);
  if (data.cells() != grid.cells()) throw StructuralError("apriori_constants: grid/data size mismatch");
  const int n = grid.cells();
  const double dy = grid.dy();
  const double L = grid.length();
  AprioriConstants c;
  c.rho_bar = *std::max_element(data.rho0.begin(), data.rho0.end());
  if (!(c.rho_bar > 0.0)) throw StructuralError("initial density vanishes identically (omega0 = 0)");
  c.E0 = total_energy(data.rho0, data.v0, data.theta0, params.c_v, grid);
  c.rho_l1 = integrate(data.rho0, grid);
  const auto in_omega =
      std::count_if(data.rho0.begin(), data.rho0.end(), [&](double r) { return r >= c.rho_bar / 2.0; });
  c.omega0 = dy * static_cast<double>(in_omega);
  c.m1 = std::exp((2.0 / params.mu) * std::sqrt(2.0 * c.rho_l1 * c.E0));
  c.m_lower = 1.0 / c.m1;
  c.f1_rate = params.R * c.m1 * c.m1 * c.E0 / (params.mu * params.c_v * L);

  const auto d = initial_derivatives(data, grid);
  c.rho_d1_inf = max_abs(d.rho0_d1);
  c.N1 = c.E0 / params.c_v + c.rho_bar + 1.0 / c.rho_bar + L + 1.0 / L + 1.0 / c.omega0 + c.rho_d1_inf;

  const auto m = node_masses(data.rho0);
  double rv4 = 0.0, rv2 = 0.0;
  for (int i = 1; i < n; ++i) {
    const double v2 = data.v0[i] * data.v0[i];
    rv4 += m[i] * v2 * v2;
    rv2 += m[i] * v2;
  }
  double rt2 = 0.0;
  for (int k = 0; k < n; ++k) rt2 += data.rho0[k] * data.theta0[k] * data.theta0[k];
  const double dv_l2 = l2_cells(d.v0_d1, dy);
  c.N2 = std::sqrt(rv4 * dy) + std::sqrt(rt2 * dy) + dv_l2;
  c.N2_alt = std::sqrt(rv4 * dy) + std::sqrt(rv2 * dy) + dv_l2;

  auto report = validate_initial_data(data, params, bc);
  c.g0 = std::move(report.g0);
  c.h0 = std::move(report.h0);
  c.N3 = l2_cells(d.rho0_d2, dy) + l2_cells(c.g0, dy) + l2_cells(c.h0, dy);
  return c;
}

Problem make_problem(const InitialData& data, const PhysicalParams& params, ThetaBC bc) {
  params.validate();
  check_shapes(data);
  if (data.cells() < 2) throw StructuralError("the solver needs at least two cells");
  InitialData shifted = regularized(data, params.eps);
  for (double r : shifted.rho0) {
    if (!(r > 0.0)) {
      throw StructuralError("effective density rho0 + eps must be positive on every cell (vacuum needs eps > 0)");
    }
  }
  Grid grid(params.L, data.cells());
  auto mass = node_masses(shifted.rho0);
  const double rho_max = *std::max_element(shifted.rho0.begin(), shifted.rho0.end());
  return Problem{grid, params, bc, std::move(shifted), std::move(mass), rho_max};
}

}  // namespace fmns
