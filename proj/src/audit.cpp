#include "fmns/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fmns/error.hpp"

namespace fmns {

namespace {

double max_abs(const std::vector<double>& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

double l2_cells(const std::vector<double>& f, double dy) {
  double s = 0.0;
  for (double x : f) s += x * x;
  return std::sqrt(s * dy);
}

std::vector<double> inverse(const std::vector<double>& J) {
  std::vector<double> out(J.size());
  for (std::size_t k = 0; k < J.size(); ++k) {
    if (!(J[k] > 0.0)) throw DegenerateJacobianError("audit: J must be positive");
    out[k] = 1.0 / J[k];
  }
  return out;
}

// d/dy (dG/dy / rho0) on cells, with dG/dy = 0 at both walls.
std::vector<double> g_diffusion(const std::vector<double>& G, const Problem& problem) {
  const Grid& grid = problem.grid;
  const int n = grid.cells();
  const auto dG = node_difference(G, grid);
  std::vector<double> q(n + 1, 0.0);
  for (int i = 1; i < n; ++i) q[i] = dG[i - 1] / problem.node_mass[i];
  return cell_gradient(q, grid);
}

}  // namespace

void AuditConfig::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"audit.mass_rel_tol", mass_rel_tol},
      {"audit.energy_rel_tol", energy_rel_tol},
      {"audit.ks_rel_tol", ks_rel_tol},
      {"audit.flow_map_tol", flow_map_tol},
      {"audit.bound_abs_tol", bound_abs_tol},
      {"audit.h_rel_tol", h_rel_tol},
      {"audit.margin_tol", margin_tol},
      {"audit.boundary_flux_constant", boundary_flux_constant},
      {"audit.delta_mask_fraction", delta_mask_fraction},
  };
  for (const auto& [name, value] : fields) {
    if (!(value >= 0.0) || !std::isfinite(value)) throw ConfigError(name, "must be finite and nonnegative");
  }
}

GradedItem grade(std::string name, double value, double threshold, Comparison cmp) {
  bool pass = false;
  switch (cmp) {
    case Comparison::AbsAtMost: pass = std::abs(value) <= threshold; break;
    case Comparison::AtMost: pass = value <= threshold; break;
    case Comparison::AtLeast: pass = value >= threshold; break;
  }
  return GradedItem{std::move(name), value, threshold, cmp, pass};
}

std::vector<double> effective_flux_field(const State& state, const Problem& problem) {
  const auto& p = problem.params;
  const auto strain = cell_gradient(state.v, problem.grid);
  std::vector<double> G(strain.size());
  for (std::size_t k = 0; k < G.size(); ++k) {
    const double pi = pressure(problem.data.rho0[k], state.theta[k], state.J[k], p.R);
    G[k] = effective_flux(strain[k], state.J[k], pi, p.mu);
  }
  return G;
}

std::vector<double> ks_identity_residual(const State& state, const Problem& problem) {
  const auto ks = ks_fields(state, problem);
  const auto& p = problem.params;
  std::vector<double> r(state.J.size());
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double lhs = 1.0 + (p.R / p.mu) * problem.data.rho0[k] * state.acc_ks[k];
    r[k] = lhs - state.J[k] * ks.H * ks.B[k];
  }
  return r;
}

JBoundMargins j_bounds_check(const State& state, const AprioriConstants& c, const Problem& problem) {
  const auto& p = problem.params;
  const double f1 = c.f1(state.t);
  const double lower = 1.0 / (c.m1 * f1);
  JBoundMargins m;
  m.lower = *std::min_element(state.J.begin(), state.J.end()) - lower;
  m.upper = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < state.J.size(); ++k) {
    const double upper = c.m1 * c.m1 + (p.R / p.mu) * c.m1 * c.m1 * c.m1 * f1 * state.acc_rho_theta[k];
    m.upper = std::min(m.upper, upper - state.J[k]);
  }
  return m;
}

EmbeddingMargins embedding_check(const State& state, const AprioriConstants& c, const Problem& problem) {
  const Grid& grid = problem.grid;
  const auto& p = problem.params;
  const auto& rho = problem.data.rho0;
  const double L = grid.length();
  const auto inv_J = inverse(state.J);
  const auto face = face_coefficients(inv_J, grid);
  const auto dtheta = node_difference(state.theta, grid);
  double grad2 = 0.0;
  for (std::size_t j = 0; j < dtheta.size(); ++j) grad2 += dtheta[j] * dtheta[j] * face[j + 1];
  const double grad_norm = std::sqrt(grad2 * grid.dy());
  const double J_inf = *std::max_element(state.J.begin(), state.J.end());

  double lhs1 = 0.0, theta_inf = 0.0;
  for (std::size_t k = 0; k < rho.size(); ++k) {
    lhs1 = std::max(lhs1, std::abs(rho[k] * rho[k] * state.theta[k]));
    theta_inf = std::max(theta_inf, std::abs(state.theta[k]));
  }
  lhs1 *= lhs1;
  const double e = c.E0 / p.c_v;
  const double rb = c.rho_bar;
  const double rhs1 = e * e * (8.0 * rb * rb / (L * L) + 32.0 * c.rho_d1_inf * c.rho_d1_inf) +
                      6.0 * std::pow(rb, 10.0 / 3.0) * std::cbrt(e * e) * std::pow(grad_norm, 4.0 / 3.0) *
                          std::cbrt(J_inf * J_inf);
  const double rhs2 = std::sqrt(L) * grad_norm + 2.0 * c.E0 / (p.c_v * c.omega0 * rb);
  return EmbeddingMargins{rhs1 - lhs1, rhs2 - theta_inf};
}

FluxReport flux_checks(const State& state, const State& previous, const Problem& problem,
                       const AuditConfig& cfg) {
  const double dt = state.t - previous.t;
  if (!(dt > 0.0)) throw StructuralError("flux_checks: states must be at increasing times");
  const Grid& grid = problem.grid;
  const auto& p = problem.params;
  const auto& rho = problem.data.rho0;
  const int n = grid.cells();

  FluxReport r;
  const auto G = effective_flux_field(state, problem);
  const auto dG = node_difference(G, grid);
  for (int i = 1; i < n; ++i) {
    const double accel = problem.node_mass[i] * (state.v[i] - previous.v[i]) / dt;
    r.node_residual_sup = std::max(r.node_residual_sup, std::abs(dG[i - 1] - accel));
  }
  r.boundary_left = G[1] - G[0];
  r.boundary_right = G[n - 1] - G[n - 2];

  // dG/dt - (mu/J) d/dy(dG/dy / rho0) = -(R kappa/(c_v J)) d/dy(dtheta/dy / J) - (1 + R/c_v) (dv/dy) G / J
  const auto G_old = effective_flux_field(previous, problem);
  const auto inv_J = inverse(state.J);
  const auto diffusion_G = g_diffusion(G, problem);
  const auto heat = cell_div_flux(face_coefficients(inv_J, grid), state.theta, grid, problem.bc);
  const auto strain = cell_gradient(state.v, grid);
  r.delta_mask = cfg.delta_mask_fraction * problem.rho_max;
  const double ratio = p.R / p.c_v;
  for (int k = 0; k < n; ++k) {
    if (rho[k] < r.delta_mask) {
      ++r.masked_cells;
      continue;
    }
    const double lhs = (G[k] - G_old[k]) / dt - p.mu * inv_J[k] * diffusion_G[k];
    const double sG = strain[k] * G[k] * inv_J[k];
    const double rhs = -ratio * p.kappa * inv_J[k] * heat[k] - (1.0 + ratio) * sG;
    const double alt_rhs = -p.kappa * (ratio - 1.0) * inv_J[k] * heat[k] - ratio * sG;
    r.g_equation_residual_sup = std::max(r.g_equation_residual_sup, std::abs(lhs - rhs));
    r.g_equation_residual_alt_sup = std::max(r.g_equation_residual_alt_sup, std::abs(lhs - alt_rhs));
  }
  return r;
}

std::pair<double, double> conservation_check(const State& state, const Problem& problem,
                                             const AprioriConstants& c) {
  return {mass_error(state, problem), energy(state, problem) - c.E0};
}

bool AuditRecord::passed() const noexcept {
  return std::all_of(items.begin(), items.end(), [](const GradedItem& i) { return i.pass; });
}

const GradedItem* AuditRecord::item(const std::string& name) const noexcept {
  for (const auto& i : items) {
    if (i.name == name) return &i;
  }
  return nullptr;
}

std::optional<double> AuditRecord::diagnostic(const std::string& name) const noexcept {
  for (const auto& [key, value] : diagnostics) {
    if (key == name) return value;
  }
  return std::nullopt;
}

bool AuditReport::passed() const noexcept {
  return std::all_of(records.begin(), records.end(), [](const AuditRecord& r) { return r.passed(); });
}

std::vector<std::string> AuditReport::failures() const {
  std::vector<std::string> out;
  for (const auto& r : records) {
    for (const auto& i : r.items) {
      if (!i.pass && std::find(out.begin(), out.end(), i.name) == out.end()) out.push_back(i.name);
    }
  }
  return out;
}

AuditRecord audit_snapshot(const Snapshot& snap, const Problem& problem, const AprioriConstants& c,
                           const AuditConfig& cfg, AuditScope scope) {
  const State& s = snap.state;
  const Grid& grid = problem.grid;
  const double L = grid.length();
  const double dy = grid.dy();
  AuditRecord rec;
  rec.t = s.t;
  auto& items = rec.items;
  auto& diag = rec.diagnostics;

  const auto [mass, energy_err] = conservation_check(s, problem, c);
  items.push_back(grade("mass_error", mass / L, cfg.mass_rel_tol, Comparison::AbsAtMost));
  if (scope == AuditScope::Kinematic) {
    items.push_back(grade("flow_map_defect", flow_map_defect(s, problem), cfg.flow_map_tol, Comparison::AtMost));
    diag.emplace_back("energy_error", energy_err / c.E0);
    diag.emplace_back("min_J", *std::min_element(s.J.begin(), s.J.end()));
    return rec;
  }
  if (problem.bc == ThetaBC::NeumannNeumann) {
    items.push_back(grade("energy_error", energy_err / c.E0, cfg.energy_rel_tol, Comparison::AbsAtMost));
  } else {
    // Heat leaves through a cold wall, so only growth is an error.
    items.push_back(grade("energy_error", energy_err / c.E0, cfg.energy_rel_tol, Comparison::AtMost));
  }
  items.push_back(grade("flow_map_defect", flow_map_defect(s, problem), cfg.flow_map_tol, Comparison::AtMost));

  const auto ks = ks_fields(s, problem);
  const auto residual = ks_identity_residual(s, problem);
  double jhb = 0.0;
  for (std::size_t k = 0; k < s.J.size(); ++k) jhb = std::max(jhb, s.J[k] * ks.H * ks.B[k]);
  items.push_back(grade("ks_residual_sup", max_abs(residual), cfg.ks_rel_tol * std::max(1.0, jhb),
                        Comparison::AtMost));

  const auto jm = j_bounds_check(s, c, problem);
  items.push_back(grade("j_lower_margin", jm.lower, -cfg.margin_tol, Comparison::AtLeast));
  items.push_back(grade("j_upper_margin", jm.upper, -cfg.margin_tol, Comparison::AtLeast));

  const auto [b_min, b_max] = std::minmax_element(ks.B.begin(), ks.B.end());
  items.push_back(grade("B_lower_margin", *b_min - c.m_lower, -cfg.bound_abs_tol, Comparison::AtLeast));
  items.push_back(grade("B_upper_margin", c.m1 - *b_max, -cfg.bound_abs_tol, Comparison::AtLeast));
  const double f1 = c.f1(s.t);
  items.push_back(grade("H_lower_margin", ks.H - 1.0 / c.m1, -cfg.h_rel_tol * f1, Comparison::AtLeast));
  items.push_back(grade("H_upper_margin", f1 - ks.H, -cfg.h_rel_tol * f1, Comparison::AtLeast));

  const auto em = embedding_check(s, c, problem);
  items.push_back(grade("embedding_rho2_theta_margin", em.rho2_theta, -cfg.margin_tol, Comparison::AtLeast));
  items.push_back(grade("embedding_theta_inf_margin", em.theta_inf, -cfg.margin_tol, Comparison::AtLeast));

  const auto G = effective_flux_field(s, problem);
  const double G_inf = max_abs(G);
  std::optional<FluxReport> flux;
  if (snap.previous && snap.previous->t < s.t) {
    flux = flux_checks(s, *snap.previous, problem, cfg);
    const double limit = cfg.boundary_flux_constant * (dy / L) * (dy / L) * G_inf;
    items.push_back(grade("boundary_flux_left", flux->boundary_left, limit, Comparison::AbsAtMost));
    items.push_back(grade("boundary_flux_right", flux->boundary_right, limit, Comparison::AbsAtMost));
  }

  diag.emplace_back("h", ks.h);
  diag.emplace_back("h_spread", ks.h_spread);
  diag.emplace_back("H", ks.H);
  diag.emplace_back("f1", f1);
  if (flux) {
    diag.emplace_back("flux_residual_sup", flux->node_residual_sup);
    diag.emplace_back("g_equation_residual_sup", flux->g_equation_residual_sup);
    diag.emplace_back("g_equation_residual_alt_sup", flux->g_equation_residual_alt_sup);
    diag.emplace_back("g_equation_masked_cells", flux->masked_cells);
  }
  diag.emplace_back("G_l2", l2_cells(G, dy));
  diag.emplace_back("G_inf", G_inf);
  diag.emplace_back("dJ_l2", l2_cells(node_difference(s.J, grid), dy));
  if (snap.previous && snap.previous->t < s.t) {
    const double dt = s.t - snap.previous->t;
    std::vector<double> rate(s.theta.size());
    for (std::size_t k = 0; k < rate.size(); ++k) {
      rate[k] = std::sqrt(problem.data.rho0[k]) * (s.theta[k] - snap.previous->theta[k]) / dt;
    }
    diag.emplace_back("sqrt_rho_dtheta_l2", l2_cells(rate, dy));
  }
  const std::vector<double> unit(grid.nodes(), 1.0);
  diag.emplace_back("d2theta_l2", l2_cells(cell_div_flux(unit, s.theta, grid, problem.bc), dy));
  diag.emplace_back("theta_inf", max_abs(s.theta));
  diag.emplace_back("min_J", *std::min_element(s.J.begin(), s.J.end()));
  return rec;
}

AuditReport audit_trajectory(const Trajectory& traj, const Problem& problem, const AuditConfig& cfg,
                             AuditScope scope) {
  cfg.validate();
  AuditReport report;
  report.config = cfg;
  report.scope = scope;
  report.constants = apriori_constants(problem.data, problem.params, problem.grid, problem.bc);
  report.delta_mask = cfg.delta_mask_fraction * problem.rho_max;
  report.records.reserve(traj.snapshots.size());
  for (const auto& snap : traj.snapshots) {
    report.records.push_back(audit_snapshot(snap, problem, report.constants, cfg, scope));
  }
  return report;
}

}  // namespace fmns
