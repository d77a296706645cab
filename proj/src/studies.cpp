#include "fmns/studies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fmns/error.hpp"
#include "fmns/ks.hpp"

namespace fmns {

namespace {

using Fn = std::function<double(double, double)>;

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double max_abs(const std::vector<double>& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

Trajectory run_to(const Problem& problem, SchemeConfig cfg, double dt, double t_end) {
  cfg.dt_initial = dt;
  cfg.dt_min = std::min(cfg.dt_min, dt);
  cfg.dt_max = std::max(cfg.dt_max, dt);
  RunRequest request;
  request.t_end = t_end;
  return run(problem, cfg, request);
}

std::vector<double> level_dts(double base_dt, int levels, RefinementMode mode) {
  std::vector<double> dts(levels);
  const double factor = mode == RefinementMode::Simultaneous ? 0.5 : 0.25;
  double dt = base_dt;
  for (int l = 0; l < levels; ++l, dt *= factor) dts[l] = dt;
  return dts;
}

}  // namespace

std::optional<double> fit_order(const std::vector<double>& h, const std::vector<double>& errors,
                                double exact_floor) {
  if (h.size() != errors.size()) throw StructuralError("fit_order: size mismatch");
  if (h.size() < 2) return std::nullopt;
  if (std::all_of(errors.begin(), errors.end(), [&](double e) { return std::abs(e) <= exact_floor; })) {
    return std::nullopt;
  }
  const double n = static_cast<double>(h.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(std::max(std::abs(errors[i]), 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const OrderSeries* OrderReport::find(const std::string& name) const noexcept {
  for (const auto& s : series) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<double> restrict_cells(const std::vector<double>& fine, int coarse_cells) {
  const int nf = static_cast<int>(fine.size());
  if (coarse_cells < 1 || nf % coarse_cells != 0 || nf / coarse_cells < 2) {
    throw StructuralError("restrict_cells: fine grid must refine the coarse grid by an even factor");
  }
  const int r = nf / coarse_cells;
  std::vector<double> out(coarse_cells);
  for (int k = 0; k < coarse_cells; ++k) {
    const int right = k * r + r / 2;  // fine cell just right of the coarse center
    out[k] = r % 2 == 0 ? 0.5 * (fine[right - 1] + fine[right]) : fine[right];
  }
  return out;
}

std::vector<double> restrict_nodes(const std::vector<double>& fine, int coarse_cells) {
  const int nf = static_cast<int>(fine.size()) - 1;
  if (coarse_cells < 1 || nf % coarse_cells != 0) {
    throw StructuralError("restrict_nodes: fine grid must refine the coarse grid");
  }
  const int r = nf / coarse_cells;
  std::vector<double> out(coarse_cells + 1);
  for (int i = 0; i <= coarse_cells; ++i) out[i] = fine[i * r];
  return out;
}

OrderReport refinement_study(const RefinementRequest& req) {
  if (req.levels < 3) throw StructuralError("refinement_study: need at least 3 levels");
  if (!req.data) throw StructuralError("refinement_study: no initial data");
  const auto dts = level_dts(req.base_dt, req.levels, req.mode);
  std::vector<State> finals(req.levels);
  std::vector<Problem> problems;
  OrderReport report;
  report.kind = "refinement";
  OrderSeries energy_s{"energy_drift", {}, {}}, ks_s{"ks_residual_sup", {}, {}}, spread_s{"h_spread", {}, {}};
  for (int l = 0; l < req.levels; ++l) {
    const int n = req.base_cells << l;
    const Grid grid(req.params.L, n);
    problems.push_back(make_problem(req.data(grid), req.params, req.bc));
    const auto& problem = problems.back();
    const auto traj = run_to(problem, req.scheme, dts[l], req.t_end);
    finals[l] = traj.snapshots.back().state;
    const double E0 = energy(initial_state(problem), problem);
    energy_s.errors.push_back(std::abs(energy(finals[l], problem) - E0) / E0);
    ks_s.errors.push_back(max_abs(ks_identity_residual(finals[l], problem)));
    const auto ks = ks_fields(finals[l], problem);
    spread_s.errors.push_back(ks.h_spread / (1.0 + std::abs(ks.h)));
    report.cells.push_back(n);
    report.dt.push_back(dts[l]);
    report.h.push_back(req.mode == RefinementMode::Simultaneous ? dts[l] : grid.dy());
  }

  const State& finest = finals.back();
  OrderSeries J_s{"J", {}, {}}, v_s{"v", {}, {}}, theta_s{"theta", {}, {}};
  for (int l = 0; l + 1 < req.levels; ++l) {
    const int n = report.cells[l];
    J_s.errors.push_back(sup_diff(finals[l].J, restrict_cells(finest.J, n)));
    v_s.errors.push_back(sup_diff(finals[l].v, restrict_nodes(finest.v, n)));
    theta_s.errors.push_back(sup_diff(finals[l].theta, restrict_cells(finest.theta, n)));
  }
  const std::vector<double> h_coarse(report.h.begin(), report.h.end() - 1);
  for (auto* s : {&J_s, &v_s, &theta_s}) s->order = fit_order(h_coarse, s->errors);
  for (auto* s : {&energy_s, &ks_s, &spread_s}) s->order = fit_order(report.h, s->errors);
  report.series = {J_s, v_s, theta_s, energy_s, ks_s, spread_s};
  return report;
}

ManufacturedSolution mms_neumann(double L) {
  const double k = std::numbers::pi / L;
  ManufacturedSolution ms;
  ms.name = "mms-neumann";
  ms.bc = ThetaBC::NeumannNeumann;
  ms.v = [=](double y, double t) { return std::sin(k * y) * std::sin(t); };
  ms.v_t = [=](double y, double t) { return std::sin(k * y) * std::cos(t); };
  ms.v_y = [=](double y, double t) { return k * std::cos(k * y) * std::sin(t); };
  ms.v_yy = [=](double y, double t) { return -k * k * std::sin(k * y) * std::sin(t); };
  ms.J = [=](double y, double t) { return 1.0 + k * std::cos(k * y) * (1.0 - std::cos(t)); };
  ms.J_y = [=](double y, double t) { return -k * k * std::sin(k * y) * (1.0 - std::cos(t)); };
  ms.theta = [=](double y, double t) { return 2.0 + std::cos(k * y) * std::cos(t); };
  ms.theta_t = [=](double y, double t) { return -std::cos(k * y) * std::sin(t); };
  ms.theta_y = [=](double y, double t) { return -k * std::sin(k * y) * std::cos(t); };
  ms.theta_yy = [=](double y, double t) { return -k * k * std::cos(k * y) * std::cos(t); };
  return ms;
}

ManufacturedSolution mms_dirichlet(double L) {
  const double k = std::numbers::pi / L;
  ManufacturedSolution ms = mms_neumann(L);
  ms.name = "mms-dirichlet";
  ms.bc = ThetaBC::DirichletDirichlet;
  ms.theta = [=](double y, double t) { return std::sin(k * y) * (2.0 + std::cos(t)); };
  ms.theta_t = [=](double y, double t) { return -std::sin(k * y) * std::sin(t); };
  ms.theta_y = [=](double y, double t) { return k * std::cos(k * y) * (2.0 + std::cos(t)); };
  ms.theta_yy = [=](double y, double t) { return -k * k * std::sin(k * y) * (2.0 + std::cos(t)); };
  return ms;
}

ManufacturedSolution mms_stationary(double theta_bar) {
  const Fn zero = [](double, double) { return 0.0; };
  ManufacturedSolution ms;
  ms.name = "mms-stationary";
  ms.v = ms.v_t = ms.v_y = ms.v_yy = zero;
  ms.J = [](double, double) { return 1.0; };
  ms.J_y = zero;
  ms.theta = [=](double, double) { return theta_bar; };
  ms.theta_t = ms.theta_y = ms.theta_yy = zero;
  return ms;
}

SourceTerms mms_sources(const ManufacturedSolution& ms, const PhysicalParams& p) {
  SourceTerms src;
  // rho0 v_t - mu (v_y/J)_y + (R theta/J)_y
  src.momentum = [ms, p](double y, double t) {
    const double J = ms.J(y, t), Jy = ms.J_y(y, t);
    const double strain_y = (ms.v_yy(y, t) * J - ms.v_y(y, t) * Jy) / (J * J);
    const double pi_y = p.R * (ms.theta_y(y, t) * J - ms.theta(y, t) * Jy) / (J * J);
    return ms.v_t(y, t) - p.mu * strain_y + pi_y;
  };
  // c_v rho0 theta_t + v_y pi - kappa (theta_y/J)_y - mu v_y^2/J
  src.temperature = [ms, p](double y, double t) {
    const double J = ms.J(y, t), Jy = ms.J_y(y, t);
    const double s = ms.v_y(y, t);
    const double pi = p.R * ms.theta(y, t) / J;
    const double heat = (ms.theta_yy(y, t) * J - ms.theta_y(y, t) * Jy) / (J * J);
    return p.c_v * ms.theta_t(y, t) + s * pi - p.kappa * heat - p.mu * s * s / J;
  };
  return src;
}

InitialData mms_initial_data(const ManufacturedSolution& ms, const Grid& grid) {
  const int n = grid.cells();
  InitialData data;
  data.rho0.assign(n, 1.0);
  data.theta0.resize(n);
  data.v0.resize(n + 1);
  InitialDerivatives d;
  d.rho0_d1.assign(n, 0.0);
  d.rho0_d2.assign(n, 0.0);
  d.v0_d1.resize(n);
  d.v0_d2.resize(n);
  d.theta0_d1.resize(n);
  d.theta0_d2.resize(n);
  for (int k = 0; k < n; ++k) {
    const double y = grid.center(k);
    data.theta0[k] = ms.theta(y, 0.0);
    d.v0_d1[k] = ms.v_y(y, 0.0);
    d.v0_d2[k] = ms.v_yy(y, 0.0);
    d.theta0_d1[k] = ms.theta_y(y, 0.0);
    d.theta0_d2[k] = ms.theta_yy(y, 0.0);
  }
  for (int i = 0; i <= n; ++i) data.v0[i] = ms.v(grid.node(i), 0.0);
  data.derivatives = std::move(d);
  data.rho0_boundary = std::array<double, 2>{1.0, 1.0};
  return data;
}

namespace {

void check_manufactured(const ManufacturedSolution& ms, double L, double t_end) {
  for (const Fn* f : {&ms.v, &ms.v_t, &ms.v_y, &ms.v_yy, &ms.J, &ms.J_y, &ms.theta, &ms.theta_t,
                      &ms.theta_y, &ms.theta_yy}) {
    if (!*f) throw StructuralError("mms: manufactured solution is missing a field");
  }
  constexpr double tol = 1e-12;
  for (double t : {0.0, 0.5 * t_end, t_end}) {
    if (std::abs(ms.v(0.0, t)) > tol || std::abs(ms.v(L, t)) > tol) {
      throw StructuralError("mms: manufactured velocity does not vanish at the walls");
    }
    if (std::abs(ms.J(0.5 * L, 0.0) - 1.0) > tol) throw StructuralError("mms: J must start at 1");
    const auto wall = [&](bool dirichlet, double y) {
      const double value = dirichlet ? ms.theta(y, t) : ms.theta_y(y, t);
      if (std::abs(value) > tol) {
        throw StructuralError(std::string("mms: manufactured temperature violates the ") +
                              (dirichlet ? "Dirichlet" : "Neumann") + " condition at y = " + std::to_string(y));
      }
    };
    wall(dirichlet_left(ms.bc), 0.0);
    wall(dirichlet_right(ms.bc), L);
  }
}

}  // namespace

OrderReport mms_run(const MmsRequest& req) {
  if (req.levels < 3) throw StructuralError("mms_run: need at least 3 levels");
  if (req.params.eps != 0.0) throw StructuralError("mms_run: manufactured solutions assume eps = 0");
  const double L = req.params.L;
  check_manufactured(req.solution, L, req.t_end);
  const auto dts = level_dts(req.base_dt, req.levels, req.mode);
  SchemeConfig cfg = req.scheme;
  cfg.sources = mms_sources(req.solution, req.params);
  const auto& ms = req.solution;

  OrderReport report;
  report.kind = "mms";
  OrderSeries J_s{"J", {}, {}}, v_s{"v", {}, {}}, theta_s{"theta", {}, {}}, max_s{"max", {}, {}};
  for (int l = 0; l < req.levels; ++l) {
    const int n = req.base_cells << l;
    const Grid grid(L, n);
    const auto problem = make_problem(mms_initial_data(ms, grid), req.params, ms.bc);
    const auto traj = run_to(problem, cfg, dts[l], req.t_end);
    const State& s = traj.snapshots.back().state;
    double eJ = 0.0, ev = 0.0, et = 0.0;
    for (int k = 0; k < n; ++k) {
      const double y = grid.center(k);
      eJ = std::max(eJ, std::abs(s.J[k] - ms.J(y, s.t)));
      et = std::max(et, std::abs(s.theta[k] - ms.theta(y, s.t)));
    }
    for (int i = 0; i <= n; ++i) ev = std::max(ev, std::abs(s.v[i] - ms.v(grid.node(i), s.t)));
    J_s.errors.push_back(eJ);
    v_s.errors.push_back(ev);
    theta_s.errors.push_back(et);
    max_s.errors.push_back(std::max({eJ, ev, et}));
    report.cells.push_back(n);
    report.dt.push_back(dts[l]);
    report.h.push_back(req.mode == RefinementMode::Simultaneous ? dts[l] : grid.dy());
  }
  for (auto* s : {&J_s, &v_s, &theta_s, &max_s}) s->order = fit_order(report.h, s->errors);
  report.series = {J_s, v_s, theta_s, max_s};
  return report;
}

ContinuationCaps continuation_caps(const InitialData& data, const PhysicalParams& params, const Grid& grid,
                                   ThetaBC bc) {
  const int n = grid.cells();
  const double dy = grid.dy();
  const double L = grid.length();
  const auto c = apriori_constants(data, params, grid, bc);
  const auto d = initial_derivatives(data, grid);
  const auto l2 = [dy](const std::vector<double>& f) {
    double s = 0.0;
    for (double x : f) s += x * x;
    return std::sqrt(s * dy);
  };
  const auto inf = [](const std::vector<double>& f) { return max_abs(f); };

  double v2 = 0.0, v4 = 0.0;
  for (int i = 1; i < n; ++i) {
    v2 += data.v0[i] * data.v0[i];
    v4 += data.v0[i] * data.v0[i] * data.v0[i] * data.v0[i];
  }
  const double v_l2_sq = v2 * dy;
  const double theta_l1 = integrate(data.theta0, grid);

  ContinuationCaps caps;
  caps.E0_lower = c.E0;
  caps.E0_upper = c.E0 + v_l2_sq + params.c_v * (c.rho_l1 + theta_l1 + L);
  caps.m1_lower = c.m1;
  caps.m1_upper = std::exp((2.0 / params.mu) * std::sqrt(2.0 * (c.rho_l1 + L) * caps.E0_upper));
  caps.N1_upper = caps.E0_upper / params.c_v + (c.rho_bar + 1.0) + 1.0 / c.rho_bar + L + 1.0 / L +
                  1.0 / c.omega0 + c.rho_d1_inf;

  // sqrt(rho0 + eps) <= sqrt(rho0) + 1 termwise, node masses for the v0 terms.
  const auto mass = node_masses(data.rho0);
  double mv4 = 0.0, mv2 = 0.0, rt2 = 0.0, r1 = 0.0;
  for (int i = 1; i < n; ++i) {
    const double w = data.v0[i] * data.v0[i];
    mv4 += mass[i] * w * w;
    mv2 += mass[i] * w;
  }
  for (int k = 0; k < n; ++k) {
    rt2 += data.rho0[k] * data.theta0[k] * data.theta0[k];
    r1 += data.rho0[k];
  }
  const double v_sq_l2 = std::sqrt(v4 * dy);
  const double dv_l2 = l2(d.v0_d1);
  const double theta_l2 = l2(data.theta0);
  caps.N2_upper = std::sqrt(mv4 * dy) + v_sq_l2 + std::sqrt(rt2 * dy) + theta_l2 + std::sqrt(r1 * dy) +
                  std::sqrt(L) + dv_l2;
  caps.N2_alt_upper = std::sqrt(mv4 * dy) + v_sq_l2 + std::sqrt(mv2 * dy) + std::sqrt(v_l2_sq) + dv_l2;
  caps.N3_upper = l2(d.rho0_d2) + l2(c.g0) + params.R * (l2(d.rho0_d1) + l2(d.theta0_d1)) + l2(c.h0) +
                  params.R * dv_l2 * (inf(data.rho0) + inf(data.theta0) + 1.0);
  return caps;
}

bool ContinuationReport::complete() const noexcept {
  return std::all_of(entries.begin(), entries.end(), [](const ContinuationEntry& e) { return e.failure.empty(); });
}

bool ContinuationReport::differences_decreasing() const noexcept {
  if (!complete()) return false;
  for (const auto* d : {&diff_J, &diff_v, &diff_theta}) {
    for (std::size_t i = 1; i < d->size(); ++i) {
      if (!((*d)[i] < (*d)[i - 1])) return false;
    }
  }
  return true;
}

bool ContinuationReport::lower_bounds_hold() const noexcept {
  return complete() && std::all_of(entries.begin(), entries.end(), [](const ContinuationEntry& e) {
           return e.min_J >= e.J_lower_bound;
         });
}

bool ContinuationReport::caps_hold() const noexcept {
  for (const auto& e : entries) {
    const auto& c = e.constants;
    if (c.E0 < caps.E0_lower || c.E0 > caps.E0_upper || c.E0 > eps_one.E0) return false;
    if (c.m1 < caps.m1_lower || c.m1 > caps.m1_upper || c.m1 > eps_one.m1) return false;
    if (c.N1 > caps.N1_upper || c.N2 > caps.N2_upper || c.N2_alt > caps.N2_alt_upper) return false;
    if (c.N3 > caps.N3_upper) return false;
  }
  return true;
}

ContinuationReport eps_continuation(const ContinuationRequest& req) {
  const auto& eps = req.eps_list;
  if (eps.empty()) throw StructuralError("eps_continuation: eps_list is empty");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0 && eps[i] < 1.0)) throw StructuralError("eps_continuation: eps must lie in (0, 1)");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw StructuralError("eps_continuation: eps_list must be decreasing");
  }
  PhysicalParams base = req.params;
  base.eps = 0.0;
  base.validate();
  const Grid grid(base.L, req.data.cells());

  ContinuationReport report;
  report.t_end = req.t_end;
  report.caps = continuation_caps(req.data, base, grid, req.bc);
  report.eps_one = apriori_constants(regularized(req.data, 1.0), base, grid, req.bc);
  report.entries.resize(eps.size());

  const int count = static_cast<int>(eps.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    auto& entry = report.entries[i];
    entry.eps = eps[i];
    try {
      PhysicalParams params = base;
      params.eps = eps[i];
      const auto problem = make_problem(req.data, params, req.bc);
      entry.constants = apriori_constants(problem.data, params, grid, req.bc);
      entry.J_lower_bound = 1.0 / (entry.constants.m1 * entry.constants.f1(req.t_end));
      RunRequest request;
      request.t_end = req.t_end;
      auto traj = run(problem, req.scheme, request);
      entry.min_J = traj.stats.min_J;
      entry.final_state = std::move(traj.snapshots.back().state);
    } catch (const std::exception& e) {
      entry.failure = e.what();
    }
  }

  for (std::size_t i = 1; i < report.entries.size(); ++i) {
    const auto& a = report.entries[i - 1].final_state;
    const auto& b = report.entries[i].final_state;
    if (!a || !b) break;
    report.diff_J.push_back(sup_diff(a->J, b->J));
    report.diff_v.push_back(sup_diff(a->v, b->v));
    report.diff_theta.push_back(sup_diff(a->theta, b->theta));
  }
  return report;
}

}  // namespace fmns
