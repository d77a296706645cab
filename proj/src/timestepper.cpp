#include "fmns/timestepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fmns/error.hpp"
#include "fmns/ks.hpp"
#include "fmns/tridiagonal.hpp"

namespace fmns {

namespace {

#ifdef FMNS_FAULT_INJECTION
// Deliberately wrong Jacobian update used only by the fault-injection build:
// J grows like exp(rate t) on top of the physical update.
constexpr double kFaultJacobianGrowth = 2.0;
#endif

double min_of(const std::vector<double>& f) { return *std::min_element(f.begin(), f.end()); }

std::vector<double> ks_integrand(const State& s, const Problem& problem) {
  const auto ks = ks_fields(s, problem);
  std::vector<double> out(s.theta.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = s.theta[k] * ks.H * ks.B[k];
  return out;
}

}  // namespace

void SchemeConfig::validate() const {
  if (!(dt_min > 0.0) || !(dt_min <= dt_initial) || !(dt_initial <= dt_max) || !std::isfinite(dt_max)) {
    throw ConfigError("time", "need 0 < dt_min <= dt_initial <= dt_max");
  }
  if (!(safety > 0.0)) throw ConfigError("time.safety", "must be positive");
  if (!(J_floor > 0.0)) throw ConfigError("time.J_floor", "must be positive");
  if (!(theta_negative_tolerance >= 0.0)) {
    throw ConfigError("time.theta_negative_tolerance", "must be nonnegative");
  }
  if (max_consecutive_rejections < 1) throw ConfigError("time.max_consecutive_rejections", "must be >= 1");
}

State initial_state(const Problem& problem) {
  const int n = problem.grid.cells();
  State s;
  s.t = 0.0;
  s.J.assign(n, 1.0);
  s.v = problem.data.v0;
  s.theta = problem.data.theta0;
  s.acc_pi.assign(n, 0.0);
  s.acc_rho_theta.assign(n, 0.0);
  s.acc_ks.assign(n, 0.0);
  s.acc_eta.assign(n + 1, 0.0);
  return s;
}

StepResult step(const State& state, double dt, const Problem& problem, const SchemeConfig& cfg) {
  const Grid& grid = problem.grid;
  const auto& p = problem.params;
  const auto& rho = problem.data.rho0;
  const int n = grid.cells();
  const double dy = grid.dy();
  if (!(dt > 0.0)) throw StructuralError("step: dt must be positive");
  if (static_cast<int>(state.J.size()) != n || static_cast<int>(state.v.size()) != n + 1 ||
      static_cast<int>(state.theta.size()) != n) {
    throw StructuralError("step: state does not match the grid");
  }

  const bool euler = cfg.scheme == Scheme::ImexEuler;
  const double implicit = euler ? 1.0 : 0.5;
  const double t_new = state.t + dt;
  const double t_source = euler ? t_new : state.t + 0.5 * dt;

  std::vector<double> pi_old(n);
  for (int k = 0; k < n; ++k) {
    if (!(state.J[k] > 0.0)) throw DegenerateJacobianError("step: J must be positive");
    pi_old[k] = p.R * rho[k] * state.theta[k] / state.J[k];
  }

  // Crank-Nicolson evaluates the explicit terms at midpoint values taken from
  // an IMEX-Euler predictor; IMEX-Euler uses the old state directly.
  std::vector<double> J_mid = state.J, theta_mid = state.theta;
  if (!euler) {
    SchemeConfig predictor_cfg = cfg;
    predictor_cfg.scheme = Scheme::ImexEuler;
    auto predicted = step(state, dt, problem, predictor_cfg);
    if (const auto* rejected = std::get_if<StepRejected>(&predicted)) return *rejected;
    const auto& pred = std::get<State>(predicted);
    for (int k = 0; k < n; ++k) {
      J_mid[k] = 0.5 * (state.J[k] + pred.J[k]);
      theta_mid[k] = 0.5 * (state.theta[k] + pred.theta[k]);
    }
  }
  std::vector<double> inv_J(n), pi_mid(n);
  for (int k = 0; k < n; ++k) {
    inv_J[k] = 1.0 / J_mid[k];
    pi_mid[k] = p.R * rho[k] * theta_mid[k] * inv_J[k];
  }

  // Momentum, solved for the increment on interior nodes.
  std::vector<double> v_new = state.v;
  {
    const auto diffusion = node_div_flux(inv_J, state.v, grid);
    auto m = node_div_flux_matrix(inv_J, grid);
    std::vector<double> rhs(n - 1);
    for (int j = 0; j < n - 1; ++j) {
      const int i = j + 1;
      double force = p.mu * diffusion[j] - (pi_mid[i] - pi_mid[i - 1]) / dy;
      if (cfg.sources.momentum) force += cfg.sources.momentum(grid.node(i), t_source);
      rhs[j] = dt * force;
      const double scale = dt * implicit * p.mu;
      m.lower[j] *= -scale;
      m.upper[j] *= -scale;
      m.diag[j] = problem.node_mass[i] - scale * m.diag[j];
    }
    const auto dv = solve_tridiagonal(m.lower, m.diag, m.upper, rhs);
    for (int j = 0; j < n - 1; ++j) v_new[j + 1] = state.v[j + 1] + dv[j];
  }

  // Geometry: J and the flow map receive the same velocity.
  std::vector<double> v_geom = v_new;
  if (!euler) {
    for (int i = 0; i <= n; ++i) v_geom[i] = 0.5 * (state.v[i] + v_new[i]);
  }
  const auto strain = cell_gradient(v_geom, grid);
  std::vector<double> J_new(n);
  for (int k = 0; k < n; ++k) {
    J_new[k] = state.J[k] + dt * strain[k];
#ifdef FMNS_FAULT_INJECTION
    J_new[k] *= std::exp(kFaultJacobianGrowth * dt);
#endif
  }
  const double J_min = min_of(J_new);
  if (!(J_min > cfg.J_floor)) return StepRejected{StepRejected::Reason::JacobianFloor, J_min};

  // Temperature, solved for the increment on cells.
  std::vector<double> theta_new(n);
  {
    std::vector<double> inv_J_new(n);
    for (int k = 0; k < n; ++k) inv_J_new[k] = euler ? 1.0 / J_new[k] : 2.0 / (state.J[k] + J_new[k]);
    const auto face = face_coefficients(inv_J_new, grid);
    const auto diffusion = cell_div_flux(face, state.theta, grid, problem.bc);
    auto m = cell_div_flux_matrix(face, grid, problem.bc);
    std::vector<double> rhs(n);
    const double scale = dt * implicit * p.kappa;
    for (int k = 0; k < n; ++k) {
      const double work = strain[k] * p.R * rho[k] * theta_mid[k] * inv_J_new[k];
      const double heating = p.mu * strain[k] * strain[k] * inv_J_new[k];
      double force = p.kappa * diffusion[k] - work + heating;
      if (cfg.sources.temperature) force += cfg.sources.temperature(grid.center(k), t_source);
      rhs[k] = dt * force;
      m.lower[k] *= -scale;
      m.upper[k] *= -scale;
      m.diag[k] = p.c_v * rho[k] - scale * m.diag[k];
    }
    const auto dtheta = solve_tridiagonal(m.lower, m.diag, m.upper, rhs);
    for (int k = 0; k < n; ++k) theta_new[k] = state.theta[k] + dtheta[k];
  }
  const double theta_min = min_of(theta_new);
  if (theta_min < -cfg.theta_negative_tolerance) {
    return StepRejected{StepRejected::Reason::NegativeTemperature, theta_min};
  }

  State next;
  next.t = t_new;
  next.J = std::move(J_new);
  next.v = std::move(v_new);
  next.theta = std::move(theta_new);
  next.acc_pi = state.acc_pi;
  next.acc_rho_theta = state.acc_rho_theta;
  next.acc_eta = state.acc_eta;
  for (int k = 0; k < n; ++k) {
    const double pi_new = p.R * rho[k] * next.theta[k] / next.J[k];
    next.acc_pi[k] += 0.5 * dt * (pi_old[k] + pi_new);
    next.acc_rho_theta[k] += 0.5 * dt * rho[k] * (state.theta[k] + next.theta[k]);
  }
  for (int i = 0; i <= n; ++i) next.acc_eta[i] += dt * v_geom[i];

  // The KS integrand needs H and B of the new state, which depend on acc_pi.
  const auto before = ks_integrand(state, problem);
  next.acc_ks = state.acc_ks;
  const auto after = ks_integrand(next, problem);
  for (int k = 0; k < n; ++k) next.acc_ks[k] += 0.5 * dt * (before[k] + after[k]);
  return next;
}

double adaptive_dt(const State& state, const Problem& problem, const SchemeConfig& cfg) {
  const auto& p = problem.params;
  const auto strain = cell_gradient(state.v, problem.grid);
  const double J_min = min_of(state.J);
  if (!(J_min > 0.0)) throw DegenerateJacobianError("adaptive_dt: J must be positive");
  const double theta_max = std::max(0.0, *std::max_element(state.theta.begin(), state.theta.end()));
  const double c0 = p.R * problem.rho_max * theta_max / (p.mu * J_min);
  double candidate = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < strain.size(); ++k) {
    const double rate = std::abs(strain[k]) + c0;
    if (rate > 0.0) candidate = std::min(candidate, state.J[k] / rate);
  }
  if (!std::isfinite(candidate)) return cfg.dt_max;
  return std::clamp(cfg.safety * candidate, cfg.dt_min, cfg.dt_max);
}

double halve_after_rejection(double dt, const SchemeConfig& cfg) {
  const double half = 0.5 * dt;
  if (half < cfg.dt_min) {
    throw RunAborted("time step fell below dt_min (" + std::to_string(cfg.dt_min) + ") after rejection");
  }
  return half;
}

double mass_error(const State& state, const Problem& problem) {
  return integrate(state.J, problem.grid) - problem.grid.length();
}

double flow_map_defect(const State& state, const Problem& problem) {
  const auto grad = cell_gradient(state.acc_eta, problem.grid);
  double worst = 0.0;
  for (std::size_t k = 0; k < grad.size(); ++k) {
    worst = std::max(worst, std::abs(1.0 + grad[k] - state.J[k]));
  }
  return worst;
}

double energy(const State& state, const Problem& problem) {
  return total_energy(problem.data.rho0, state.v, state.theta, problem.params.c_v, problem.grid);
}

Trajectory run(const Problem& problem, const SchemeConfig& cfg, const RunRequest& request) {
  cfg.validate();
  if (!(request.t_end > 0.0) || !std::isfinite(request.t_end)) {
    throw StructuralError("run: t_end must be positive");
  }
  std::vector<double> targets = request.snapshot_times;
  for (double t : targets) {
    if (!(t >= 0.0) || t > request.t_end) {
      throw StructuralError("run: snapshot time " + std::to_string(t) + " outside [0, t_end]");
    }
  }
  targets.push_back(request.t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  Trajectory traj;
  State state = initial_state(problem);
  std::optional<State> previous;
  const double E0 = energy(state, problem);
  const double L = problem.grid.length();
  traj.stats.min_J = min_of(state.J);
  traj.stats.min_theta = min_of(state.theta);

  bool first = true;
  for (double target : targets) {
    while (state.t < target) {
      double dt = cfg.dt_initial;
      if (cfg.adaptive && !first) dt = adaptive_dt(state, problem, cfg);
      int rejections = 0;
      while (true) {
        const double remaining = target - state.t;
        const bool landing = remaining <= dt * (1.0 + 1e-9);
        const double h = landing ? remaining : dt;
        auto result = step(state, h, problem, cfg);
        if (auto* rejected = std::get_if<StepRejected>(&result)) {
          (void)rejected;
          ++traj.stats.rejected;
          if (++rejections > cfg.max_consecutive_rejections) {
            throw RunAborted("too many consecutive step rejections at t = " + std::to_string(state.t));
          }
          dt = halve_after_rejection(h, cfg);
          continue;
        }
        State next = std::move(std::get<State>(result));
        if (landing) next.t = target;
        if (request.observer) request.observer(state, next);
        previous = std::move(state);
        state = std::move(next);
        break;
      }
      first = false;
      auto& st = traj.stats;
      ++st.accepted;
      st.min_J = std::min(st.min_J, min_of(state.J));
      st.min_theta = std::min(st.min_theta, min_of(state.theta));
      st.max_mass_error = std::max(st.max_mass_error, std::abs(mass_error(state, problem)) / L);
      st.max_flow_map_defect = std::max(st.max_flow_map_defect, flow_map_defect(state, problem));
      st.max_energy_error = std::max(st.max_energy_error, std::abs(energy(state, problem) - E0));
    }
    traj.snapshots.push_back(Snapshot{state, previous});
  }
  return traj;
}

}  // namespace fmns
