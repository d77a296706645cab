#pragma once

// First-order IMEX time stepping of
//   dJ/dt = dv/dy,
//   rho0 dv/dt = mu d/dy(dv/dy / J) - d(pi)/dy,
//   c_v rho0 dtheta/dt = kappa d/dy(dtheta/dy / J) - (dv/dy) pi + mu (dv/dy)^2 / J,
// on the staggered grid, with implicit tridiagonal diffusion solves.

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "fmns/model.hpp"

namespace fmns {

struct State {
  double t = 0.0;
  std::vector<double> J;              ///< cells
  std::vector<double> v;              ///< nodes
  std::vector<double> theta;          ///< cells
  std::vector<double> acc_pi;         ///< cells, int_0^t pi
  std::vector<double> acc_rho_theta;  ///< cells, int_0^t rho0 theta
  std::vector<double> acc_ks;         ///< cells, int_0^t theta H B
  std::vector<double> acc_eta;        ///< nodes, int_0^t v (flow-map displacement)
};

/// (J, v, theta) = (1, v0, theta0) with zero accumulators.
State initial_state(const Problem& problem);

/// ImexCrankNicolson: trapezoidal diffusion with explicit terms at midpoint
/// values from an IMEX-Euler predictor (second order in time).
enum class Scheme { ImexEuler, ImexCrankNicolson };

/// Manufactured-solution forcing added to the momentum and temperature
/// equations, evaluated at (y, t). Empty functions mean no forcing.
struct SourceTerms {
  std::function<double(double, double)> momentum;
  std::function<double(double, double)> temperature;
};

struct SchemeConfig {
  double dt_initial = 1e-3;
  double dt_min = 1e-9;
  double dt_max = 1e-2;
  bool adaptive = false;  ///< fixed dt_initial when false
  double safety = 0.5;
  double J_floor = 1e-10;
  double theta_negative_tolerance = 1e-10;
  int max_consecutive_rejections = 60;
  Scheme scheme = Scheme::ImexEuler;
  SourceTerms sources;

  void validate() const;
};

struct StepRejected {
  enum class Reason { JacobianFloor, NegativeTemperature };
  Reason reason;
  double value;  ///< the offending min J or min theta
};

using StepResult = std::variant<State, StepRejected>;

/// One step: implicit momentum, local J update, implicit temperature, then the
/// trapezoid-in-time accumulator updates. Throws NumericalError if a
/// tridiagonal solve breaks down.
StepResult step(const State& state, double dt, const Problem& problem, const SchemeConfig& cfg);

/// clamp(safety * min_k J_k/(|dv/dy|_k + c0), dt_min, dt_max),
/// c0 = R rho_max max(theta) / (mu min J).
double adaptive_dt(const State& state, const Problem& problem, const SchemeConfig& cfg);

/// dt/2; throws RunAborted when that drops below cfg.dt_min.
double halve_after_rejection(double dt, const SchemeConfig& cfg);

struct Snapshot {
  State state;
  std::optional<State> previous;  ///< accepted state one step earlier, if any
};

struct RunStats {
  long accepted = 0;
  long rejected = 0;
  double min_J = 1.0;
  double min_theta = 0.0;
  double max_mass_error = 0.0;       ///< max |int J - L| / L over accepted steps
  double max_flow_map_defect = 0.0;  ///< max |1 + d(acc_eta)/dy - J|
  double max_energy_error = 0.0;     ///< max |E(t) - E0|
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  RunStats stats;
};

using StepObserver = std::function<void(const State& before, const State& after)>;

struct RunRequest {
  double t_end = 0.0;
  std::vector<double> snapshot_times;  ///< within [0, t_end]; t_end is always added
  StepObserver observer;
};

/// Integrates to t_end. Snapshots are hit exactly by shortening the step that
/// reaches them; no interpolation in time.
Trajectory run(const Problem& problem, const SchemeConfig& cfg, const RunRequest& request);

double mass_error(const State& state, const Problem& problem);
double flow_map_defect(const State& state, const Problem& problem);
double energy(const State& state, const Problem& problem);

}  // namespace fmns
