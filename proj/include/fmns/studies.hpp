#pragma once

// Experiment drivers: eps-continuation toward vacuum, refinement order
// measurement, and manufactured-solution verification.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fmns/audit.hpp"
#include "fmns/profiles.hpp"
#include "fmns/timestepper.hpp"

namespace fmns {

/// Least-squares slope of log(error) against log(resolution). nullopt when
/// every error is at round-off ("exact") or there are fewer than two points.
std::optional<double> fit_order(const std::vector<double>& h, const std::vector<double>& errors,
                                double exact_floor = 1e-13);

struct OrderSeries {
  std::string name;
  std::vector<double> errors;
  std::optional<double> order;  ///< nullopt means exact (errors at round-off)
};

struct OrderReport {
  std::string kind;             ///< "refinement" or "mms"
  std::vector<int> cells;       ///< N per level
  std::vector<double> dt;       ///< step per level
  std::vector<double> h;        ///< resolution used in the fits
  std::vector<OrderSeries> series;

  const OrderSeries* find(const std::string& name) const noexcept;
};

enum class RefinementMode {
  Simultaneous,  ///< (dy, dt) -> (dy/2, dt/2)
  Parabolic,     ///< (dy, dt) -> (dy/2, dt/4)
};

struct RefinementRequest {
  DataFactory data;
  PhysicalParams params;
  SchemeConfig scheme;  ///< dt_initial is overridden per level
  ThetaBC bc = ThetaBC::NeumannNeumann;
  double t_end = 0.1;
  int base_cells = 25;
  double base_dt = 1e-2;
  int levels = 3;
  RefinementMode mode = RefinementMode::Simultaneous;
};

/// Field errors (J, v, theta) are measured against the finest level after
/// restriction; energy drift, KS residual and h spread are per-level values.
/// Resolution h is dt for Simultaneous and dy for Parabolic.
OrderReport refinement_study(const RefinementRequest& req);

/// Coarse-grid view of a fine cell field: the fine value at each coarse
/// center, interpolated between the two fine cells sharing that point.
std::vector<double> restrict_cells(const std::vector<double>& fine, int coarse_cells);
/// Injection of fine node values onto coarse nodes.
std::vector<double> restrict_nodes(const std::vector<double>& fine, int coarse_cells);

/// A closed-form solution of the forced system with rho0 = 1. J is the exact
/// time integral of dv/dy, so J(y, 0) = 1.
struct ManufacturedSolution {
  std::string name;
  ThetaBC bc = ThetaBC::NeumannNeumann;
  std::function<double(double, double)> v, v_t, v_y, v_yy;
  std::function<double(double, double)> J, J_y;
  std::function<double(double, double)> theta, theta_t, theta_y, theta_yy;
};

/// v = sin(ky) sin t, theta = 2 + cos(ky) cos t, k = pi/L. Needs t < arccos(1 - 1/k).
ManufacturedSolution mms_neumann(double L);
/// v = sin(ky) sin t, theta = sin(ky)(2 + cos t): vanishes at both walls.
ManufacturedSolution mms_dirichlet(double L);
/// v = 0, theta = theta_bar: every source vanishes.
ManufacturedSolution mms_stationary(double theta_bar);

/// Sources that make the manufactured fields an exact solution.
SourceTerms mms_sources(const ManufacturedSolution& ms, const PhysicalParams& params);

/// Samples the manufactured fields at t = 0 onto the grid.
InitialData mms_initial_data(const ManufacturedSolution& ms, const Grid& grid);

struct MmsRequest {
  ManufacturedSolution solution;
  PhysicalParams params;
  SchemeConfig scheme;
  double t_end = 0.5;
  int base_cells = 16;
  double base_dt = 1e-2;
  int levels = 3;
  RefinementMode mode = RefinementMode::Simultaneous;
};

/// Errors against the exact fields at t_end. Throws StructuralError when the
/// manufactured fields violate the velocity or temperature boundary conditions.
OrderReport mms_run(const MmsRequest& req);

struct ContinuationCaps {
  double E0_lower = 0.0;  ///< E0 of the unshifted data
  double E0_upper = 0.0;  ///< E0 + |v0|_2^2 + c_v(|rho0|_1 + |theta0|_1 + L)
  double m1_lower = 1.0;  ///< m1 of the unshifted data
  double m1_upper = 1.0;  ///< exp{(2/mu) sqrt(2 (|rho0|_1 + L) E0_upper)}
  double N1_upper = 0.0;
  double N2_upper = 0.0;
  double N2_alt_upper = 0.0;
  double N3_upper = 0.0;
};

/// Uniform-in-eps bounds built from the unshifted data.
ContinuationCaps continuation_caps(const InitialData& data, const PhysicalParams& params, const Grid& grid,
                                   ThetaBC bc);

struct ContinuationEntry {
  double eps = 0.0;
  AprioriConstants constants;
  std::optional<State> final_state;
  double min_J = 0.0;
  double J_lower_bound = 0.0;  ///< (m1 f1(t_end))^-1 of the shifted data
  std::string failure;          ///< empty when the run completed
};

struct ContinuationReport {
  double t_end = 0.0;
  std::vector<ContinuationEntry> entries;
  ContinuationCaps caps;
  AprioriConstants eps_one;  ///< constants at eps = 1, the second set of caps
  std::vector<double> diff_J, diff_v, diff_theta;  ///< successive sup differences

  bool complete() const noexcept;
  bool differences_decreasing() const noexcept;
  bool lower_bounds_hold() const noexcept;
  /// Every per-eps constant within both the closed-form caps and the eps = 1 values
  /// where the latter are monotone in eps (E0, m1).
  bool caps_hold() const noexcept;
};

struct ContinuationRequest {
  InitialData data;  ///< unshifted, may contain vacuum
  PhysicalParams params;  ///< params.eps is ignored
  SchemeConfig scheme;
  ThetaBC bc = ThetaBC::NeumannNeumann;
  double t_end = 0.5;
  std::vector<double> eps_list{1e-1, 1e-2, 1e-3, 1e-4};
};

/// One run per eps on a common grid, in parallel; the report is assembled in
/// eps order. Throws StructuralError unless eps_list is strictly decreasing in (0, 1).
ContinuationReport eps_continuation(const ContinuationRequest& req);

}  // namespace fmns
