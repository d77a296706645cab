#pragma once

// Closed-form physics of the Lagrangian system: parameters, initial data and
// its hypotheses, the pointwise constitutive formulas, and every a-priori
// constant that is explicitly computable from the data.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fmns/grid.hpp"

namespace fmns {

struct PhysicalParams {
  double mu = 1.0;     ///< viscosity
  double kappa = 1.0;  ///< heat conductivity
  double R = 1.0;      ///< gas constant
  double c_v = 1.0;    ///< specific heat at constant volume
  double L = 1.0;      ///< domain length
  double eps = 0.0;    ///< vacuum regularization offset added to rho0 and theta0

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

/// Optional analytic derivative samples, all at cell centers.
struct InitialDerivatives {
  std::vector<double> rho0_d1, rho0_d2;
  std::vector<double> v0_d1, v0_d2;
  std::vector<double> theta0_d1, theta0_d2;
};

struct InitialData {
  std::vector<double> rho0;    ///< cells, >= 0
  std::vector<double> v0;      ///< nodes, zero at both ends
  std::vector<double> theta0;  ///< cells, >= 0
  std::optional<InitialDerivatives> derivatives;
  /// Density at y = 0 and y = L when known (used to detect vacuum at the walls).
  std::optional<std::array<double, 2>> rho0_boundary;

  int cells() const noexcept { return static_cast<int>(rho0.size()); }
};

/// Derivatives of the initial data on cells, analytic when supplied, otherwise
/// second-order finite differences (which leaves O(dy^2) error in g0, h0, N3).
InitialDerivatives initial_derivatives(const InitialData& data, const Grid& grid);

enum class Violation {
  NegativeDensity,
  NegativeTemperature,
  EndpointVelocity,
  EndpointTemperatureSlope,
  EndpointTemperatureValue,
  VacuumCompatibility,
};

std::string_view to_string(Violation v) noexcept;

struct ValidationIssue {
  Violation kind;
  int index;  ///< cell or node index, -1 when not localized
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::vector<double> g0;  ///< cells; 0 where rho0 = 0
  std::vector<double> h0;  ///< cells; 0 where rho0 = 0
  std::vector<int> flagged_cells;  ///< quotient evaluated at rho0 = 0 with nonzero numerator

  bool ok() const noexcept { return issues.empty(); }
  /// True when every issue is a vacuum compatibility flag (allowed with eps > 0).
  bool only_vacuum_flags() const noexcept;
  bool has(Violation kind) const noexcept;
};

/// Checks the hypotheses on the initial data and computes the compatibility
/// functions g0 = (mu v0'' - R (rho0 theta0)')/sqrt(rho0) and
/// h0 = (kappa theta0'' + mu (v0')^2 - R v0' rho0 theta0)/sqrt(rho0).
/// Throws StructuralError for inconsistent lengths or non-finite samples.
ValidationReport validate_initial_data(const InitialData& data, const PhysicalParams& params,
                                       ThetaBC bc);

/// pi = R rho0 theta / J.
double pressure(double rho0, double theta, double J, double R);
/// G = mu (dv/dy)/J - pi.
double effective_flux(double dv_dy, double J, double pi, double mu);
/// v^2/2 + c_v theta.
double specific_energy(double v, double theta, double c_v) noexcept;

/// Shifted copy (rho0 + eps, theta0 + eps).
InitialData regularized(const InitialData& data, double eps);

/// Node masses (rho_{i-1} + rho_i)/2 at interior nodes; the end nodes copy the
/// adjacent cell (they always multiply v = 0).
std::vector<double> node_masses(std::span<const double> rho_cells);

/// Discrete total energy: dy sum_i m_i v_i^2/2 + dy sum_k c_v rho_k theta_k.
double total_energy(std::span<const double> rho_cells, std::span<const double> v,
                    std::span<const double> theta, double c_v, const Grid& grid);

struct AprioriConstants {
  double E0 = 0.0;
  double rho_bar = 0.0;   ///< max rho0
  double rho_l1 = 0.0;    ///< ||rho0||_1
  double omega0 = 0.0;    ///< |{rho0 >= rho_bar/2}|
  double m1 = 1.0;
  double m_lower = 1.0;   ///< 1/m1
  double f1_rate = 0.0;   ///< R m1^2 E0 / (mu c_v L)
  double rho_d1_inf = 0.0;
  double N1 = 0.0;
  double N2 = 0.0;        ///< ||sqrt(rho0) v0^2|| + ||sqrt(rho0) theta0|| + ||v0'||
  double N2_alt = 0.0;    ///< ||sqrt(rho0) v0^2|| + ||sqrt(rho0) v0|| + ||v0'||
  double N3 = 0.0;        ///< ||rho0''|| + ||g0|| + ||h0||
  std::vector<double> g0;
  std::vector<double> h0;

  /// m1 exp{R m1^2 E0 t/(mu c_v L)}.
  double f1(double t) const;
};

/// Throws StructuralError when rho0 vanishes identically.
AprioriConstants apriori_constants(const InitialData& data, const PhysicalParams& params,
                                   const Grid& grid, ThetaBC bc = ThetaBC::NeumannNeumann);

/// Regularized data bundled with everything the stepper reads repeatedly.
struct Problem {
  Grid grid;
  PhysicalParams params;
  ThetaBC bc;
  InitialData data;               ///< already shifted by params.eps
  std::vector<double> node_mass;  ///< node_masses(data.rho0)
  double rho_max;
};

/// Applies the eps shift and checks that the effective density is positive.
Problem make_problem(const InitialData& data, const PhysicalParams& params, ThetaBC bc);

}  // namespace fmns
