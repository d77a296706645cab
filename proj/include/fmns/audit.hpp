#pragma once

// Grades the exact identities and explicit-constant bounds along a trajectory.
// Every graded item stores its raw value next to the threshold that judged it;
// generic-constant estimates are only logged as diagnostics.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fmns/ks.hpp"
#include "fmns/model.hpp"
#include "fmns/timestepper.hpp"

namespace fmns {

/// All thresholds in one place. Defaults are documented in the README.
struct AuditConfig {
  double mass_rel_tol = 1e-12;
  double energy_rel_tol = 5e-2;
  double ks_rel_tol = 1e-2;       ///< relative to max(1, sup J H B)
  double flow_map_tol = 1e-10;
  double bound_abs_tol = 1e-12;   ///< slack for the B bounds
  double h_rel_tol = 1e-9;        ///< slack for the H bounds, times f1(t)
  double margin_tol = 0.0;        ///< slack for J bounds and embeddings
  double boundary_flux_constant = 100.0;  ///< C in |G_1 - G_0| <= C (dy/L)^2 |G|_inf
  double delta_mask_fraction = 1e-2;      ///< G-equation mask: rho0 + eps >= fraction * rho_bar

  void validate() const;
};

enum class Comparison { AbsAtMost, AtMost, AtLeast };

struct GradedItem {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Comparison comparison = Comparison::AbsAtMost;
  bool pass = true;
};

GradedItem grade(std::string name, double value, double threshold, Comparison cmp);

struct JBoundMargins {
  double lower = 0.0;  ///< min J - (m1 f1)^-1
  double upper = 0.0;  ///< min_y [m1^2 + (R/mu) m1^3 f1 acc_rho_theta - J]
};

struct EmbeddingMargins {
  double rho2_theta = 0.0;  ///< RHS - LHS of the bound on |rho0^2 theta|_inf^2
  double theta_inf = 0.0;   ///< RHS - LHS of the bound on |theta|_inf
};

struct FluxReport {
  double node_residual_sup = 0.0;  ///< sup |dG - m dv/dt| over interior nodes
  double boundary_left = 0.0;      ///< G_1 - G_0
  double boundary_right = 0.0;     ///< G_{N-1} - G_{N-2}
  double g_equation_residual_sup = 0.0;   ///< masked residual of the G evolution equation
  double g_equation_residual_alt_sup = 0.0;  ///< same, with coefficients (R/c_v - 1) and R/c_v on the right
  double delta_mask = 0.0;
  int masked_cells = 0;            ///< cells excluded by the mask
};

/// G = mu (dv/dy)/J - pi on cells.
std::vector<double> effective_flux_field(const State& state, const Problem& problem);

/// [1 + (R/mu) rho0 acc_ks] - J H B on cells.
std::vector<double> ks_identity_residual(const State& state, const Problem& problem);

JBoundMargins j_bounds_check(const State& state, const AprioriConstants& c, const Problem& problem);
EmbeddingMargins embedding_check(const State& state, const AprioriConstants& c, const Problem& problem);

/// Throws StructuralError when the two states share the same time.
FluxReport flux_checks(const State& state, const State& previous, const Problem& problem,
                       const AuditConfig& cfg = {});

/// (integrate(J) - L, E(t) - E0).
std::pair<double, double> conservation_check(const State& state, const Problem& problem,
                                             const AprioriConstants& c);

struct AuditRecord {
  double t = 0.0;
  std::vector<GradedItem> items;
  std::vector<std::pair<std::string, double>> diagnostics;

  bool passed() const noexcept;
  const GradedItem* item(const std::string& name) const noexcept;
  std::optional<double> diagnostic(const std::string& name) const noexcept;
};

/// Forced (manufactured-solution) runs satisfy neither the energy identity nor
/// the a-priori bounds; only the kinematic identities (mass, flow map) are graded.
enum class AuditScope { Full, Kinematic };

struct AuditReport {
  AuditConfig config;
  AuditScope scope = AuditScope::Full;
  AprioriConstants constants;
  double delta_mask = 0.0;
  std::vector<AuditRecord> records;

  bool passed() const noexcept;
  /// Names of failing items, deduplicated, in first-failure order.
  std::vector<std::string> failures() const;
};

/// Audits one snapshot. Pure: never mutates the state.
AuditRecord audit_snapshot(const Snapshot& snap, const Problem& problem, const AprioriConstants& c,
                           const AuditConfig& cfg, AuditScope scope = AuditScope::Full);

/// Constants are computed from the eps-shifted data actually solved.
AuditReport audit_trajectory(const Trajectory& traj, const Problem& problem, const AuditConfig& cfg,
                             AuditScope scope = AuditScope::Full);

}  // namespace fmns
