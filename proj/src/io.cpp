#include "fmns/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fmns/audit.hpp"
#include "fmns/error.hpp"

namespace fmns {

namespace {

using ojson = nlohmann::ordered_json;

// nlohmann writes non-finite doubles as null; keep them visible instead.
ojson number_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

ojson array_json(const std::vector<double>& xs) {
  ojson a = ojson::array();
  for (double x : xs) a.push_back(number_json(x));
  return a;
}

const char* comparison_name(Comparison c) {
  switch (c) {
    case Comparison::AbsAtMost: return "abs_at_most";
    case Comparison::AtMost: return "at_most";
    case Comparison::AtLeast: return "at_least";
  }
  return "?";
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string timeseries_csv(const Trajectory& traj, const Problem& problem) {
  const Grid& grid = problem.grid;
  std::string out = "t,cell,y,J,v,theta,G,eta\n";
  for (const auto& snap : traj.snapshots) {
    const State& s = snap.state;
    const auto G = effective_flux_field(s, problem);
    const std::string t = format_number(s.t);
    for (int k = 0; k < grid.cells(); ++k) {
      const double v = 0.5 * (s.v[k] + s.v[k + 1]);
      const double eta = grid.center(k) + 0.5 * (s.acc_eta[k] + s.acc_eta[k + 1]);
      out += t;
      out += ',' + std::to_string(k);
      for (double x : {grid.center(k), s.J[k], v, s.theta[k], G[k], eta}) {
        out += ',';
        out += format_number(x);
      }
      out += '\n';
    }
  }
  return out;
}

std::string euler_csv(const std::vector<EulerFrame>& frames) {
  std::string out = "t,x,rho,u,theta\n";
  for (const auto& f : frames) {
    const std::string t = format_number(f.t);
    for (const auto& s : f.samples) {
      out += t;
      for (double x : {s.x, s.rho, s.u, s.theta}) {
        out += ',';
        out += format_number(x);
      }
      out += '\n';
    }
  }
  return out;
}

ojson constants_json(const AprioriConstants& c) {
  ojson j;
  j["E0"] = number_json(c.E0);
  j["rho_bar"] = number_json(c.rho_bar);
  j["rho_l1"] = number_json(c.rho_l1);
  j["omega0"] = number_json(c.omega0);
  j["m1"] = number_json(c.m1);
  j["m_lower"] = number_json(c.m_lower);
  j["f1_rate"] = number_json(c.f1_rate);
  j["rho_d1_inf"] = number_json(c.rho_d1_inf);
  j["N1"] = number_json(c.N1);
  j["N2"] = number_json(c.N2);
  j["N2_alt"] = number_json(c.N2_alt);
  j["N3"] = number_json(c.N3);
  return j;
}

ojson audit_json(const AuditReport& report) {
  ojson j;
  j["scope"] = report.scope == AuditScope::Full ? "full" : "kinematic";
  const auto& a = report.config;
  j["thresholds"] = {{"mass_rel_tol", a.mass_rel_tol},
                     {"energy_rel_tol", a.energy_rel_tol},
                     {"ks_rel_tol", a.ks_rel_tol},
                     {"flow_map_tol", a.flow_map_tol},
                     {"bound_abs_tol", a.bound_abs_tol},
                     {"h_rel_tol", a.h_rel_tol},
                     {"margin_tol", a.margin_tol},
                     {"boundary_flux_constant", a.boundary_flux_constant},
                     {"delta_mask_fraction", a.delta_mask_fraction}};
  j["delta_mask"] = number_json(report.delta_mask);
  j["constants"] = constants_json(report.constants);
  ojson records = ojson::array();
  for (const auto& r : report.records) {
    ojson rec;
    rec["t"] = number_json(r.t);
    rec["passed"] = r.passed();
    ojson items;
    for (const auto& i : r.items) {
      items[i.name] = {{"value", number_json(i.value)},
                       {"threshold", number_json(i.threshold)},
                       {"comparison", comparison_name(i.comparison)},
                       {"verdict", i.pass ? "pass" : "fail"}};
    }
    rec["graded"] = items;
    ojson diag;
    for (const auto& [name, value] : r.diagnostics) diag[name] = number_json(value);
    rec["diagnostics"] = diag;
    records.push_back(rec);
  }
  j["records"] = records;
  j["passed"] = report.passed();
  j["failures"] = report.failures();
  return j;
}

ojson order_json(const OrderReport& report) {
  ojson j;
  j["kind"] = report.kind;
  j["cells"] = report.cells;
  j["dt"] = array_json(report.dt);
  j["h"] = array_json(report.h);
  ojson series;
  for (const auto& s : report.series) {
    series[s.name] = {{"errors", array_json(s.errors)},
                      {"order", s.order ? number_json(*s.order) : ojson("exact")}};
  }
  j["series"] = series;
  return j;
}

ojson continuation_json(const ContinuationReport& report) {
  ojson j;
  j["t_end"] = number_json(report.t_end);
  const auto& c = report.caps;
  j["caps"] = {{"E0_lower", number_json(c.E0_lower)},         {"E0_upper", number_json(c.E0_upper)},
               {"m1_lower", number_json(c.m1_lower)},         {"m1_upper", number_json(c.m1_upper)},
               {"N1_upper", number_json(c.N1_upper)},         {"N2_upper", number_json(c.N2_upper)},
               {"N2_alt_upper", number_json(c.N2_alt_upper)}, {"N3_upper", number_json(c.N3_upper)}};
  j["eps_one"] = constants_json(report.eps_one);
  ojson entries = ojson::array();
  for (const auto& e : report.entries) {
    ojson entry;
    entry["eps"] = number_json(e.eps);
    entry["constants"] = constants_json(e.constants);
    entry["min_J"] = number_json(e.min_J);
    entry["J_lower_bound"] = number_json(e.J_lower_bound);
    entry["status"] = e.failure.empty() ? "completed" : "failed: " + e.failure;
    entries.push_back(entry);
  }
  j["runs"] = entries;
  j["successive_sup_differences"] = {
      {"J", array_json(report.diff_J)}, {"v", array_json(report.diff_v)}, {"theta", array_json(report.diff_theta)}};
  j["verdicts"] = {{"complete", report.complete()},
                   {"differences_decreasing", report.differences_decreasing()},
                   {"lower_bounds_hold", report.lower_bounds_hold()},
                   {"caps_hold", report.caps_hold()}};
  return j;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw StructuralError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw StructuralError("failed writing " + path);
}

void write_json(const std::string& path, const ojson& doc) { write_text(path, doc.dump(2) + "\n"); }

}  // namespace fmns
