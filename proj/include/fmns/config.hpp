#pragma once

// RunConfig: the JSON run description, parsed strictly (unknown keys are
// errors) and echoed back with every default spelled out.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "fmns/audit.hpp"
#include "fmns/profiles.hpp"
#include "fmns/studies.hpp"
#include "fmns/timestepper.hpp"

namespace fmns {

struct InitialDataConfig {
  std::string profile;   ///< "constant", "sine-velocity", "vacuum-bump", "mms"; empty for inline
  double rho = 1.0;
  double theta = 1.0;
  double amplitude = 1.0;
  // Inline samples (used when profile is empty): rho0/theta0 on N cells, v0 on N+1 nodes.
  std::vector<double> rho0, v0, theta0;
};

struct StudyConfig {
  std::vector<double> eps_list{1e-1, 1e-2, 1e-3, 1e-4};
  int levels = 3;
  double base_dt = 1e-2;
  RefinementMode mode = RefinementMode::Simultaneous;
};

struct OutputConfig {
  std::string dir = "out";
  std::string timeseries = "timeseries.csv";
  std::string audit = "audit.json";
  std::string study = "study.json";
  std::string euler = "euler.csv";
};

struct RunConfig {
  PhysicalParams params;
  int cells = 0;
  double t_end = 0.0;
  std::vector<double> snapshot_times{0.0};
  SchemeConfig scheme;  ///< sources are filled from the profile, never from the document
  ThetaBC bc = ThetaBC::NeumannNeumann;
  InitialDataConfig initial;
  AuditConfig audit;
  StudyConfig study;
  OutputConfig output;
  int euler_points = 101;
};

/// Throws ConfigError naming the offending key path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// Every field, defaults included; parse_config(to_json(c)) == c.
nlohmann::ordered_json to_json(const RunConfig& cfg);

/// Profile for the named built-in (nullopt for inline data).
std::optional<Profile> profile_of(const RunConfig& cfg);
/// The manufactured solution matching the "mms" profile and the configured BC.
ManufacturedSolution manufactured_of(const RunConfig& cfg);
/// Initial data sampled on `grid` (profile or inline arrays).
InitialData initial_data_of(const RunConfig& cfg, const Grid& grid);
/// Scheme with manufactured sources attached when the profile is "mms".
SchemeConfig scheme_of(const RunConfig& cfg);
Problem problem_of(const RunConfig& cfg);

std::string to_string(Scheme s);
std::string to_string(RefinementMode m);

}  // namespace fmns
