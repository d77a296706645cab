#include "fmns/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "fmns/error.hpp"

namespace fmns {

namespace {

using nlohmann::json;

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

// Rejects keys outside `allowed` and returns the object.
const json& object_at(const json& doc, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!doc.is_object()) throw ConfigError(path, "expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : doc.items()) {
    if (!keys.count(key)) throw ConfigError(join(path, key), "unknown key");
  }
  return doc;
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& obj, const std::string& path, const char* key, double fallback, bool required = false) {
  const json* v = find(obj, key);
  if (!v) {
    if (required) throw ConfigError(join(path, key), "missing required key");
    return fallback;
  }
  if (!v->is_number()) throw ConfigError(join(path, key), "expected a number");
  return v->get<double>();
}

int integer(const json& obj, const std::string& path, const char* key, int fallback, bool required = false) {
  const json* v = find(obj, key);
  if (!v) {
    if (required) throw ConfigError(join(path, key), "missing required key");
    return fallback;
  }
  if (!v->is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
  return v->get<int>();
}

bool boolean(const json& obj, const std::string& path, const char* key, bool fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ConfigError(join(path, key), "expected true or false");
  return v->get<bool>();
}

std::string text(const json& obj, const std::string& path, const char* key, std::string fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_string()) throw ConfigError(join(path, key), "expected a string");
  return v->get<std::string>();
}

std::vector<double> numbers(const json& obj, const std::string& path, const char* key, std::vector<double> fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_array()) throw ConfigError(join(path, key), "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v->size(); ++i) {
    if (!(*v)[i].is_number()) throw ConfigError(join(path, key) + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back((*v)[i].get<double>());
  }
  return out;
}

const json& block(const json& doc, const char* key, bool required, std::initializer_list<const char*> allowed) {
  static const json empty = json::object();
  const json* v = find(doc, key);
  if (!v) {
    if (required) throw ConfigError(key, "missing required key");
    return empty;
  }
  return object_at(*v, key, allowed);
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "imex-euler") return Scheme::ImexEuler;
  if (s == "imex-cn") return Scheme::ImexCrankNicolson;
  throw ConfigError("time.scheme", "expected \"imex-euler\" or \"imex-cn\", got \"" + s + "\"");
}

RefinementMode mode_from_string(const std::string& s) {
  if (s == "simultaneous") return RefinementMode::Simultaneous;
  if (s == "parabolic") return RefinementMode::Parabolic;
  throw ConfigError("study.mode", "expected \"simultaneous\" or \"parabolic\", got \"" + s + "\"");
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::ImexEuler ? "imex-euler" : "imex-cn"; }
std::string to_string(RefinementMode m) { return m == RefinementMode::Simultaneous ? "simultaneous" : "parabolic"; }

RunConfig parse_config(const json& doc) {
  object_at(doc, "", {"params", "grid", "time", "bc", "initial_data", "audit", "study", "output", "euler",
                      "deterministic"});
  RunConfig c;

  const auto& p = block(doc, "params", true, {"mu", "kappa", "R", "c_v", "L", "eps"});
  c.params.mu = number(p, "params", "mu", c.params.mu);
  c.params.kappa = number(p, "params", "kappa", c.params.kappa);
  c.params.R = number(p, "params", "R", c.params.R);
  c.params.c_v = number(p, "params", "c_v", c.params.c_v);
  c.params.L = number(p, "params", "L", 0.0, true);
  c.params.eps = number(p, "params", "eps", c.params.eps);
  c.params.validate();

  const auto& g = block(doc, "grid", true, {"N"});
  c.cells = integer(g, "grid", "N", 0, true);
  if (c.cells < 2) throw ConfigError("grid.N", "need at least 2 cells");

  const auto& t = block(doc, "time", true,
                        {"t_end", "dt_initial", "dt_min", "dt_max", "adaptive", "safety", "J_floor",
                         "theta_negative_tolerance", "max_consecutive_rejections", "scheme", "snapshot_times"});
  c.t_end = number(t, "time", "t_end", 0.0, true);
  if (!(c.t_end > 0.0) || !std::isfinite(c.t_end)) throw ConfigError("time.t_end", "must be positive");
  auto& s = c.scheme;
  s.dt_initial = number(t, "time", "dt_initial", s.dt_initial);
  s.dt_min = number(t, "time", "dt_min", s.dt_min);
  s.dt_max = number(t, "time", "dt_max", s.dt_max);
  s.adaptive = boolean(t, "time", "adaptive", s.adaptive);
  s.safety = number(t, "time", "safety", s.safety);
  s.J_floor = number(t, "time", "J_floor", s.J_floor);
  s.theta_negative_tolerance = number(t, "time", "theta_negative_tolerance", s.theta_negative_tolerance);
  s.max_consecutive_rejections = integer(t, "time", "max_consecutive_rejections", s.max_consecutive_rejections);
  s.scheme = scheme_from_string(text(t, "time", "scheme", to_string(s.scheme)));
  s.validate();
  c.snapshot_times = numbers(t, "time", "snapshot_times", c.snapshot_times);
  for (double st : c.snapshot_times) {
    if (!(st >= 0.0) || st > c.t_end) throw ConfigError("time.snapshot_times", "times must lie in [0, t_end]");
  }

  if (const json* bc = find(doc, "bc")) {
    if (!bc->is_string()) throw ConfigError("bc", "expected a string");
    try {
      c.bc = theta_bc_from_string(bc->get<std::string>());
    } catch (const Error& e) {
      throw ConfigError("bc", e.what());
    }
  }

  const auto& d = block(doc, "initial_data", true, {"profile", "rho", "theta", "amplitude", "rho0", "v0", "theta0"});
  auto& init = c.initial;
  init.profile = text(d, "initial_data", "profile", "");
  init.rho = number(d, "initial_data", "rho", init.rho);
  init.theta = number(d, "initial_data", "theta", init.theta);
  init.amplitude = number(d, "initial_data", "amplitude", init.amplitude);
  init.rho0 = numbers(d, "initial_data", "rho0", {});
  init.v0 = numbers(d, "initial_data", "v0", {});
  init.theta0 = numbers(d, "initial_data", "theta0", {});
  const bool inline_data = !init.rho0.empty() || !init.v0.empty() || !init.theta0.empty();
  if (init.profile.empty()) {
    if (!inline_data) throw ConfigError("initial_data.profile", "missing required key (or inline rho0/v0/theta0)");
    if (static_cast<int>(init.rho0.size()) != c.cells) throw ConfigError("initial_data.rho0", "needs grid.N samples");
    if (static_cast<int>(init.theta0.size()) != c.cells) {
      throw ConfigError("initial_data.theta0", "needs grid.N samples");
    }
    if (static_cast<int>(init.v0.size()) != c.cells + 1) throw ConfigError("initial_data.v0", "needs grid.N + 1 samples");
  } else {
    static const std::set<std::string> known{"constant", "sine-velocity", "vacuum-bump", "mms"};
    if (!known.count(init.profile)) throw ConfigError("initial_data.profile", "unknown profile \"" + init.profile + "\"");
    if (inline_data) throw ConfigError("initial_data", "give either a profile or inline samples, not both");
  }

  const auto& a = block(doc, "audit", false,
                        {"mass_rel_tol", "energy_rel_tol", "ks_rel_tol", "flow_map_tol", "bound_abs_tol", "h_rel_tol",
                         "margin_tol", "boundary_flux_constant", "delta_mask_fraction"});
  auto& au = c.audit;
  au.mass_rel_tol = number(a, "audit", "mass_rel_tol", au.mass_rel_tol);
  au.energy_rel_tol = number(a, "audit", "energy_rel_tol", au.energy_rel_tol);
  au.ks_rel_tol = number(a, "audit", "ks_rel_tol", au.ks_rel_tol);
  au.flow_map_tol = number(a, "audit", "flow_map_tol", au.flow_map_tol);
  au.bound_abs_tol = number(a, "audit", "bound_abs_tol", au.bound_abs_tol);
  au.h_rel_tol = number(a, "audit", "h_rel_tol", au.h_rel_tol);
  au.margin_tol = number(a, "audit", "margin_tol", au.margin_tol);
  au.boundary_flux_constant = number(a, "audit", "boundary_flux_constant", au.boundary_flux_constant);
  au.delta_mask_fraction = number(a, "audit", "delta_mask_fraction", au.delta_mask_fraction);
  au.validate();

  const auto& st = block(doc, "study", false, {"eps_list", "levels", "base_dt", "mode"});
  c.study.eps_list = numbers(st, "study", "eps_list", c.study.eps_list);
  c.study.levels = integer(st, "study", "levels", c.study.levels);
  c.study.base_dt = number(st, "study", "base_dt", c.study.base_dt);
  c.study.mode = mode_from_string(text(st, "study", "mode", to_string(c.study.mode)));
  if (c.study.levels < 3) throw ConfigError("study.levels", "need at least 3 levels");
  if (!(c.study.base_dt > 0.0)) throw ConfigError("study.base_dt", "must be positive");
  for (std::size_t i = 0; i < c.study.eps_list.size(); ++i) {
    const double e = c.study.eps_list[i];
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("study.eps_list", "values must lie in (0, 1)");
    if (i > 0 && !(e < c.study.eps_list[i - 1])) throw ConfigError("study.eps_list", "must be strictly decreasing");
  }

  const auto& o = block(doc, "output", false, {"dir", "timeseries", "audit", "study", "euler"});
  c.output.dir = text(o, "output", "dir", c.output.dir);
  c.output.timeseries = text(o, "output", "timeseries", c.output.timeseries);
  c.output.audit = text(o, "output", "audit", c.output.audit);
  c.output.study = text(o, "output", "study", c.output.study);
  c.output.euler = text(o, "output", "euler", c.output.euler);

  const auto& e = block(doc, "euler", false, {"points"});
  c.euler_points = integer(e, "euler", "points", c.euler_points);
  if (c.euler_points < 2) throw ConfigError("euler.points", "need at least 2 points");

  if (const json* det = find(doc, "deterministic")) {
    if (!det->is_boolean() || !det->get<bool>()) throw ConfigError("deterministic", "runs are always deterministic");
  }
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed document: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["params"] = {{"mu", c.params.mu},   {"kappa", c.params.kappa}, {"R", c.params.R},
                 {"c_v", c.params.c_v}, {"L", c.params.L},         {"eps", c.params.eps}};
  j["grid"] = {{"N", c.cells}};
  const auto& s = c.scheme;
  j["time"] = {{"t_end", c.t_end},
               {"dt_initial", s.dt_initial},
               {"dt_min", s.dt_min},
               {"dt_max", s.dt_max},
               {"adaptive", s.adaptive},
               {"safety", s.safety},
               {"J_floor", s.J_floor},
               {"theta_negative_tolerance", s.theta_negative_tolerance},
               {"max_consecutive_rejections", s.max_consecutive_rejections},
               {"scheme", to_string(s.scheme)},
               {"snapshot_times", c.snapshot_times}};
  j["bc"] = std::string(to_string(c.bc));
  nlohmann::ordered_json init;
  if (c.initial.profile.empty()) {
    init["rho0"] = c.initial.rho0;
    init["v0"] = c.initial.v0;
    init["theta0"] = c.initial.theta0;
  } else {
    init["profile"] = c.initial.profile;
    init["rho"] = c.initial.rho;
    init["theta"] = c.initial.theta;
    init["amplitude"] = c.initial.amplitude;
  }
  j["initial_data"] = init;
  const auto& a = c.audit;
  j["audit"] = {{"mass_rel_tol", a.mass_rel_tol},
                {"energy_rel_tol", a.energy_rel_tol},
                {"ks_rel_tol", a.ks_rel_tol},
                {"flow_map_tol", a.flow_map_tol},
                {"bound_abs_tol", a.bound_abs_tol},
                {"h_rel_tol", a.h_rel_tol},
                {"margin_tol", a.margin_tol},
                {"boundary_flux_constant", a.boundary_flux_constant},
                {"delta_mask_fraction", a.delta_mask_fraction}};
  j["study"] = {{"eps_list", c.study.eps_list},
                {"levels", c.study.levels},
                {"base_dt", c.study.base_dt},
                {"mode", to_string(c.study.mode)}};
  j["output"] = {{"dir", c.output.dir},
                 {"timeseries", c.output.timeseries},
                 {"audit", c.output.audit},
                 {"study", c.output.study},
                 {"euler", c.output.euler}};
  j["euler"] = {{"points", c.euler_points}};
  j["deterministic"] = true;
  return j;
}

std::optional<Profile> profile_of(const RunConfig& c) {
  const auto& i = c.initial;
  const double L = c.params.L;
  if (i.profile.empty()) return std::nullopt;
  if (i.profile == "constant") return constant_profile(i.rho, i.theta);
  if (i.profile == "sine-velocity") return sine_velocity_profile(L, i.amplitude, i.rho, i.theta);
  if (i.profile == "vacuum-bump") return vacuum_bump_profile(L, i.amplitude, i.theta);
  if (i.profile == "mms") return std::nullopt;
  throw ConfigError("initial_data.profile", "unknown profile \"" + i.profile + "\"");
}

ManufacturedSolution manufactured_of(const RunConfig& c) {
  if (c.bc == ThetaBC::NeumannNeumann) return mms_neumann(c.params.L);
  if (c.bc == ThetaBC::DirichletDirichlet) return mms_dirichlet(c.params.L);
  throw ConfigError("bc", "the mms profile supports neumann-neumann and dirichlet-dirichlet only");
}

InitialData initial_data_of(const RunConfig& c, const Grid& grid) {
  if (c.initial.profile == "mms") return mms_initial_data(manufactured_of(c), grid);
  if (auto p = profile_of(c)) return sample(*p, grid);
  if (grid.cells() != c.cells) throw StructuralError("inline initial data is tied to grid.N");
  InitialData d;
  d.rho0 = c.initial.rho0;
  d.v0 = c.initial.v0;
  d.theta0 = c.initial.theta0;
  return d;
}

SchemeConfig scheme_of(const RunConfig& c) {
  SchemeConfig s = c.scheme;
  if (c.initial.profile == "mms") s.sources = mms_sources(manufactured_of(c), c.params);
  return s;
}

Problem problem_of(const RunConfig& c) {
  const Grid grid(c.params.L, c.cells);
  const auto data = initial_data_of(c, grid);
  const auto report = validate_initial_data(data, c.params, c.bc);
  for (const auto& issue : report.issues) {
    if (issue.kind == Violation::VacuumCompatibility && c.params.eps > 0.0) continue;
    throw StructuralError("initial data: " + issue.message);
  }
  return make_problem(data, c.params, c.bc);
}

}  // namespace fmns
