#include "fmns/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <ostream>

#include "CLI11.hpp"

#include "fmns/audit.hpp"
#include "fmns/config.hpp"
#include "fmns/error.hpp"
#include "fmns/euler_map.hpp"
#include "fmns/io.hpp"
#include "fmns/studies.hpp"

namespace fmns {

namespace {

struct Options {
  std::string config;
  std::string out;
  bool quiet = false;
};

struct Context {
  RunConfig cfg;
  std::filesystem::path dir;
  std::ostream& out;
  bool quiet;

  std::string path(const std::string& name) const { return (dir / name).string(); }
  void say(const std::string& line) const {
    if (!quiet) out << line << '\n';
  }
};

Trajectory trajectory_of(const RunConfig& cfg, const Problem& problem) {
  RunRequest request;
  request.t_end = cfg.t_end;
  request.snapshot_times = cfg.snapshot_times;
  return run(problem, scheme_of(cfg), request);
}

AuditReport audit_of(const Context& ctx, const Trajectory& traj, const Problem& problem) {
  const auto scope = ctx.cfg.initial.profile == "mms" ? AuditScope::Kinematic : AuditScope::Full;
  return audit_trajectory(traj, problem, ctx.cfg.audit, scope);
}

int finish_audit(const Context& ctx, const AuditReport& report) {
  write_json(ctx.path(ctx.cfg.output.audit), audit_json(report));
  if (report.passed()) {
    ctx.say("audit: all graded items passed (" + std::to_string(report.records.size()) + " snapshots)");
    return kExitOk;
  }
  std::string names;
  for (const auto& f : report.failures()) names += (names.empty() ? "" : ", ") + f;
  ctx.out << "audit: FAILED " << names << '\n';
  return kExitAuditFailed;
}

int cmd_run(const Context& ctx) {
  const auto problem = problem_of(ctx.cfg);
  const auto traj = trajectory_of(ctx.cfg, problem);
  write_text(ctx.path(ctx.cfg.output.timeseries), timeseries_csv(traj, problem));
  ctx.say("run: " + std::to_string(traj.stats.accepted) + " steps, " + std::to_string(traj.stats.rejected) +
          " rejected, min J " + format_number(traj.stats.min_J));
  return finish_audit(ctx, audit_of(ctx, traj, problem));
}

int cmd_audit(const Context& ctx) {
  const auto problem = problem_of(ctx.cfg);
  const auto traj = trajectory_of(ctx.cfg, problem);
  return finish_audit(ctx, audit_of(ctx, traj, problem));
}

int cmd_continuation(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  ContinuationRequest req;
  req.data = initial_data_of(cfg, Grid(cfg.params.L, cfg.cells));
  req.params = cfg.params;
  req.scheme = scheme_of(cfg);
  req.bc = cfg.bc;
  req.t_end = cfg.t_end;
  req.eps_list = cfg.study.eps_list;
  const auto report = eps_continuation(req);
  write_json(ctx.path(cfg.output.study), continuation_json(report));
  if (!report.complete()) {
    for (const auto& e : report.entries) {
      if (!e.failure.empty()) ctx.out << "continuation: eps " << format_number(e.eps) << " failed: " << e.failure << '\n';
    }
    return kExitStructural;
  }
  if (!report.lower_bounds_hold() || !report.caps_hold()) {
    ctx.out << "continuation: FAILED proven bounds (lower J bound or eps-uniform caps)\n";
    return kExitAuditFailed;
  }
  ctx.say(std::string("continuation: differences ") +
          (report.differences_decreasing() ? "decreasing" : "NOT decreasing") + ", bounds hold");
  return kExitOk;
}

int cmd_refine(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const auto profile = profile_of(cfg);
  if (!profile) throw ConfigError("initial_data.profile", "refine needs a resamplable built-in profile");
  RefinementRequest req;
  req.data = factory(*profile);
  req.params = cfg.params;
  req.scheme = scheme_of(cfg);
  req.bc = cfg.bc;
  req.t_end = cfg.t_end;
  req.base_cells = cfg.cells;
  req.base_dt = cfg.study.base_dt;
  req.levels = cfg.study.levels;
  req.mode = cfg.study.mode;
  const auto report = refinement_study(req);
  write_json(ctx.path(cfg.output.study), order_json(report));
  ctx.say("refine: " + std::to_string(report.cells.size()) + " levels written");
  return kExitOk;
}

int cmd_mms(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  MmsRequest req;
  req.solution = manufactured_of(cfg);
  req.params = cfg.params;
  req.scheme = cfg.scheme;
  req.t_end = cfg.t_end;
  req.base_cells = cfg.cells;
  req.base_dt = cfg.study.base_dt;
  req.levels = cfg.study.levels;
  req.mode = cfg.study.mode;
  const auto report = mms_run(req);
  write_json(ctx.path(cfg.output.study), order_json(report));
  if (const auto* s = report.find("max"); s && s->order) ctx.say("mms: observed order " + format_number(*s->order));
  return kExitOk;
}

int cmd_euler(const Context& ctx) {
  const auto problem = problem_of(ctx.cfg);
  const auto traj = trajectory_of(ctx.cfg, problem);
  const auto x = uniform_positions(ctx.cfg.params.L, ctx.cfg.euler_points);
  std::vector<EulerFrame> frames;
  for (const auto& snap : traj.snapshots) frames.push_back(to_euler(snap.state, problem, x));
  write_text(ctx.path(ctx.cfg.output.euler), euler_csv(frames));
  ctx.say("euler-export: " + std::to_string(frames.size()) + " frames");
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lagrangian compressible Navier-Stokes solver and a-priori estimate auditor", "fmns"};
  app.require_subcommand(1);
  Options opts;
  using Handler = int (*)(const Context&);
  const std::pair<const char*, Handler> commands[] = {
      {"run", cmd_run},
      {"audit", cmd_audit},
      {"continuation", cmd_continuation},
      {"refine", cmd_refine},
      {"mms", cmd_mms},
      {"euler-export", cmd_euler},
  };
  const char* descriptions[] = {
      "integrate and write the trajectory CSV and its audit",
      "integrate and write the audit report only",
      "eps-continuation toward the vacuum data",
      "refinement order study",
      "manufactured-solution order study",
      "write Euler-coordinate samples of every snapshot",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, descriptions[i]);
    sub->add_option("--config", opts.config, "JSON run configuration")->required();
    sub->add_option("--out", opts.out, "output directory");
    sub->add_flag("--quiet", opts.quiet, "suppress progress output");
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fmns: " << e.what() << '\n';
    return kExitStructural;
  }

  try {
    Context ctx{load_config(opts.config), {}, out, opts.quiet};
    std::string dir = ctx.cfg.output.dir;
    if (const char* env = std::getenv("FMNS_OUT_DIR"); env && *env) dir = env;
    if (!opts.out.empty()) dir = opts.out;
    ctx.dir = dir;
    std::error_code ec;
    std::filesystem::create_directories(ctx.dir, ec);
    if (ec) throw StructuralError("cannot create output directory " + dir + ": " + ec.message());
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (subs[i]->parsed()) return commands[i].second(ctx);
    }
    return kExitStructural;
  } catch (const std::exception& e) {
    err << "fmns: " << e.what() << '\n';
    return kExitStructural;
  }
}

}  // namespace fmns
