#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fmns/error.hpp"
#include "fmns/studies.hpp"

using namespace fmns;

TEST_CASE("fit_order recovers synthetic slopes") {
  const std::vector<double> h{0.1, 0.05, 0.025, 0.0125};
  std::vector<double> e1, e2;
  for (double x : h) {
    e1.push_back(3.0 * x);
    e2.push_back(0.5 * x * x);
  }
  CHECK(fit_order(h, e1).value() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit_order(h, e2).value() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_FALSE(fit_order(h, {1e-16, 0.0, 1e-15, 0.0}).has_value());
  CHECK_FALSE(fit_order({0.1}, {1.0}).has_value());
  CHECK_THROWS_AS(fit_order({0.1, 0.05}, {1.0}), StructuralError);
}

TEST_CASE("restriction is exact on affine fields") {
  const int coarse = 5, fine = 20;
  std::vector<double> cells(fine), nodes(fine + 1);
  for (int k = 0; k < fine; ++k) cells[k] = 2.0 + 3.0 * (k + 0.5) / fine;
  for (int i = 0; i <= fine; ++i) nodes[i] = 1.0 - 0.5 * i / static_cast<double>(fine);
  const auto rc = restrict_cells(cells, coarse);
  const auto rn = restrict_nodes(nodes, coarse);
  REQUIRE(rc.size() == coarse);
  REQUIRE(rn.size() == coarse + 1);
  for (int k = 0; k < coarse; ++k) CHECK(rc[k] == doctest::Approx(2.0 + 3.0 * (k + 0.5) / coarse).epsilon(1e-14));
  for (int i = 0; i <= coarse; ++i) CHECK(rn[i] == doctest::Approx(1.0 - 0.5 * i / coarse).epsilon(1e-14));
  CHECK_THROWS_AS(restrict_cells(cells, 3), StructuralError);
}

TEST_CASE("manufactured sources match finite differences of the residual") {
  PhysicalParams p;
  p.mu = 0.8;
  p.kappa = 1.3;
  p.R = 0.6;
  p.c_v = 1.7;
  for (const auto& ms : {mms_neumann(1.0), mms_dirichlet(1.0)}) {
    CAPTURE(ms.name);
    const auto src = mms_sources(ms, p);
    const double d = 1e-4;
    for (double y : {0.13, 0.5, 0.77}) {
      for (double t : {0.1, 0.4}) {
        // residual of the unforced system by centered differences of the closed forms
        const auto pi_of = [&](double yy) { return p.R * ms.theta(yy, t) / ms.J(yy, t); };
        const auto flux_v = [&](double yy) { return p.mu * ms.v_y(yy, t) / ms.J(yy, t); };
        const auto flux_th = [&](double yy) { return p.kappa * ms.theta_y(yy, t) / ms.J(yy, t); };
        const double vt = (ms.v(y, t + d) - ms.v(y, t - d)) / (2 * d);
        const double tht = (ms.theta(y, t + d) - ms.theta(y, t - d)) / (2 * d);
        const double mom = vt - (flux_v(y + d) - flux_v(y - d)) / (2 * d) + (pi_of(y + d) - pi_of(y - d)) / (2 * d);
        const double vy = ms.v_y(y, t);
        const double tem = p.c_v * tht - (flux_th(y + d) - flux_th(y - d)) / (2 * d) + vy * pi_of(y) -
                           p.mu * vy * vy / ms.J(y, t);
        CHECK(src.momentum(y, t) == doctest::Approx(mom).epsilon(1e-6));
        CHECK(src.temperature(y, t) == doctest::Approx(tem).epsilon(1e-6));
        // J is the time integral of dv/dy
        const double Jt = (ms.J(y, t + d) - ms.J(y, t - d)) / (2 * d);
        CHECK(Jt == doctest::Approx(vy).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("stationary manufactured solution has zero sources and exact errors") {
  const auto ms = mms_stationary(1.5);
  const auto src = mms_sources(ms, PhysicalParams{});
  for (double y : {0.0, 0.3, 1.0}) {
    CHECK(src.momentum(y, 0.7) == 0.0);
    CHECK(src.temperature(y, 0.7) == 0.0);
  }
  MmsRequest req;
  req.solution = ms;
  req.t_end = 0.1;
  req.base_cells = 8;
  req.base_dt = 1e-2;
  req.levels = 3;
  const auto rep = mms_run(req);
  for (const auto& s : rep.series) {
    CAPTURE(s.name);
    CHECK_FALSE(s.order.has_value());
  }
}

TEST_CASE("mms_run rejects eps > 0 and boundary mismatches") {
  MmsRequest req;
  req.solution = mms_neumann(1.0);
  req.params.eps = 1e-3;
  req.levels = 3;
  req.t_end = 0.1;
  CHECK_THROWS_AS(mms_run(req), StructuralError);
  req.params.eps = 0.0;
  req.solution.bc = ThetaBC::DirichletDirichlet;  // theta does not vanish at the walls
  CHECK_THROWS_AS(mms_run(req), StructuralError);
}

TEST_CASE("parabolic MMS refinement is second order") {
  for (const auto& ms : {mms_neumann(1.0), mms_dirichlet(1.0)}) {
    CAPTURE(ms.name);
    MmsRequest req;
    req.solution = ms;
    req.t_end = 0.25;
    req.base_cells = 16;
    req.base_dt = 4e-3;
    req.levels = 3;
    req.mode = RefinementMode::Parabolic;
    const auto rep = mms_run(req);
    CHECK(rep.find("max")->order.value() > 1.9);
  }
}

TEST_CASE("stationary refinement study reports exact") {
  RefinementRequest req;
  req.data = factory(constant_profile(1.0, 1.0));
  req.t_end = 0.05;
  req.base_cells = 5;
  req.levels = 3;
  const auto rep = refinement_study(req);
  REQUIRE(rep.cells == std::vector<int>{5, 10, 20});
  CHECK(rep.dt[1] == doctest::Approx(rep.dt[0] / 2));
  for (const char* name : {"J", "v", "theta"}) CHECK_FALSE(rep.find(name)->order.has_value());
}

TEST_CASE("continuation validates its eps list") {
  ContinuationRequest req;
  req.data = sample(vacuum_bump_profile(1.0, 1.0, 1.0), Grid(1.0, 20));
  req.eps_list = {1e-2, 1e-1};
  CHECK_THROWS_AS(eps_continuation(req), StructuralError);
  req.eps_list = {1.5, 1e-1};
  CHECK_THROWS_AS(eps_continuation(req), StructuralError);
}

TEST_CASE("continuation caps bound the shifted constants") {
  const Grid g(1.0, 50);
  const auto data = sample(vacuum_bump_profile(1.0, 1.0, 1.0), g);
  PhysicalParams p;
  const auto caps = continuation_caps(data, p, g, ThetaBC::NeumannNeumann);
  CHECK(caps.E0_lower <= caps.E0_upper);
  CHECK(caps.m1_lower <= caps.m1_upper);
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    p.eps = eps;
    const auto c = apriori_constants(regularized(data, eps), p, g);
    CHECK(c.E0 >= caps.E0_lower);
    CHECK(c.E0 <= caps.E0_upper);
    CHECK(c.m1 <= caps.m1_upper);
    CHECK(c.N1 <= caps.N1_upper);
    CHECK(c.N3 <= caps.N3_upper);
  }
}

TEST_CASE("short continuation run completes with decreasing differences") {
  ContinuationRequest req;
  req.data = sample(vacuum_bump_profile(1.0, 1.0, 1.0), Grid(1.0, 50));
  req.scheme.dt_initial = 2e-3;
  req.t_end = 0.1;
  req.eps_list = {1e-1, 1e-2, 1e-3};
  const auto rep = eps_continuation(req);
  CHECK(rep.complete());
  CHECK(rep.entries.size() == 3);
  CHECK(rep.diff_J.size() == 2);
  CHECK(rep.lower_bounds_hold());
  CHECK(rep.caps_hold());
}
