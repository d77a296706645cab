#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fmns/error.hpp"
#include "fmns/euler_map.hpp"
#include "fmns/profiles.hpp"

using namespace fmns;

namespace {

Problem sine_problem(int n, double amplitude = 1.0) {
  return make_problem(sample(sine_velocity_profile(1.0, amplitude, 1.0, 1.0), Grid(1.0, n)), PhysicalParams{},
                      ThetaBC::NeumannNeumann);
}

Trajectory run_to(const Problem& pr, double t_end, double dt) {
  SchemeConfig cfg;
  cfg.dt_initial = dt;
  RunRequest req;
  req.t_end = t_end;
  return run(pr, cfg, req);
}

}  // namespace

TEST_CASE("flow map is the identity at t = 0 and when v vanishes") {
  const auto pr = sine_problem(20);
  const auto eta0 = flow_map(initial_state(pr), pr.grid);
  for (int i = 0; i <= 20; ++i) CHECK(eta0[i] == pr.grid.node(i));

  const auto still = make_problem(sample(constant_profile(1.0, 1.0), Grid(1.0, 20)), PhysicalParams{},
                                  ThetaBC::NeumannNeumann);
  const auto traj = run_to(still, 0.2, 1e-2);
  const auto eta = flow_map(traj.snapshots.back().state, still.grid);
  for (int i = 0; i <= 20; ++i) CHECK(eta[i] == doctest::Approx(still.grid.node(i)).epsilon(1e-15));
}

TEST_CASE("J = 1 gives identity sampling") {
  const auto pr = sine_problem(10);
  const auto s = initial_state(pr);
  const auto frame = to_euler(s, pr, pr.grid.node_coordinates());
  for (int i = 0; i <= 10; ++i) {
    CHECK(frame.samples[i].u == s.v[i]);
    CHECK(frame.samples[i].rho == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(frame.samples[i].theta == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("flow map stays monotone and walls stay fixed") {
  const auto pr = sine_problem(50, 2.0);
  const auto traj = run_to(pr, 0.5, 1e-3);
  const auto eta = flow_map(traj.snapshots.back().state, pr.grid);
  for (std::size_t i = 1; i < eta.size(); ++i) CHECK(eta[i] > eta[i - 1]);
  CHECK(eta.front() == 0.0);
  CHECK(eta.back() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Euler velocity gradient follows the chain rule") {
  const auto pr = sine_problem(200);
  const auto traj = run_to(pr, 0.2, 1e-3);
  const auto& s = traj.snapshots.back().state;
  const auto eta = flow_map(s, pr.grid);
  // sample at node images: du/dx between neighbours equals (dv/dy)/J on that cell
  const auto frame = to_euler(s, pr, eta);
  const auto dv = cell_gradient(s.v, pr.grid);
  for (int k = 0; k < 200; k += 17) {
    const double dudx = (frame.samples[k + 1].u - frame.samples[k].u) / (eta[k + 1] - eta[k]);
    CHECK(dudx == doctest::Approx(dv[k] / s.J[k]).epsilon(1e-8));
  }
}

TEST_CASE("Euler mass matches Lagrangian mass") {
  const auto pr = sine_problem(200);
  const auto traj = run_to(pr, 0.3, 1e-3);
  const auto x = uniform_positions(1.0, 2001);
  const auto frame = to_euler(traj.snapshots.back().state, pr, x);
  double mass = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i)
    mass += 0.5 * (frame.samples[i].rho + frame.samples[i - 1].rho) * (x[i] - x[i - 1]);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("Euler sampling rejects bad queries") {
  const auto pr = sine_problem(10);
  const auto s = initial_state(pr);
  const std::vector<double> outside{-0.1, 0.5};
  const std::vector<double> unsorted{0.5, 0.2};
  CHECK_THROWS_AS(to_euler(s, pr, outside), RangeError);
  CHECK_THROWS_AS(to_euler(s, pr, unsorted), StructuralError);
  auto bad = s;
  bad.acc_eta[3] = 0.5;  // folds the map
  CHECK_THROWS_AS(flow_map(bad, pr.grid), DegenerateJacobianError);
}

TEST_CASE("uniform positions span the domain") {
  const auto x = uniform_positions(2.0, 5);
  CHECK(x == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  CHECK_THROWS(uniform_positions(1.0, 1));
}
