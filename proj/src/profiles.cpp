#include "fmns/profiles.hpp"

#include <cmath>
#include <numbers>

namespace fmns {

namespace {

ScalarFn constant_fn(double c) {
  return [c](double) { return c; };
}

}  // namespace

InitialData sample(const Profile& p, const Grid& grid) {
  const int n = grid.cells();
  InitialData data;
  data.rho0.resize(n);
  data.theta0.resize(n);
  data.v0.resize(n + 1);
  InitialDerivatives d;
  for (auto* f : {&d.rho0_d1, &d.rho0_d2, &d.v0_d1, &d.v0_d2, &d.theta0_d1, &d.theta0_d2}) f->resize(n);
  for (int k = 0; k < n; ++k) {
    const double y = grid.center(k);
    data.rho0[k] = p.rho(y);
    data.theta0[k] = p.theta(y);
    d.rho0_d1[k] = p.rho_d1(y);
    d.rho0_d2[k] = p.rho_d2(y);
    d.v0_d1[k] = p.v_d1(y);
    d.v0_d2[k] = p.v_d2(y);
    d.theta0_d1[k] = p.theta_d1(y);
    d.theta0_d2[k] = p.theta_d2(y);
  }
  for (int i = 1; i < n; ++i) data.v0[i] = p.v(grid.node(i));
  data.v0.front() = 0.0;
  data.v0.back() = 0.0;
  data.derivatives = std::move(d);
  data.rho0_boundary = std::array<double, 2>{p.rho(0.0), p.rho(grid.length())};
  return data;
}

DataFactory factory(Profile profile) {
  return [p = std::move(profile)](const Grid& grid) { return sample(p, grid); };
}

Profile constant_profile(double rho_bar, double theta_bar) {
  Profile p;
  p.name = "constant";
  p.rho = constant_fn(rho_bar);
  p.v = constant_fn(0.0);
  p.theta = constant_fn(theta_bar);
  p.rho_d1 = p.rho_d2 = p.v_d1 = p.v_d2 = p.theta_d1 = p.theta_d2 = constant_fn(0.0);
  return p;
}

Profile sine_velocity_profile(double L, double amplitude, double rho_bar, double theta_bar) {
  const double k = std::numbers::pi / L;
  Profile p = constant_profile(rho_bar, theta_bar);
  p.name = "sine-velocity";
  p.v = [=](double y) { return amplitude * std::sin(k * y); };
  p.v_d1 = [=](double y) { return amplitude * k * std::cos(k * y); };
  p.v_d2 = [=](double y) { return -amplitude * k * k * std::sin(k * y); };
  return p;
}

Profile vacuum_bump_profile(double L, double amplitude, double theta_bar) {
  // rho0 = s^2 with s = 2y/L - 1 vanishes at y = L/2 only. The cubed sine keeps
  // v0' and v0'' vanishing there fast enough for g0 and h0 to stay bounded.
  const double k = 2.0 * std::numbers::pi / L;
  Profile p = constant_profile(1.0, theta_bar);
  p.name = "vacuum-bump";
  p.rho = [=](double y) {
    const double s = 2.0 * y / L - 1.0;
    return s * s;
  };
  p.rho_d1 = [=](double y) { return 4.0 * (2.0 * y / L - 1.0) / L; };
  p.rho_d2 = [=](double) { return 8.0 / (L * L); };
  p.v = [=](double y) {
    const double s = std::sin(k * y);
    return amplitude * s * s * s;
  };
  p.v_d1 = [=](double y) {
    const double s = std::sin(k * y);
    return 3.0 * amplitude * k * s * s * std::cos(k * y);
  };
  p.v_d2 = [=](double y) {
    const double s = std::sin(k * y);
    const double c = std::cos(k * y);
    return 3.0 * amplitude * k * k * (2.0 * s * c * c - s * s * s);
  };
  return p;
}

Profile mms_profile(double L) {
  const double k = std::numbers::pi / L;
  Profile p = constant_profile(1.0, 0.0);
  p.name = "mms";
  p.theta = [=](double y) { return 2.0 + std::cos(k * y); };
  p.theta_d1 = [=](double y) { return -k * std::sin(k * y); };
  p.theta_d2 = [=](double y) { return -k * k * std::cos(k * y); };
  return p;
}

}  // namespace fmns
