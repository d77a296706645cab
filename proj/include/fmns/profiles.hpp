#pragma once

// Built-in initial profiles given as closed-form functions of y, sampled onto
// a grid on demand (refinement and continuation studies resample per grid).

#include <functional>
#include <string>

#include "fmns/grid.hpp"
#include "fmns/model.hpp"

namespace fmns {

using ScalarFn = std::function<double(double)>;

struct Profile {
  std::string name;
  ScalarFn rho, v, theta;
  ScalarFn rho_d1, rho_d2, v_d1, v_d2, theta_d1, theta_d2;
};

/// rho and theta at cell centers, v at nodes (v forced to 0 at the walls),
/// analytic derivatives at cell centers, rho at both walls.
InitialData sample(const Profile& profile, const Grid& grid);

using DataFactory = std::function<InitialData(const Grid&)>;
DataFactory factory(Profile profile);

Profile constant_profile(double rho_bar, double theta_bar);
/// rho = rho_bar, v = amplitude sin(pi y/L), theta = theta_bar.
Profile sine_velocity_profile(double L, double amplitude, double rho_bar, double theta_bar);
/// rho = (2y/L - 1)^2 (one interior zero), v = amplitude sin^3(2 pi y/L), theta = theta_bar.
/// Compatible: g0 and h0 stay bounded across the vacuum point.
Profile vacuum_bump_profile(double L, double amplitude, double theta_bar);
/// Initial data of the Neumann manufactured solution: rho = 1, v = 0, theta = 2 + cos(pi y/L).
Profile mms_profile(double L);

}  // namespace fmns
