#pragma once

// Uniform staggered grid on (0, L) and the conservative difference operators
// built on it. Velocities live on the N+1 nodes; J, theta, rho0, pi and G live
// on the N cells. Cell k spans [y_k, y_{k+1}].

#include <span>
#include <string_view>
#include <vector>

namespace fmns {

/// Homogeneous temperature boundary condition, left/right.
enum class ThetaBC { NeumannNeumann, DirichletDirichlet, DirichletNeumann, NeumannDirichlet };

bool dirichlet_left(ThetaBC bc) noexcept;
bool dirichlet_right(ThetaBC bc) noexcept;
std::string_view to_string(ThetaBC bc) noexcept;
/// Accepts "neumann-neumann", "dirichlet-dirichlet", "dirichlet-neumann", "neumann-dirichlet".
ThetaBC theta_bc_from_string(std::string_view name);

class Grid {
 public:
  Grid(double length, int cells);

  double length() const noexcept { return length_; }
  int cells() const noexcept { return cells_; }
  int nodes() const noexcept { return cells_ + 1; }
  double dy() const noexcept { return dy_; }

  double node(int i) const noexcept { return dy_ * i; }
  double center(int k) const noexcept { return dy_ * (k + 0.5); }

  std::vector<double> node_coordinates() const;
  std::vector<double> cell_centers() const;

 private:
  double length_;
  int cells_;
  double dy_;
};

/// Tridiagonal matrix rows; lower[0] and upper[n-1] are unused.
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;
};

/// (f_{k+1} - f_k)/dy on each cell. Exact for affine node fields.
std::vector<double> cell_gradient(std::span<const double> node_field, const Grid& grid);

/// [a_i (f_{i+1}-f_i) - a_{i-1} (f_i-f_{i-1})]/dy^2 on interior nodes i = 1..N-1
/// (returned with N-1 entries). `cell_coef` is typically 1/J.
std::vector<double> node_div_flux(std::span<const double> cell_coef,
                                  std::span<const double> node_field, const Grid& grid);

/// 1/J style coefficients moved to nodes: interior nodes take the average of the
/// two adjacent cells, boundary nodes the adjacent cell value (used only by the
/// Dirichlet ghost flux).
std::vector<double> face_coefficients(std::span<const double> cell_coef, const Grid& grid);

/// Conservative flux-difference d/dy(c d/dy f) on cells, homogeneous BCs:
/// Neumann as zero boundary flux, Dirichlet by ghost reflection about the wall.
std::vector<double> cell_div_flux(std::span<const double> face_coef,
                                  std::span<const double> cell_field, const Grid& grid,
                                  ThetaBC bc);

/// Matrix of node_div_flux acting on interior node values with zero end values.
Tridiagonal node_div_flux_matrix(std::span<const double> cell_coef, const Grid& grid);
/// Matrix of cell_div_flux acting on cell values.
Tridiagonal cell_div_flux_matrix(std::span<const double> face_coef, const Grid& grid, ThetaBC bc);

/// (f_k - f_{k-1})/dy at interior nodes k = 1..N-1 (N-1 entries).
std::vector<double> node_difference(std::span<const double> cell_field, const Grid& grid);

/// Midpoint rule dy * sum(cells).
double integrate(std::span<const double> cell_field, const Grid& grid);
/// Node values F_k = dy * sum_{i<k} f_i, F_0 = 0, F_N = integrate(f).
std::vector<double> cumulative_integral(std::span<const double> cell_field, const Grid& grid);
/// Trapezoid rule over the N+1 node samples.
double integrate_nodes(std::span<const double> node_field, const Grid& grid);

}  // namespace fmns
