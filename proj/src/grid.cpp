#include "fmns/grid.hpp"

#include <cmath>
#include <string>

#include "fmns/error.hpp"
#include "fmns/kernels.hpp"

namespace fmns {

namespace {

void require_size(std::span<const double> field, std::size_t expected, const char* what) {
  if (field.size() != expected) {
    throw StructuralError(std::string(what) + ": expected " + std::to_string(expected) +
                          " values, got " + std::to_string(field.size()));
  }
}

void require_positive(std::span<const double> coef, const char* what) {
  for (double c : coef) {
    if (!(c > 0.0)) throw DegenerateJacobianError(std::string(what) + ": nonpositive coefficient");
  }
}

}  // namespace

bool dirichlet_left(ThetaBC bc) noexcept {
  return bc == ThetaBC::DirichletDirichlet || bc == ThetaBC::DirichletNeumann;
}

bool dirichlet_right(ThetaBC bc) noexcept {
  return bc == ThetaBC::DirichletDirichlet || bc == ThetaBC::NeumannDirichlet;
}

std::string_view to_string(ThetaBC bc) noexcept {
  switch (bc) {
    case ThetaBC::NeumannNeumann: return "neumann-neumann";
    case ThetaBC::DirichletDirichlet: return "dirichlet-dirichlet";
    case ThetaBC::DirichletNeumann: return "dirichlet-neumann";
    case ThetaBC::NeumannDirichlet: return "neumann-dirichlet";
  }
  return "neumann-neumann";
}

ThetaBC theta_bc_from_string(std::string_view name) {
  for (ThetaBC bc : {ThetaBC::NeumannNeumann, ThetaBC::DirichletDirichlet,
                     ThetaBC::DirichletNeumann, ThetaBC::NeumannDirichlet}) {
    if (to_string(bc) == name) return bc;
  }
  throw StructuralError("unknown temperature boundary condition '" + std::string(name) + "'");
}

Grid::Grid(double length, int cells) : length_(length), cells_(cells), dy_(0.0) {
  if (!(length > 0.0) || !std::isfinite(length)) throw StructuralError("grid length must be positive");
  if (cells < 1) throw StructuralError("grid needs at least one cell");
  dy_ = length / cells;
}

std::vector<double> Grid::node_coordinates() const {
  std::vector<double> y(nodes());
  for (int i = 0; i < nodes(); ++i) y[i] = node(i);
  y.back() = length_;
  return y;
}

std::vector<double> Grid::cell_centers() const {
  std::vector<double> y(cells_);
  for (int k = 0; k < cells_; ++k) y[k] = center(k);
  return y;
}

std::vector<double> cell_gradient(std::span<const double> node_field, const Grid& grid) {
  require_size(node_field, grid.nodes(), "cell_gradient");
  std::vector<double> out(grid.cells());
  kernels::cell_gradient(node_field, 1.0 / grid.dy(), out);
  return out;
}

std::vector<double> node_div_flux(std::span<const double> cell_coef,
                                  std::span<const double> node_field, const Grid& grid) {
  require_size(cell_coef, grid.cells(), "node_div_flux coefficient");
  require_size(node_field, grid.nodes(), "node_div_flux field");
  require_positive(cell_coef, "node_div_flux");
  std::vector<double> out(grid.cells() - 1);
  kernels::node_div_flux(cell_coef, node_field, 1.0 / (grid.dy() * grid.dy()), out);
  return out;
}

std::vector<double> face_coefficients(std::span<const double> cell_coef, const Grid& grid) {
  require_size(cell_coef, grid.cells(), "face_coefficients");
  std::vector<double> face(grid.nodes());
  kernels::face_average(cell_coef, face);
  return face;
}

std::vector<double> cell_div_flux(std::span<const double> face_coef,
                                  std::span<const double> cell_field, const Grid& grid,
                                  ThetaBC bc) {
  require_size(face_coef, grid.nodes(), "cell_div_flux coefficient");
  require_size(cell_field, grid.cells(), "cell_div_flux field");
  require_positive(face_coef, "cell_div_flux");
  std::vector<double> out(grid.cells());
  kernels::cell_div_flux(face_coef, cell_field, 1.0 / (grid.dy() * grid.dy()), dirichlet_left(bc),
                         dirichlet_right(bc), out);
  return out;
}

Tridiagonal node_div_flux_matrix(std::span<const double> cell_coef, const Grid& grid) {
  require_size(cell_coef, grid.cells(), "node_div_flux_matrix");
  require_positive(cell_coef, "node_div_flux_matrix");
  const std::size_t n = grid.cells() - 1;
  const double inv = 1.0 / (grid.dy() * grid.dy());
  Tridiagonal m{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                std::vector<double>(n, 0.0)};
  for (std::size_t j = 0; j < n; ++j) {
    const double left = cell_coef[j] * inv;
    const double right = cell_coef[j + 1] * inv;
    m.diag[j] = -(left + right);
    if (j > 0) m.lower[j] = left;
    if (j + 1 < n) m.upper[j] = right;
  }
  return m;
}

Tridiagonal cell_div_flux_matrix(std::span<const double> face_coef, const Grid& grid, ThetaBC bc) {
  require_size(face_coef, grid.nodes(), "cell_div_flux_matrix");
  require_positive(face_coef, "cell_div_flux_matrix");
  const std::size_t n = grid.cells();
  const double inv = 1.0 / (grid.dy() * grid.dy());
  Tridiagonal m{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                std::vector<double>(n, 0.0)};
  for (std::size_t k = 0; k < n; ++k) {
    double d = 0.0;
    if (k > 0) {
      m.lower[k] = face_coef[k] * inv;
      d -= face_coef[k] * inv;
    } else if (dirichlet_left(bc)) {
      d -= 2.0 * face_coef[0] * inv;
    }
    if (k + 1 < n) {
      m.upper[k] = face_coef[k + 1] * inv;
      d -= face_coef[k + 1] * inv;
    } else if (dirichlet_right(bc)) {
      d -= 2.0 * face_coef[n] * inv;
    }
    m.diag[k] = d;
  }
  return m;
}

std::vector<double> node_difference(std::span<const double> cell_field, const Grid& grid) {
  require_size(cell_field, grid.cells(), "node_difference");
  std::vector<double> out(grid.cells() - 1);
  const double inv = 1.0 / grid.dy();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (cell_field[i + 1] - cell_field[i]) * inv;
  return out;
}

double integrate(std::span<const double> cell_field, const Grid& grid) {
  require_size(cell_field, grid.cells(), "integrate");
  double sum = 0.0;
  for (double f : cell_field) sum += f;
  return sum * grid.dy();
}

std::vector<double> cumulative_integral(std::span<const double> cell_field, const Grid& grid) {
  require_size(cell_field, grid.cells(), "cumulative_integral");
  std::vector<double> out(grid.nodes(), 0.0);
  double sum = 0.0;
  for (int k = 0; k < grid.cells(); ++k) {
    sum += cell_field[k];
    out[k + 1] = sum * grid.dy();
  }
  return out;
}

double integrate_nodes(std::span<const double> node_field, const Grid& grid) {
  require_size(node_field, grid.nodes(), "integrate_nodes");
  double sum = 0.5 * (node_field.front() + node_field.back());
  for (std::size_t i = 1; i + 1 < node_field.size(); ++i) sum += node_field[i];
  return sum * grid.dy();
}

}  // namespace fmns
