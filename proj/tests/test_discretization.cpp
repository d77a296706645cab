#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fmns/error.hpp"
#include "fmns/grid.hpp"
#include "fmns/tridiagonal.hpp"
#include "oracles.hpp"

using namespace fmns;

namespace {

std::vector<double> apply(const Tridiagonal& m, const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = m.diag[i] * x[i];
    if (i > 0) y[i] += m.lower[i] * x[i - 1];
    if (i + 1 < n) y[i] += m.upper[i] * x[i + 1];
  }
  return y;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid geometry and argument checks") {
  const Grid g(2.0, 4);
  CHECK(g.dy() == 0.5);
  CHECK(g.nodes() == 5);
  CHECK(g.node(4) == 2.0);
  CHECK(g.center(0) == 0.25);
  CHECK_THROWS_AS(Grid(1.0, 0), StructuralError);
  CHECK_THROWS_AS(Grid(-1.0, 4), StructuralError);
}

TEST_CASE("bc names round-trip") {
  for (auto bc : {ThetaBC::NeumannNeumann, ThetaBC::DirichletDirichlet, ThetaBC::DirichletNeumann,
                  ThetaBC::NeumannDirichlet}) {
    CHECK(theta_bc_from_string(to_string(bc)) == bc);
  }
  CHECK(theta_bc_from_string("dirichlet-neumann") == ThetaBC::DirichletNeumann);
  CHECK(dirichlet_left(ThetaBC::DirichletNeumann));
  CHECK_FALSE(dirichlet_right(ThetaBC::DirichletNeumann));
  CHECK_THROWS(theta_bc_from_string("robin"));
}

TEST_CASE("cell_gradient is exact on affine node fields") {
  const Grid g(1.0, 10);
  std::vector<double> f(g.nodes());
  for (int i = 0; i < g.nodes(); ++i) f[i] = 3.0 * g.node(i) - 1.0;
  for (double d : cell_gradient(f, g)) CHECK(d == doctest::Approx(3.0).epsilon(1e-14));
  CHECK_THROWS_AS(cell_gradient(std::vector<double>(3), g), StructuralError);
}

TEST_CASE("operators agree with their matrices") {
  const Grid g(1.0, 12);
  std::vector<double> coef(g.cells()), cells(g.cells()), nodes(g.nodes(), 0.0);
  for (int k = 0; k < g.cells(); ++k) {
    coef[k] = 1.0 + 0.3 * std::sin(7.0 * k);
    cells[k] = std::cos(1.7 * k);
  }
  for (int i = 1; i < g.cells(); ++i) nodes[i] = std::sin(0.9 * i);
  const std::vector<double> interior(nodes.begin() + 1, nodes.end() - 1);
  CHECK(sup_diff(node_div_flux(coef, nodes, g), apply(node_div_flux_matrix(coef, g), interior)) < 1e-10);

  const auto face = face_coefficients(coef, g);
  for (auto bc : {ThetaBC::NeumannNeumann, ThetaBC::DirichletDirichlet, ThetaBC::DirichletNeumann,
                  ThetaBC::NeumannDirichlet}) {
    CHECK(sup_diff(cell_div_flux(face, cells, g, bc), apply(cell_div_flux_matrix(face, g, bc), cells)) < 1e-10);
  }
}

TEST_CASE("Neumann cell operator is conservative") {
  const Grid g(1.0, 30);
  std::vector<double> face(g.nodes()), f(g.cells());
  for (int i = 0; i < g.nodes(); ++i) face[i] = 1.0 + g.node(i);
  for (int k = 0; k < g.cells(); ++k) f[k] = std::exp(g.center(k));
  CHECK(std::abs(integrate(cell_div_flux(face, f, g, ThetaBC::NeumannNeumann), g)) < 1e-12);
}

TEST_CASE("cell operator converges at second order") {
  // d/dy((1+y) d/dy cos(pi y)) with Neumann walls
  const auto error = [](int n) {
    const Grid g(1.0, n);
    const double pi = std::numbers::pi;
    std::vector<double> face(g.nodes()), f(g.cells());
    for (int i = 0; i < g.nodes(); ++i) face[i] = 1.0 + g.node(i);
    for (int k = 0; k < g.cells(); ++k) f[k] = std::cos(pi * g.center(k));
    const auto d = cell_div_flux(face, f, g, ThetaBC::NeumannNeumann);
    double e = 0.0;
    for (int k = 0; k < g.cells(); ++k) {
      const double y = g.center(k);
      const double exact = -pi * std::sin(pi * y) - (1.0 + y) * pi * pi * std::cos(pi * y);
      e = std::max(e, std::abs(d[k] - exact));
    }
    return e;
  };
  const double ratio = error(40) / error(80);
  CHECK(ratio > 3.0);
}

TEST_CASE("quadratures") {
  const Grid g(2.0, 4);
  const std::vector<double> f{1.0, 2.0, 3.0, 4.0};
  CHECK(integrate(f, g) == 5.0);
  CHECK(cumulative_integral(f, g) == std::vector<double>{0.0, 0.5, 1.5, 3.0, 5.0});
  CHECK(integrate_nodes(std::vector<double>{0.0, 1.0, 1.0, 1.0, 0.0}, g) == 1.5);
  CHECK(node_difference(f, g) == std::vector<double>{2.0, 2.0, 2.0});
}

TEST_CASE("nonpositive coefficients are rejected") {
  const Grid g(1.0, 3);
  CHECK_THROWS_AS(node_div_flux(std::vector<double>{1.0, 0.0, 1.0}, std::vector<double>(4, 0.0), g),
                  DegenerateJacobianError);
}

TEST_CASE("tridiagonal solver matches dense elimination") {
  const std::size_t n = 17;
  std::vector<double> lo(n), di(n), up(n), rhs(n);
  oracle::Matrix a = oracle::zeros(n);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = i > 0 ? -1.0 - 0.1 * static_cast<double>(i % 3) : 0.0;
    up[i] = i + 1 < n ? -0.5 : 0.0;
    di[i] = 3.0 + std::sin(static_cast<double>(i));
    rhs[i] = std::cos(static_cast<double>(i));
    a[i][i] = di[i];
    if (i > 0) a[i][i - 1] = lo[i];
    if (i + 1 < n) a[i][i + 1] = up[i];
  }
  CHECK(sup_diff(solve_tridiagonal(lo, di, up, rhs), oracle::solve(a, rhs)) < 1e-13);
  CHECK_THROWS_AS(solve_tridiagonal(std::vector<double>{0.0}, std::vector<double>{0.0},
                                    std::vector<double>{0.0}, std::vector<double>{1.0}),
                  NumericalError);
  CHECK_THROWS_AS(solve_tridiagonal(lo, di, up, std::vector<double>(3)), StructuralError);
}
