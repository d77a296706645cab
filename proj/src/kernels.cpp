#include "fmns/kernels.hpp"

#include <cstdint>

namespace fmns::kernels {

namespace {

inline double boundary_flux_left(std::span<const double> face, std::span<const double> f,
                                 bool dirichlet) {
  return dirichlet ? face[0] * 2.0 * f[0] : 0.0;
}

inline double boundary_flux_right(std::span<const double> face, std::span<const double> f,
                                  bool dirichlet) {
  const std::size_t n = f.size();
  return dirichlet ? -face[n] * 2.0 * f[n - 1] : 0.0;
}

inline double cell_div_flux_at(std::span<const double> face, std::span<const double> f,
                               double inv_dy2, bool dl, bool dr, std::size_t k) {
  const std::size_t n = f.size();
  const double left = k == 0 ? boundary_flux_left(face, f, dl) : face[k] * (f[k] - f[k - 1]);
  const double right =
      k + 1 == n ? boundary_flux_right(face, f, dr) : face[k + 1] * (f[k + 1] - f[k]);
  return (right - left) * inv_dy2;
}

}  // namespace

void cell_gradient(std::span<const double> node, double inv_dy, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (out.size() >= kParallelMinSize)
  for (std::int64_t k = 0; k < n; ++k) {
    out[k] = (node[k + 1] - node[k]) * inv_dy;
  }
}

void node_div_flux(std::span<const double> coef, std::span<const double> f, double inv_dy2,
                   std::span<double> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (out.size() >= kParallelMinSize)
  for (std::int64_t j = 0; j < n; ++j) {
    const std::int64_t i = j + 1;
    out[j] = (coef[i] * (f[i + 1] - f[i]) - coef[i - 1] * (f[i] - f[i - 1])) * inv_dy2;
  }
}

void cell_div_flux(std::span<const double> face, std::span<const double> f, double inv_dy2,
                   bool dirichlet_left, bool dirichlet_right, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (out.size() >= kParallelMinSize)
  for (std::int64_t k = 0; k < n; ++k) {
    out[k] = cell_div_flux_at(face, f, inv_dy2, dirichlet_left, dirichlet_right,
                              static_cast<std::size_t>(k));
  }
}

void face_average(std::span<const double> cell, std::span<double> face) {
  const auto n = static_cast<std::int64_t>(cell.size());
  face[0] = cell[0];
  face[static_cast<std::size_t>(n)] = cell[static_cast<std::size_t>(n - 1)];
#pragma omp parallel for schedule(static) if (cell.size() >= kParallelMinSize)
  for (std::int64_t i = 1; i < n; ++i) {
    face[i] = 0.5 * (cell[i - 1] + cell[i]);
  }
}

namespace serial {

void cell_gradient(std::span<const double> node, double inv_dy, std::span<double> out) {
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = (node[k + 1] - node[k]) * inv_dy;
}

void node_div_flux(std::span<const double> coef, std::span<const double> f, double inv_dy2,
                   std::span<double> out) {
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::size_t i = j + 1;
    out[j] = (coef[i] * (f[i + 1] - f[i]) - coef[i - 1] * (f[i] - f[i - 1])) * inv_dy2;
  }
}

void cell_div_flux(std::span<const double> face, std::span<const double> f, double inv_dy2,
                   bool dirichlet_left, bool dirichlet_right, std::span<double> out) {
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = cell_div_flux_at(face, f, inv_dy2, dirichlet_left, dirichlet_right, k);
  }
}

void face_average(std::span<const double> cell, std::span<double> face) {
  const std::size_t n = cell.size();
  face[0] = cell[0];
  face[n] = cell[n - 1];
  for (std::size_t i = 1; i < n; ++i) face[i] = 0.5 * (cell[i - 1] + cell[i]);
}

}  // namespace serial

}  // namespace fmns::kernels
