#pragma once

// Pointwise stencil kernels on the staggered grid.
//
// Every kernel exists twice: an OpenMP version in `fmns::kernels` and a plain
// loop in `fmns::kernels::serial`. Both evaluate the same expression per
// output element, so their results are bitwise identical for any thread
// count. The serial versions are kept as the reference for tests and the
// benchmark; the library calls the OpenMP versions.
//
// Layout: N cells, N+1 nodes. Cell k lies between nodes k and k+1.

#include <cstddef>
#include <span>

namespace fmns::kernels {

/// Below this many outputs the OpenMP kernels run on the calling thread.
inline constexpr std::size_t kParallelMinSize = 8192;

/// out[k] = (node[k+1] - node[k]) * inv_dy, k = 0..N-1.
void cell_gradient(std::span<const double> node, double inv_dy, std::span<double> out);

/// Interior nodes i = 1..N-1, written to out[i-1]:
///   (coef[i] (f[i+1]-f[i]) - coef[i-1] (f[i]-f[i-1])) * inv_dy2
void node_div_flux(std::span<const double> coef, std::span<const double> f, double inv_dy2,
                   std::span<double> out);

/// Conservative cell operator (F[k+1] - F[k]) * inv_dy2 with
/// F[i] = face[i] (f[i] - f[i-1]) at interior nodes. A boundary face is either
/// zero flux (Neumann) or uses the reflected ghost value -f (homogeneous Dirichlet).
void cell_div_flux(std::span<const double> face, std::span<const double> f, double inv_dy2,
                   bool dirichlet_left, bool dirichlet_right, std::span<double> out);

/// Node values from cells: interior nodes average the two neighbours,
/// boundary nodes copy the adjacent cell.
void face_average(std::span<const double> cell, std::span<double> face);

namespace serial {

void cell_gradient(std::span<const double> node, double inv_dy, std::span<double> out);
void node_div_flux(std::span<const double> coef, std::span<const double> f, double inv_dy2,
                   std::span<double> out);
void cell_div_flux(std::span<const double> face, std::span<const double> f, double inv_dy2,
                   bool dirichlet_left, bool dirichlet_right, std::span<double> out);
void face_average(std::span<const double> cell, std::span<double> face);

}  // namespace serial

}  // namespace fmns::kernels
