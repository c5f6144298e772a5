// Ground-truth generators: the Shepp-Logan phantom on [-1, 1]^2 and a
// piecewise-constant 1D signal on [0, 1].
#ifndef LEVYBAYES_PHANTOMS_HPP
#define LEVYBAYES_PHANTOMS_HPP

#include "levybayes/grids.hpp"

namespace levybayes {

enum class SheppLoganVariant { Modified, Classic };

/// Rasterizes the ten-ellipse Shepp-Logan table by pixel-center sampling;
/// the modified (Toft) intensity table is the default.
Lattice2D shepp_logan(Eigen::Index nx, Eigen::Index ny,
                      SheppLoganVariant variant = SheppLoganVariant::Modified);

/// Piecewise-constant test signal on [0, 1]: levels 0, 1, 0.3, -0.5, 0 with
/// breakpoints 0.15, 0.35, 0.6, 0.85 (half-open intervals).
double piecewise_signal_value(double t);

/// Samples the signal on the endpoint grid t_i = i/(n-1); values at shared
/// abscissas are independent of n.
Grid1D piecewise_signal_1d(Eigen::Index n);

}  // namespace levybayes

#endif
