// Filtered back-projection baseline for the flat-detector fan-beam geometry:
// cosine weighting, discrete ramp filtering (optionally Hann windowed) and
// distance-weighted backprojection. Short scans (angular span below a full
// turn) get Parker-style weights so doubly measured rays are not counted
// twice.
#ifndef LEVYBAYES_FBP_HPP
#define LEVYBAYES_FBP_HPP

#include "levybayes/forward_models.hpp"

namespace levybayes {

enum class FbpFilter { RamLak, Hann };

/// Reconstructs on the same [-fov, fov]^2 pixel grid the forward operator
/// uses. The sinogram is indexed row-major by (angle, detector pixel),
/// matching the forward operator's row ordering.
Lattice2D fbp_reconstruct(const Vector& sinogram, const FanBeamGeometry& geom,
                          Eigen::Index nx, Eigen::Index ny,
                          FbpFilter filter = FbpFilter::RamLak,
                          double fov = 1.0);

}  // namespace levybayes

#endif
