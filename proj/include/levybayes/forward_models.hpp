// Discretized linear forward maps: 1D convolution on the unit interval and
// 2D fan-beam tomography on [-fov, fov]^2, plus the Gaussian noise model.
// Operators are column-major sparse so single-site updates can read one
// column in O(nnz).
#ifndef LEVYBAYES_FORWARD_MODELS_HPP
#define LEVYBAYES_FORWARD_MODELS_HPP

#include <Eigen/SparseCore>
#include <iosfwd>
#include <vector>

#include "levybayes/grids.hpp"
#include "levybayes/stable.hpp"

namespace levybayes {

/// Fan-beam acquisition: source on a circle of radius source_radius, flat
/// detector of detector_width centered diametrically opposite at
/// detector_radius, perpendicular to the source-origin line. Rays join the
/// source to detector pixel centers. Angles are source positions in degrees.
struct FanBeamGeometry {
    double source_radius = 4.0;
    double detector_radius = 2.0;
    double detector_width = 3.0;
    Eigen::Index n_detector_pixels = 200;
    std::vector<double> angles_deg;

    Eigen::Index n_rays() const {
        return static_cast<Eigen::Index>(angles_deg.size()) * n_detector_pixels;
    }
    void validate() const;
};

/// Diagonal Gaussian measurement noise with a common standard deviation.
struct NoiseModel {
    double stddev = 1.0;
    void validate() const {
        if (!(stddev > 0.0))
            throw std::invalid_argument("NoiseModel: stddev must be positive");
    }
};

struct ProjectorReport {
    Eigen::Index empty_rows = 0;  // rays that miss the image entirely
};

/// Convolution with a cosine bump kernel cos(pi*s/w) supported on |s| <= w/2,
/// sampled on the endpoint grid t_i = i/(n-1) of [0, 1] and normalized so
/// that interior row sums are exactly one.
SparseOperator build_convolution_operator(Eigen::Index n, double kernel_width);

/// One row per (angle, detector pixel); entries are exact ray-pixel
/// intersection lengths from an incremental parametric grid traversal.
/// The image is nx-by-ny pixels covering [-fov, fov]^2, row-major.
SparseOperator build_fanbeam_operator(const FanBeamGeometry& geom,
                                      Eigen::Index nx, Eigen::Index ny,
                                      double fov = 1.0,
                                      ProjectorReport* report = nullptr);

/// Matrix-vector product with a dimension check.
Vector apply(const SparseOperator& op, const Vector& x);

struct NoisyData {
    Vector m;
    NoiseModel noise;
};

/// Additive white noise at a relative level: stddev = level * max|m_clean|.
NoisyData add_noise(const Vector& m_clean, double level, RandomStream& rng);

/// Debug export: header "sparse-triplet <rows> <cols> <nnz>" followed by one
/// "row col value" line per stored entry, column-major order.
void write_sparse_triplets(std::ostream& os, const SparseOperator& op);

}  // namespace levybayes

#endif
