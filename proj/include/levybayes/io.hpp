// Plain-text artifact writers (PGM images, CSV tables) and small numeric
// helpers shared by the experiment drivers. All formats are deterministic:
// fixed %.12g fields, "\n" line endings.
#ifndef LEVYBAYES_IO_HPP
#define LEVYBAYES_IO_HPP

#include <string>
#include <vector>

#include "levybayes/grids.hpp"

namespace levybayes {

std::string format_number(double v);  // %.12g

struct PgmRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Plain (P2) PGM with the image linearly mapped from [min, max] onto
/// [0, maxval]; returns the range used.
PgmRange write_pgm(const std::string& path, const Lattice2D& image,
                   int maxval = 255);

/// Equal-length columns, comma separated, %.12g.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<Vector>& columns);

/// ||a - b||_2 / ||b||_2.
double relative_l2(const Vector& a, const Vector& b);

double rmse(const Vector& a, const Vector& b);

/// Linear resampling between endpoint grids t_i = i/(n-1) on [0, 1].
Vector resample_linear(const Vector& values, Eigen::Index n_target);

}  // namespace levybayes

#endif
