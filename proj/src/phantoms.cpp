#include "levybayes/phantoms.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace levybayes {

namespace {

struct Ellipse {
    double intensity;
    double a, b;       // semi-axes
    double x0, y0;     // center
    double phi_deg;    // rotation
};

// Standard Shepp-Logan geometry; intensity column per variant.
constexpr std::array<Ellipse, 10> kModified = {{
    {1.00, 0.6900, 0.9200, 0.00, 0.0000, 0.0},
    {-0.80, 0.6624, 0.8740, 0.00, -0.0184, 0.0},
    {-0.20, 0.1100, 0.3100, 0.22, 0.0000, -18.0},
    {-0.20, 0.1600, 0.4100, -0.22, 0.0000, 18.0},
    {0.10, 0.2100, 0.2500, 0.00, 0.3500, 0.0},
    {0.10, 0.0460, 0.0460, 0.00, 0.1000, 0.0},
    {0.10, 0.0460, 0.0460, 0.00, -0.1000, 0.0},
    {0.10, 0.0460, 0.0230, -0.08, -0.6050, 0.0},
    {0.10, 0.0230, 0.0230, 0.00, -0.6060, 0.0},
    {0.10, 0.0230, 0.0460, 0.06, -0.6050, 0.0},
}};

constexpr std::array<double, 10> kClassicIntensity = {
    1.0, -0.98, -0.02, -0.02, 0.01, 0.01, 0.01, 0.01, 0.01, 0.01};

}  // namespace

Lattice2D shepp_logan(Eigen::Index nx, Eigen::Index ny,
                      SheppLoganVariant variant) {
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("shepp_logan: nx, ny must be >= 1");
    Lattice2D image(nx, ny, 2.0 / static_cast<double>(nx),
                    2.0 / static_cast<double>(ny));
    for (std::size_t e = 0; e < kModified.size(); ++e) {
        const Ellipse& el = kModified[e];
        const double intensity = variant == SheppLoganVariant::Modified
                                     ? el.intensity
                                     : kClassicIntensity[e];
        const double phi = el.phi_deg * std::numbers::pi / 180.0;
        const double c = std::cos(phi), s = std::sin(phi);
        for (Eigen::Index iy = 0; iy < ny; ++iy) {
            const double y = -1.0 + (static_cast<double>(iy) + 0.5) * image.h_prime;
            for (Eigen::Index ix = 0; ix < nx; ++ix) {
                const double x = -1.0 + (static_cast<double>(ix) + 0.5) * image.h;
                const double dx = x - el.x0, dy = y - el.y0;
                const double u = (c * dx + s * dy) / el.a;
                const double v = (-s * dx + c * dy) / el.b;
                if (u * u + v * v <= 1.0) image.at(ix, iy) += intensity;
            }
        }
    }
    return image;
}

double piecewise_signal_value(double t) {
    if (t < 0.15) return 0.0;
    if (t < 0.35) return 1.0;
    if (t < 0.60) return 0.3;
    if (t < 0.85) return -0.5;
    return 0.0;
}

Grid1D piecewise_signal_1d(Eigen::Index n) {
    if (n < 2)
        throw std::invalid_argument("piecewise_signal_1d: n must be >= 2");
    Grid1D signal(n, 1.0 / static_cast<double>(n - 1));
    for (Eigen::Index i = 0; i < n; ++i)
        signal.values[i] =
            piecewise_signal_value(static_cast<double>(i) * signal.h);
    return signal;
}

}  // namespace levybayes
