#include "levybayes/fbp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace levybayes {

namespace {

constexpr double pi = std::numbers::pi;

// Parker weight for a short scan covering [0, span] with span ~ pi + 2*Gamma.
// beta is measured from the first source angle, gamma is the signed fan angle
// of the ray. Doubly measured rays get weights summing to one.
double parker_weight(double beta, double gamma, double span) {
    const double big_gamma = std::max(0.5 * (span - pi), 1e-6);
    const double g = std::clamp(gamma, -big_gamma + 1e-9, big_gamma - 1e-9);
    if (beta < 0.0) return 0.0;
    if (beta <= 2.0 * (big_gamma - g)) {
        const double s = std::sin(0.25 * pi * beta / (big_gamma - g));
        return s * s;
    }
    if (beta <= pi - 2.0 * g) return 1.0;
    if (beta <= pi + 2.0 * big_gamma) {
        const double s =
            std::sin(0.25 * pi * (pi + 2.0 * big_gamma - beta) / (big_gamma + g));
        return s * s;
    }
    return 0.0;
}

}  // namespace

Lattice2D fbp_reconstruct(const Vector& sinogram, const FanBeamGeometry& geom,
                          Eigen::Index nx, Eigen::Index ny, FbpFilter filter,
                          double fov) {
    geom.validate();
    if (sinogram.size() != geom.n_rays())
        throw std::invalid_argument("fbp_reconstruct: sinogram does not match geometry");
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("fbp_reconstruct: nx, ny must be >= 1");

    const auto n_angles = static_cast<Eigen::Index>(geom.angles_deg.size());
    const Eigen::Index n_pix = geom.n_detector_pixels;
    const double source_dist = geom.source_radius;

    // Rescale the detector to a virtual flat detector through the origin.
    const double magnification =
        geom.source_radius / (geom.source_radius + geom.detector_radius);
    const double ds = geom.detector_width / static_cast<double>(n_pix) * magnification;
    auto det_coord = [&](Eigen::Index ip) {
        return (static_cast<double>(ip) + 0.5 -
                0.5 * static_cast<double>(n_pix)) * ds;
    };

    // Spatial ramp filter taps; Hann is the frequency-domain window, which in
    // space is a three-tap smoothing of the Ram-Lak kernel.
    const auto n_taps = 2 * n_pix - 1;
    Vector ramp(n_taps);
    auto ramlak = [&](Eigen::Index k) {
        if (k == 0) return 1.0 / (4.0 * ds * ds);
        if (k % 2 == 0) return 0.0;
        return -1.0 / (pi * pi * static_cast<double>(k) * static_cast<double>(k) *
                       ds * ds);
    };
    for (Eigen::Index k = -(n_pix - 1); k <= n_pix - 1; ++k) {
        const Eigen::Index idx = k + n_pix - 1;
        const Eigen::Index mag = std::abs(k);
        if (filter == FbpFilter::RamLak) {
            ramp[idx] = ramlak(mag);
        } else {
            ramp[idx] = 0.5 * ramlak(mag) +
                        0.25 * (ramlak(std::abs(mag - 1)) + ramlak(mag + 1));
        }
    }

    // Per angle: cosine weight, then convolve with the ramp.
    Eigen::MatrixXd filtered(n_angles, n_pix);
    for (Eigen::Index ia = 0; ia < n_angles; ++ia) {
        Vector weighted(n_pix);
        for (Eigen::Index ip = 0; ip < n_pix; ++ip) {
            const double s = det_coord(ip);
            weighted[ip] = sinogram[ia * n_pix + ip] * source_dist /
                           std::sqrt(source_dist * source_dist + s * s);
        }
        for (Eigen::Index i = 0; i < n_pix; ++i) {
            double acc = 0.0;
            for (Eigen::Index j = 0; j < n_pix; ++j)
                acc += weighted[j] * ramp[i - j + n_pix - 1];
            filtered(ia, i) = acc * ds;
        }
    }

    const double first = geom.angles_deg.front() * pi / 180.0;
    const double last = geom.angles_deg.back() * pi / 180.0;
    const double span = last - first;
    const double dbeta = n_angles > 1 ? span / static_cast<double>(n_angles - 1)
                                      : 2.0 * pi;
    const bool full_scan = span >= 1.98 * pi;

    Lattice2D image(nx, ny, 2.0 * fov / static_cast<double>(nx),
                    2.0 * fov / static_cast<double>(ny));
    const double dx = image.h, dy = image.h_prime;

    for (Eigen::Index ia = 0; ia < n_angles; ++ia) {
        const double beta = geom.angles_deg[ia] * pi / 180.0;
        const double ct = std::cos(beta), st = std::sin(beta);
        for (Eigen::Index iy = 0; iy < ny; ++iy) {
            const double y = -fov + (static_cast<double>(iy) + 0.5) * dy;
            for (Eigen::Index ix = 0; ix < nx; ++ix) {
                const double x = -fov + (static_cast<double>(ix) + 0.5) * dx;
                const double u_dist = source_dist - (x * ct + y * st);
                if (u_dist <= 1e-9) continue;
                const double s_virt = source_dist * (-x * st + y * ct) / u_dist;
                const double pos = s_virt / ds + 0.5 * static_cast<double>(n_pix) - 0.5;
                const auto i0 = static_cast<Eigen::Index>(std::floor(pos));
                if (i0 < -1 || i0 > n_pix - 1) continue;
                const double frac = pos - static_cast<double>(i0);
                const double q0 = i0 >= 0 ? filtered(ia, i0) : 0.0;
                const double q1 = i0 + 1 < n_pix ? filtered(ia, i0 + 1) : 0.0;
                const double q = (1.0 - frac) * q0 + frac * q1;
                const double w =
                    full_scan ? 0.5
                              : parker_weight(beta - first,
                                              std::atan(s_virt / source_dist), span);
                image.at(ix, iy) += dbeta * w *
                                    (source_dist * source_dist / (u_dist * u_dist)) * q;
            }
        }
    }
    return image;
}

}  // namespace levybayes
