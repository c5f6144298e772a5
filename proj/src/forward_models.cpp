#include "levybayes/forward_models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace levybayes {

void FanBeamGeometry::validate() const {
    if (!(source_radius > 0.0) || !(detector_radius > 0.0) ||
        !(detector_width > 0.0))
        throw std::invalid_argument("FanBeamGeometry: lengths must be positive");
    if (n_detector_pixels < 1)
        throw std::invalid_argument("FanBeamGeometry: need at least one detector pixel");
    if (angles_deg.empty())
        throw std::invalid_argument("FanBeamGeometry: angle list is empty");
}

SparseOperator build_convolution_operator(Eigen::Index n, double kernel_width) {
    if (n < 2)
        throw std::invalid_argument("build_convolution_operator: n must be >= 2");
    if (!(kernel_width > 0.0) || !(kernel_width < 1.0))
        throw std::invalid_argument(
            "build_convolution_operator: kernel_width must be in (0, 1)");

    const double h = 1.0 / static_cast<double>(n - 1);
    const double half = 0.5 * kernel_width;
    const auto band = static_cast<Eigen::Index>(std::floor(half / h + 1e-12));

    // Normalize against the same quadrature used for the rows, so a constant
    // signal maps to itself away from the boundary.
    double quad = 1.0;  // k = 0 term
    for (Eigen::Index k = 1; k <= band; ++k)
        quad += 2.0 * std::cos(std::numbers::pi * k * h / kernel_width);
    const double norm = 1.0 / (quad * h);

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(n * (2 * band + 1)));
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index j_lo = std::max<Eigen::Index>(0, i - band);
        const Eigen::Index j_hi = std::min<Eigen::Index>(n - 1, i + band);
        for (Eigen::Index j = j_lo; j <= j_hi; ++j) {
            const double s = static_cast<double>(i - j) * h;
            const double v =
                norm * std::cos(std::numbers::pi * s / kernel_width) * h;
            entries.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
        }
    }
    SparseOperator op(n, n);
    op.setFromTriplets(entries.begin(), entries.end());
    op.makeCompressed();
    return op;
}

namespace {

// Clip the segment p(t) = a + t*(b - a), t in [0, 1], against the square
// [-fov, fov]^2. Returns false when the segment misses it.
bool clip_to_square(double ax, double ay, double bx, double by, double fov,
                    double& t0, double& t1) {
    t0 = 0.0;
    t1 = 1.0;
    const double d[2] = {bx - ax, by - ay};
    const double p[2] = {ax, ay};
    for (int axis = 0; axis < 2; ++axis) {
        if (d[axis] == 0.0) {
            if (p[axis] < -fov || p[axis] > fov) return false;
            continue;
        }
        double lo = (-fov - p[axis]) / d[axis];
        double hi = (fov - p[axis]) / d[axis];
        if (lo > hi) std::swap(lo, hi);
        t0 = std::max(t0, lo);
        t1 = std::min(t1, hi);
        if (t0 >= t1) return false;
    }
    return true;
}

}  // namespace

SparseOperator build_fanbeam_operator(const FanBeamGeometry& geom,
                                      Eigen::Index nx, Eigen::Index ny,
                                      double fov, ProjectorReport* report) {
    geom.validate();
    if (nx < 1 || ny < 1)
        throw std::invalid_argument("build_fanbeam_operator: nx, ny must be >= 1");
    if (!(fov > 0.0))
        throw std::invalid_argument("build_fanbeam_operator: fov must be positive");

    const Eigen::Index n_angles = static_cast<Eigen::Index>(geom.angles_deg.size());
    const Eigen::Index n_pix = geom.n_detector_pixels;
    const double pitch = geom.detector_width / static_cast<double>(n_pix);
    const double dx = 2.0 * fov / static_cast<double>(nx);
    const double dy = 2.0 * fov / static_cast<double>(ny);
    Eigen::Index empty = 0;

    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(geom.n_rays() * (nx + ny)));

    for (Eigen::Index ia = 0; ia < n_angles; ++ia) {
        const double theta = geom.angles_deg[ia] * std::numbers::pi / 180.0;
        const double ct = std::cos(theta), st = std::sin(theta);
        const double sx = geom.source_radius * ct;
        const double sy = geom.source_radius * st;
        const double cx = -geom.detector_radius * ct;
        const double cy = -geom.detector_radius * st;
        // Detector axis, perpendicular to the source-origin line.
        const double ux = -st, uy = ct;

        for (Eigen::Index ip = 0; ip < n_pix; ++ip) {
            const double offset =
                (static_cast<double>(ip) + 0.5) * pitch - 0.5 * geom.detector_width;
            const double ex = cx + offset * ux;
            const double ey = cy + offset * uy;
            const Eigen::Index row = ia * n_pix + ip;

            double t0, t1;
            if (!clip_to_square(sx, sy, ex, ey, fov, t0, t1)) {
                ++empty;
                continue;
            }
            const double rx = ex - sx, ry = ey - sy;
            const double ray_len = std::hypot(rx, ry);

            // Amanatides-Woo traversal from t0 to t1.
            const double px = sx + t0 * rx, py = sy + t0 * ry;
            auto cell = [](double coord, double lo, double step,
                           Eigen::Index count) {
                auto c = static_cast<Eigen::Index>(std::floor((coord - lo) / step));
                return std::clamp<Eigen::Index>(c, 0, count - 1);
            };
            Eigen::Index ix = cell(px, -fov, dx, nx);
            Eigen::Index iy = cell(py, -fov, dy, ny);
            const Eigen::Index step_x = rx > 0.0 ? 1 : -1;
            const Eigen::Index step_y = ry > 0.0 ? 1 : -1;
            const double inf = std::numeric_limits<double>::infinity();
            const double t_dx = rx != 0.0 ? dx / std::abs(rx) : inf;
            const double t_dy = ry != 0.0 ? dy / std::abs(ry) : inf;
            double t_next_x = inf, t_next_y = inf;
            if (rx != 0.0) {
                const double bound = -fov + (ix + (step_x > 0 ? 1 : 0)) * dx;
                t_next_x = (bound - sx) / rx;
            }
            if (ry != 0.0) {
                const double bound = -fov + (iy + (step_y > 0 ? 1 : 0)) * dy;
                t_next_y = (bound - sy) / ry;
            }

            double t = t0;
            const Eigen::Index max_steps = nx + ny + 4;
            for (Eigen::Index step = 0; step < max_steps && t < t1; ++step) {
                const double t_exit = std::min({t_next_x, t_next_y, t1});
                const double len = (t_exit - t) * ray_len;
                if (len > 0.0)
                    entries.emplace_back(static_cast<int>(row),
                                         static_cast<int>(iy * nx + ix), len);
                t = t_exit;
                if (t >= t1) break;
                if (t_next_x <= t_next_y) {
                    ix += step_x;
                    t_next_x += t_dx;
                    if (ix < 0 || ix >= nx) break;
                } else {
                    iy += step_y;
                    t_next_y += t_dy;
                    if (iy < 0 || iy >= ny) break;
                }
            }
        }
    }

    if (report) report->empty_rows = empty;
    SparseOperator op(geom.n_rays(), nx * ny);
    op.setFromTriplets(entries.begin(), entries.end());
    op.makeCompressed();
    return op;
}

Vector apply(const SparseOperator& op, const Vector& x) {
    if (x.size() != op.cols())
        throw std::invalid_argument("apply: vector length does not match operator");
    return op * x;
}

NoisyData add_noise(const Vector& m_clean, double level, RandomStream& rng) {
    if (!(level > 0.0))
        throw std::invalid_argument("add_noise: level must be positive");
    const double peak = m_clean.cwiseAbs().maxCoeff();
    if (!(peak > 0.0))
        throw std::invalid_argument("add_noise: measurement vector is identically zero");
    NoisyData out;
    out.noise.stddev = level * peak;
    out.m = m_clean;
    for (Eigen::Index i = 0; i < out.m.size(); ++i)
        out.m[i] += out.noise.stddev * rng.gaussian();
    return out;
}

void write_sparse_triplets(std::ostream& os, const SparseOperator& op) {
    os << "sparse-triplet " << op.rows() << ' ' << op.cols() << ' '
       << op.nonZeros() << '\n';
    char buf[64];
    for (Eigen::Index col = 0; col < op.outerSize(); ++col) {
        for (SparseOperator::InnerIterator it(op, col); it; ++it) {
            std::snprintf(buf, sizeof(buf), "%lld %lld %.17g\n",
                          static_cast<long long>(it.row()),
                          static_cast<long long>(col), it.value());
            os << buf;
        }
    }
}

}  // namespace levybayes
