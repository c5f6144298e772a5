#include "levybayes/priors.hpp"

namespace levybayes {

double walk_increment_scale(double alpha, double reg, double h) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::invalid_argument("walk_increment_scale: alpha out of (0, 2]");
    if (!(reg > 0.0) || !(h > 0.0))
        throw std::invalid_argument("walk_increment_scale: reg and h must be positive");
    if (alpha == 1.0) return reg * h;
    if (alpha == 2.0) return reg * std::sqrt(h);
    return reg * std::pow(h, 1.0 / alpha);
}

double scale_for_direction(double alpha, double reg, double h_along,
                           double h_perp) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::invalid_argument("scale_for_direction: alpha out of (0, 2]");
    if (!(reg > 0.0) || !(h_along > 0.0) || !(h_perp > 0.0))
        throw std::invalid_argument("scale_for_direction: arguments must be positive");
    if (alpha == 1.0) return reg * h_along;
    if (alpha == 2.0) return reg * std::sqrt(h_along / h_perp);
    return reg * std::pow(h_along, 1.0 / alpha) *
           std::pow(h_perp, -(alpha - 1.0) / alpha);
}

namespace detail {

DirectionScales direction_scales(const Layout& layout, const PriorModel& prior) {
    prior.validate();
    DirectionScales s;
    if (prior.family == PriorFamily::TV) return s;  // TV uses reg directly
    const double alpha = prior.family == PriorFamily::Cauchy ? 1.0 : 2.0;
    if (layout.ny == 1) {
        s.along_x = walk_increment_scale(alpha, prior.reg, layout.h);
    } else if (layout.nx == 1) {
        s.along_y = walk_increment_scale(alpha, prior.reg, layout.h_prime);
    } else {
        s.along_x = scale_for_direction(alpha, prior.reg, layout.h, layout.h_prime);
        s.along_y = scale_for_direction(alpha, prior.reg, layout.h_prime, layout.h);
    }
    return s;
}

}  // namespace detail

double log_prior(const Vector& values, const Layout& layout,
                 const PriorModel& prior) {
    if (values.size() != layout.size())
        throw std::invalid_argument("log_prior: state size does not match layout");
    if (layout.size() < 2)
        throw std::invalid_argument("log_prior: need at least two sites");
    const auto scales = detail::direction_scales(layout, prior);
    const bool zero_bc = prior.boundary == BoundaryRule::Zero;
    const Eigen::Index nx = layout.nx, ny = layout.ny;

    double total = 0.0;
    // Increments along x (step h), one chain per row. A single-column lattice
    // is a chain along y and carries no x increments, phantom or otherwise.
    if (nx > 1 || (zero_bc && ny == 1)) {
        for (Eigen::Index iy = 0; iy < ny; ++iy) {
            const double* row = values.data() + iy * nx;
            if (zero_bc)
                total += detail::increment_term(prior.family, scales.along_x,
                                                prior.reg, row[0]);
            for (Eigen::Index ix = 1; ix < nx; ++ix)
                total += detail::increment_term(prior.family, scales.along_x,
                                                prior.reg, row[ix] - row[ix - 1]);
        }
    }
    // Increments along y (step h_prime), one chain per column.
    if (ny > 1) {
        for (Eigen::Index ix = 0; ix < nx; ++ix) {
            if (zero_bc)
                total += detail::increment_term(prior.family, scales.along_y,
                                                prior.reg, values[ix]);
            for (Eigen::Index iy = 1; iy < ny; ++iy)
                total += detail::increment_term(
                    prior.family, scales.along_y, prior.reg,
                    values[iy * nx + ix] - values[(iy - 1) * nx + ix]);
        }
    }
    return total;
}

double log_prior(const Grid1D& x, const PriorModel& prior) {
    x.validate();
    return log_prior(x.values, Layout::of(x), prior);
}

double log_prior(const Lattice2D& x, const PriorModel& prior) {
    x.validate();
    return log_prior(x.values, Layout::of(x), prior);
}

double delta_log_prior(const Vector& values, const Layout& layout,
                       const PriorModel& prior, Eigen::Index site,
                       double new_value) {
    if (site < 0 || site >= layout.size())
        throw std::out_of_range("delta_log_prior: site index out of range");
    const auto scales = detail::direction_scales(layout, prior);
    const bool zero_bc = prior.boundary == BoundaryRule::Zero;
    const Eigen::Index nx = layout.nx, ny = layout.ny;
    const Eigen::Index ix = site % nx, iy = site / nx;
    const double old_value = values[site];
    const auto family = prior.family;
    const double reg = prior.reg;

    double delta = 0.0;
    // Along x: incoming increment from the left neighbor (or phantom zero)
    // and outgoing increment to the right neighbor.
    if (ix > 0) {
        const double left = values[site - 1];
        delta += detail::increment_term(family, scales.along_x, reg, new_value - left) -
                 detail::increment_term(family, scales.along_x, reg, old_value - left);
    } else if (zero_bc && (nx > 1 || ny == 1)) {
        delta += detail::increment_term(family, scales.along_x, reg, new_value) -
                 detail::increment_term(family, scales.along_x, reg, old_value);
    }
    if (ix < nx - 1) {
        const double right = values[site + 1];
        delta += detail::increment_term(family, scales.along_x, reg, right - new_value) -
                 detail::increment_term(family, scales.along_x, reg, right - old_value);
    }
    // Along y, for genuine lattices.
    if (ny > 1) {
        if (iy > 0) {
            const double up = values[site - nx];
            delta += detail::increment_term(family, scales.along_y, reg, new_value - up) -
                     detail::increment_term(family, scales.along_y, reg, old_value - up);
        } else if (zero_bc) {
            delta += detail::increment_term(family, scales.along_y, reg, new_value) -
                     detail::increment_term(family, scales.along_y, reg, old_value);
        }
        if (iy < ny - 1) {
            const double down = values[site + nx];
            delta += detail::increment_term(family, scales.along_y, reg, down - new_value) -
                     detail::increment_term(family, scales.along_y, reg, down - old_value);
        }
    }
    return delta;
}

double delta_log_prior(const Grid1D& x, const PriorModel& prior,
                       Eigen::Index site, double new_value) {
    return delta_log_prior(x.values, Layout::of(x), prior, site, new_value);
}

double delta_log_prior(const Lattice2D& x, const PriorModel& prior,
                       Eigen::Index site, double new_value) {
    return delta_log_prior(x.values, Layout::of(x), prior, site, new_value);
}

DifferenceOperator build_difference_operator(const Layout& layout,
                                             const PriorModel& prior) {
    const auto scales = detail::direction_scales(layout, prior);
    const bool zero_bc = prior.boundary == BoundaryRule::Zero;
    const Eigen::Index nx = layout.nx, ny = layout.ny;

    std::vector<Eigen::Triplet<double>> entries;
    std::vector<double> row_scales;
    Eigen::Index row = 0;
    auto push = [&](Eigen::Index to, Eigen::Index from, double scale) {
        entries.emplace_back(static_cast<int>(row), static_cast<int>(to), 1.0);
        if (from >= 0)
            entries.emplace_back(static_cast<int>(row), static_cast<int>(from), -1.0);
        row_scales.push_back(scale);
        ++row;
    };

    if (nx > 1 || (zero_bc && ny == 1)) {
        for (Eigen::Index iy = 0; iy < ny; ++iy) {
            if (zero_bc) push(iy * nx, -1, scales.along_x);
            for (Eigen::Index ix = 1; ix < nx; ++ix)
                push(iy * nx + ix, iy * nx + ix - 1, scales.along_x);
        }
    }
    if (ny > 1) {
        for (Eigen::Index ix = 0; ix < nx; ++ix) {
            if (zero_bc) push(ix, -1, scales.along_y);
            for (Eigen::Index iy = 1; iy < ny; ++iy)
                push(iy * nx + ix, (iy - 1) * nx + ix, scales.along_y);
        }
    }

    DifferenceOperator diff;
    diff.matrix = SparseOperator(row, layout.size());
    diff.matrix.setFromTriplets(entries.begin(), entries.end());
    diff.matrix.makeCompressed();
    diff.scales = Eigen::Map<const Vector>(row_scales.data(),
                                           static_cast<Eigen::Index>(row_scales.size()));
    return diff;
}

double conditional_site_density(double a, double x) {
    const double u = x - a;
    const double v = x + a;
    return 1.0 / ((1.0 + u * u) * (1.0 + v * v));
}

ModalityReport analyze_modality(double a) {
    // With g(x) = (1+(x-a)^2)(1+(x+a)^2) = (1+x^2+a^2)^2 - 4a^2x^2 and
    // D = 1/g, D''(0) = -g''(0)/g(0)^2 = 4(a^2-1)/(1+a^2)^4. Stationary
    // points solve x(1 + x^2 - a^2) = 0.
    ModalityReport report;
    const double a2 = a * a;
    const double denom = 1.0 + a2;
    report.second_derivative_at_zero =
        4.0 * (a2 - 1.0) / (denom * denom * denom * denom);
    const double mag = std::abs(a);
    if (mag < 1.0) {
        report.classification = Modality::Unimodal;
        report.modes = {0.0};
    } else if (mag == 1.0) {
        report.classification = Modality::Flat;
        report.modes = {0.0};
    } else {
        report.classification = Modality::Bimodal;
        const double m = std::sqrt(a2 - 1.0);
        report.modes = {-m, m};
    }
    return report;
}

}  // namespace levybayes
