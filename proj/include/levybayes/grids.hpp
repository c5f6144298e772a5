// Discretization containers shared by priors, samplers and experiments.
#ifndef LEVYBAYES_GRIDS_HPP
#define LEVYBAYES_GRIDS_HPP

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <stdexcept>

namespace levybayes {

using Vector = Eigen::VectorXd;
using SparseOperator = Eigen::SparseMatrix<double>;

/// Regular 1D grid of n points with step h.
struct Grid1D {
    Eigen::Index n = 0;
    double h = 1.0;
    Vector values;

    Grid1D() = default;
    Grid1D(Eigen::Index n_, double h_) : n(n_), h(h_), values(Vector::Zero(n_)) {
        validate();
    }
    Grid1D(double h_, Vector values_)
        : n(values_.size()), h(h_), values(std::move(values_)) {
        validate();
    }

    void validate() const {
        if (n < 1 || values.size() != n)
            throw std::invalid_argument("Grid1D: values length must equal n >= 1");
        if (!(h > 0.0))
            throw std::invalid_argument("Grid1D: step must be positive");
    }
};

/// Rectangular lattice, row-major storage: values[iy*nx + ix].
/// Step h along x (index ix), h_prime along y (index iy).
struct Lattice2D {
    Eigen::Index nx = 0;
    Eigen::Index ny = 0;
    double h = 1.0;
    double h_prime = 1.0;
    Vector values;

    Lattice2D() = default;
    Lattice2D(Eigen::Index nx_, Eigen::Index ny_, double h_, double h_prime_)
        : nx(nx_), ny(ny_), h(h_), h_prime(h_prime_),
          values(Vector::Zero(nx_ * ny_)) {
        validate();
    }
    Lattice2D(Eigen::Index nx_, Eigen::Index ny_, double h_, double h_prime_,
              Vector values_)
        : nx(nx_), ny(ny_), h(h_), h_prime(h_prime_), values(std::move(values_)) {
        validate();
    }

    double& at(Eigen::Index ix, Eigen::Index iy) { return values[iy * nx + ix]; }
    double at(Eigen::Index ix, Eigen::Index iy) const { return values[iy * nx + ix]; }

    void validate() const {
        if (nx < 1 || ny < 1 || values.size() != nx * ny)
            throw std::invalid_argument("Lattice2D: values length must equal nx*ny");
        if (!(h > 0.0) || !(h_prime > 0.0))
            throw std::invalid_argument("Lattice2D: steps must be positive");
    }
};

/// Shape descriptor used where a flat state vector stands for a grid or a
/// lattice. ny == 1 means one-dimensional semantics with step h.
struct Layout {
    Eigen::Index nx = 0;
    Eigen::Index ny = 1;
    double h = 1.0;
    double h_prime = 1.0;

    static Layout of(const Grid1D& g) { return {g.n, 1, g.h, 1.0}; }
    static Layout of(const Lattice2D& l) { return {l.nx, l.ny, l.h, l.h_prime}; }

    Eigen::Index size() const { return nx * ny; }
    bool is_1d() const { return ny == 1; }
};

}  // namespace levybayes

#endif
