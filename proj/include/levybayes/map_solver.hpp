// MAP estimation by majorize-minimize Gauss-Newton iteration on the negative
// log-posterior. Each Cauchy increment term log(scale^2 + d^2) is majorized
// by a quadratic with weight 1/(scale^2 + d^2) at the current iterate; the
// resulting SPD systems are solved with conjugate gradients and a
// backtracking line search keeps the objective trace nonincreasing.
#ifndef LEVYBAYES_MAP_SOLVER_HPP
#define LEVYBAYES_MAP_SOLVER_HPP

#include <stdexcept>
#include <vector>

#include "levybayes/samplers.hpp"

namespace levybayes {

struct MapConfig {
    int max_iters = 50;
    double grad_tol = 1e-6;        // stop when ||grad||_inf falls below
    double ls_shrink = 0.5;        // backtracking shrink factor
    int ls_max_backtracks = 30;
    double linear_solver_tol = 1e-12;  // CG relative residual; the inner
                                       // systems are badly scaled by 1/sigma^2,
                                       // so keep this well below grad_tol

    void validate() const {
        if (max_iters < 1 || ls_max_backtracks < 1)
            throw std::invalid_argument("MapConfig: iteration counts must be >= 1");
        if (!(grad_tol > 0.0) || !(linear_solver_tol > 0.0))
            throw std::invalid_argument("MapConfig: tolerances must be positive");
        if (!(ls_shrink > 0.0) || !(ls_shrink < 1.0))
            throw std::invalid_argument("MapConfig: ls_shrink must be in (0, 1)");
    }
};

struct MapResult {
    Vector x;
    std::vector<double> trace;  // objective per iteration, nonincreasing
    int iterations = 0;
    bool converged = false;
    double grad_inf_norm = 0.0;
};

/// Thrown when the objective turns non-finite; carries the trace so far.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::vector<double> trace_)
        : std::runtime_error(what), trace(std::move(trace_)) {}
    std::vector<double> trace;
};

/// 1/(2 sigma^2) ||m - Ax||^2 - log_prior(x), constants dropped.
double negative_log_posterior(const Vector& x, const Posterior& post);

/// Analytic gradient of negative_log_posterior (Cauchy and Gaussian priors;
/// TV is not differentiable and is rejected).
Vector nlp_gradient(const Vector& x, const Posterior& post);

MapResult map_estimate(const Posterior& post, const Vector& init,
                       const MapConfig& cfg);

}  // namespace levybayes

#endif
