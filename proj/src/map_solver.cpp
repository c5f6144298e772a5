#include "levybayes/map_solver.hpp"

#include <cmath>

namespace levybayes {

namespace {

void require_differentiable(const Posterior& post) {
    if (post.include_prior && post.prior.family == PriorFamily::TV)
        throw std::invalid_argument(
            "map_estimate: TV prior is not differentiable; only Cauchy and "
            "Gaussian priors are supported");
}

// Matrix-free application of the majorizer Hessian
//     H v = sigma^-2 A^T (A v) + 2 L^T (w .* (L v)).
struct MajorizerSystem {
    const Posterior& post;
    const DifferenceOperator& diff;
    double inv_var = 0.0;
    Vector weights;

    Vector apply(const Vector& v) const {
        Vector out = Vector::Zero(v.size());
        if (post.include_likelihood)
            out += inv_var * (post.op.transpose() * (post.op * v));
        if (post.include_prior) {
            Vector d = diff.matrix * v;
            d.array() *= 2.0 * weights.array();
            out += diff.matrix.transpose() * d;
        }
        return out;
    }

    Vector diagonal() const {
        Vector diag = Vector::Zero(post.layout.size());
        if (post.include_likelihood) {
            for (Eigen::Index col = 0; col < post.op.outerSize(); ++col) {
                double acc = 0.0;
                for (SparseOperator::InnerIterator it(post.op, col); it; ++it)
                    acc += it.value() * it.value();
                diag[col] += inv_var * acc;
            }
        }
        if (post.include_prior) {
            for (Eigen::Index col = 0; col < diff.matrix.outerSize(); ++col)
                for (SparseOperator::InnerIterator it(diff.matrix, col); it; ++it)
                    diag[col] += 2.0 * weights[it.row()] * it.value() * it.value();
        }
        return diag;
    }
};

// Jacobi-preconditioned conjugate gradients with a relative-residual stop.
Vector pcg_solve(const MajorizerSystem& system, const Vector& rhs,
                 const Vector& guess, double tol, Eigen::Index max_iters) {
    Vector inv_diag = system.diagonal();
    for (Eigen::Index i = 0; i < inv_diag.size(); ++i)
        inv_diag[i] = inv_diag[i] > 0.0 ? 1.0 / inv_diag[i] : 1.0;

    Vector x = guess;
    Vector r = rhs - system.apply(x);
    const double stop = tol * rhs.norm();
    if (r.norm() <= stop) return x;
    Vector z = inv_diag.cwiseProduct(r);
    Vector p = z;
    double rz = r.dot(z);
    for (Eigen::Index iter = 0; iter < max_iters; ++iter) {
        const Vector q = system.apply(p);
        const double pq = p.dot(q);
        if (!(pq > 0.0)) break;  // loss of positive definiteness in float
        const double alpha = rz / pq;
        x += alpha * p;
        r -= alpha * q;
        if (r.norm() <= stop) break;
        z = inv_diag.cwiseProduct(r);
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    return x;
}

}  // namespace

double negative_log_posterior(const Vector& x, const Posterior& post) {
    return -log_posterior(x, post);
}

Vector nlp_gradient(const Vector& x, const Posterior& post) {
    post.validate();
    require_differentiable(post);
    Vector grad = Vector::Zero(x.size());
    if (post.include_likelihood) {
        const Vector r = post.op * x - post.data;
        grad += post.op.transpose() * r / (post.noise.stddev * post.noise.stddev);
    }
    if (post.include_prior) {
        const auto diff = build_difference_operator(post.layout, post.prior);
        const Vector d = diff.matrix * x;
        Vector g(d.size());
        if (post.prior.family == PriorFamily::Cauchy) {
            for (Eigen::Index j = 0; j < d.size(); ++j) {
                const double s = diff.scales[j];
                g[j] = 2.0 * d[j] / (s * s + d[j] * d[j]);
            }
        } else {  // Gaussian
            for (Eigen::Index j = 0; j < d.size(); ++j) {
                const double s = diff.scales[j];
                g[j] = d[j] / (2.0 * s * s);
            }
        }
        grad += diff.matrix.transpose() * g;
    }
    return grad;
}

MapResult map_estimate(const Posterior& post, const Vector& init,
                       const MapConfig& cfg) {
    post.validate();
    cfg.validate();
    require_differentiable(post);
    if (init.size() != post.layout.size())
        throw std::invalid_argument("map_estimate: init length does not match layout");

    MapResult result;
    result.x = init;
    double objective = negative_log_posterior(result.x, post);
    if (!std::isfinite(objective))
        throw SolverError("map_estimate: objective not finite at init", {});
    result.trace.push_back(objective);

    DifferenceOperator diff;
    if (post.include_prior) diff = build_difference_operator(post.layout, post.prior);
    MajorizerSystem system{post, diff, 0.0, Vector()};
    Vector rhs = Vector::Zero(init.size());
    if (post.include_likelihood) {
        system.inv_var = 1.0 / (post.noise.stddev * post.noise.stddev);
        rhs = system.inv_var * (post.op.transpose() * post.data);
    }

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        const Vector grad = nlp_gradient(result.x, post);
        result.grad_inf_norm = grad.cwiseAbs().maxCoeff();
        if (result.grad_inf_norm < cfg.grad_tol) {
            result.converged = true;
            break;
        }

        // Quadratic majorizer weights at the current iterate. For the
        // Gaussian prior this is the exact (constant) curvature.
        if (post.include_prior) {
            const Vector d = system.diff.matrix * result.x;
            system.weights.resize(d.size());
            if (post.prior.family == PriorFamily::Cauchy) {
                for (Eigen::Index j = 0; j < d.size(); ++j) {
                    const double s = system.diff.scales[j];
                    system.weights[j] = 1.0 / (s * s + d[j] * d[j]);
                }
            } else {
                for (Eigen::Index j = 0; j < d.size(); ++j) {
                    const double s = system.diff.scales[j];
                    system.weights[j] = 1.0 / (4.0 * s * s);
                }
            }
        }

        const Vector target =
            pcg_solve(system, rhs, result.x, cfg.linear_solver_tol,
                      20 * init.size());
        const Vector direction = target - result.x;

        double step = 1.0;
        double candidate_objective = objective;
        Vector candidate = result.x;
        bool improved = false;
        for (int bt = 0; bt <= cfg.ls_max_backtracks; ++bt) {
            candidate = result.x + step * direction;
            candidate_objective = negative_log_posterior(candidate, post);
            if (std::isfinite(candidate_objective) &&
                candidate_objective <= objective) {
                improved = true;
                break;
            }
            step *= cfg.ls_shrink;
        }
        if (!improved) {
            if (!std::isfinite(candidate_objective))
                throw SolverError("map_estimate: objective diverged", result.trace);
            break;  // stagnated at float resolution; keep the current iterate
        }

        result.x = candidate;
        objective = candidate_objective;
        result.trace.push_back(objective);
        result.iterations = iter + 1;
    }
    return result;
}

}  // namespace levybayes
