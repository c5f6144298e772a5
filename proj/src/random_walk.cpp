#include "levybayes/random_walk.hpp"

#include "levybayes/samplers.hpp"

namespace levybayes {

Grid1D simulate_walk_1d(double alpha, double beta, double h, Eigen::Index n,
                        RandomStream& rng) {
    if (n < 1)
        throw std::invalid_argument("simulate_walk_1d: n must be >= 1");
    const StableParams increment(alpha, beta, walk_increment_scale(alpha, 1.0, h),
                                 0.0);
    Grid1D walk(n, h);
    walk.values[0] = 0.0;
    for (Eigen::Index j = 1; j < n; ++j)
        walk.values[j] = walk.values[j - 1] + sample_stable(increment, rng);
    return walk;
}

PriorRealization sample_prior_2d(const PriorModel& prior, Eigen::Index nx,
                                 Eigen::Index ny, double h, double h_prime,
                                 Eigen::Index sweeps, std::uint64_t seed) {
    if (sweeps < 1)
        throw std::invalid_argument("sample_prior_2d: sweeps must be >= 1");
    prior.validate();

    Posterior post;
    post.include_likelihood = false;
    post.prior = prior;
    post.prior.boundary = BoundaryRule::Zero;
    post.layout = {nx, ny, h, h_prime};

    ChainOptions opt;
    opt.thin = sweeps;  // keep the final state only
    opt.burn_in_fraction = 0.5;

    const Chain chain = scmh_run(post, Vector::Zero(nx * ny), sweeps, opt, seed);
    PriorRealization out;
    out.lattice = Lattice2D(nx, ny, h, h_prime, chain.samples.back());
    out.acceptance_rate = chain.overall_acceptance();
    return out;
}

}  // namespace levybayes
