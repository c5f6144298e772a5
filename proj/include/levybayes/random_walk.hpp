// Alpha-stable random-walk realizations in 1D and approximate 2D prior
// realizations drawn with the prior-only single-component MH chain.
#ifndef LEVYBAYES_RANDOM_WALK_HPP
#define LEVYBAYES_RANDOM_WALK_HPP

#include "levybayes/priors.hpp"
#include "levybayes/stable.hpp"

namespace levybayes {

/// Walk starting from zero with iid increments S_alpha(h^(1/alpha), beta, 0).
Grid1D simulate_walk_1d(double alpha, double beta, double h, Eigen::Index n,
                        RandomStream& rng);

struct PriorRealization {
    Lattice2D lattice;
    double acceptance_rate = 0.0;  // over the whole chain
};

/// Approximate draw from a 2D difference prior: runs the single-component MH
/// chain with the likelihood disabled, zero boundary, zero initial state, and
/// returns the final sweep's state. Deterministic given the seed.
PriorRealization sample_prior_2d(const PriorModel& prior, Eigen::Index nx,
                                 Eigen::Index ny, double h, double h_prime,
                                 Eigen::Index sweeps, std::uint64_t seed);

}  // namespace levybayes

#endif
