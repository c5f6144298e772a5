// Single-component Metropolis-Hastings over the posterior, with O(nnz(col))
// incremental residual updates, proposal-scale adaptation toward the 25-50%
// acceptance band during burn-in, thinning, and CM estimation.
#ifndef LEVYBAYES_SAMPLERS_HPP
#define LEVYBAYES_SAMPLERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "levybayes/forward_models.hpp"
#include "levybayes/priors.hpp"

namespace levybayes {

/// Everything needed to evaluate the unnormalized posterior. The include_*
/// switches turn either factor off (prior-only chains drive 2D realizations;
/// likelihood-only chains are used in sanity tests).
struct Posterior {
    SparseOperator op;
    Vector data;
    NoiseModel noise;
    PriorModel prior;
    Layout layout;
    bool include_likelihood = true;
    bool include_prior = true;

    void validate() const;
};

struct ChainOptions {
    Eigen::Index thin = 10;            // store every thin-th post-sweep state
    double burn_in_fraction = 0.5;     // of the planned sweep count
    Eigen::Index adapt_every = 50;     // sweeps per adaptation window
    double adapt_factor = 1.5;
    double accept_low = 0.25;
    double accept_high = 0.5;
    double initial_sigma = 1.0;
    bool random_scan = false;          // default: fixed raster order
    Eigen::Index check_every = 1000;   // full-recompute consistency cadence

    void validate() const;
};

/// MCMC run record plus the exact state needed to resume a run.
struct Chain {
    std::vector<Vector> samples;
    Eigen::Index burn_in = 0;  // first retained sample index
    ChainOptions options;
    std::uint64_t seed = 0;

    Eigen::VectorX<std::int64_t> accept_counts;
    Eigen::VectorX<std::int64_t> propose_counts;
    Vector proposal_sigmas;

    // Resume state.
    Vector state;
    Vector residual;  // data - A*state when the likelihood is on
    double log_posterior = 0.0;
    Eigen::Index sweeps_done = 0;
    Eigen::Index planned_sweeps = 0;
    Eigen::Index burn_in_sweeps = 0;
    std::string rng_state;
    Eigen::VectorX<std::int64_t> window_accepts;
    Eigen::VectorX<std::int64_t> window_proposes;

    // Largest relative drift seen at the periodic consistency checks.
    double max_logpost_drift = 0.0;
    double max_residual_drift = 0.0;

    double acceptance_rate(Eigen::Index site) const {
        return propose_counts[site] > 0
                   ? static_cast<double>(accept_counts[site]) /
                         static_cast<double>(propose_counts[site])
                   : 0.0;
    }
    double overall_acceptance() const {
        const auto p = propose_counts.sum();
        return p > 0 ? static_cast<double>(accept_counts.sum()) /
                           static_cast<double>(p)
                     : 0.0;
    }
};

/// Change in log-likelihood for moving one site by delta, computed from the
/// cached residual r = data - A*x and the site's operator column:
///     -1/(2 sigma^2) * sum over column entries of ((r - v*delta)^2 - r^2).
double delta_log_likelihood(const Vector& residual, const SparseOperator& op,
                            Eigen::Index site, double delta,
                            const NoiseModel& noise);

/// Writes the residual entries back after an accepted move: r -= delta*col.
void apply_residual_update(Vector& residual, const SparseOperator& op,
                           Eigen::Index site, double delta);

/// Full log-posterior evaluation (used at init and for drift checks).
double log_posterior(const Vector& x, const Posterior& post);

/// Sets up a chain at `init` without advancing it. planned_sweeps fixes the
/// burn-in and adaptation horizon.
Chain scmh_init(const Posterior& post, const Vector& init,
                Eigen::Index planned_sweeps, const ChainOptions& options,
                std::uint64_t seed);

/// Advances the chain by `sweeps` full passes over the sites.
void scmh_advance(const Posterior& post, Chain& chain, Eigen::Index sweeps);

/// init + advance in one call.
Chain scmh_run(const Posterior& post, const Vector& init, Eigen::Index sweeps,
               const ChainOptions& options, std::uint64_t seed);

/// One adaptation pass over the per-site windows: acceptance above the band
/// grows the proposal sigma by adapt_factor, below shrinks it; counters reset.
void adapt_proposals(Chain& chain);

/// Ensemble mean of the retained (post burn-in) samples.
Vector cm_estimate(const Chain& chain);

/// Text checkpoint with exact (hex-float) state for bit-identical resumes.
void save_chain(std::ostream& os, const Chain& chain);
void save_chain(const std::string& path, const Chain& chain);
Chain load_chain(std::istream& is);
Chain load_chain(const std::string& path);

}  // namespace levybayes

#endif
