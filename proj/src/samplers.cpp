#include "levybayes/samplers.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace levybayes {

void Posterior::validate() const {
    if (layout.nx < 1 || layout.ny < 1)
        throw std::invalid_argument("Posterior: empty layout");
    if (include_prior) prior.validate();
    if (include_likelihood) {
        noise.validate();
        if (op.cols() != layout.size())
            throw std::invalid_argument("Posterior: operator columns do not match layout");
        if (op.rows() != data.size())
            throw std::invalid_argument("Posterior: operator rows do not match data");
    }
    if (!include_likelihood && !include_prior)
        throw std::invalid_argument("Posterior: likelihood and prior both disabled");
}

void ChainOptions::validate() const {
    if (thin < 1) throw std::invalid_argument("ChainOptions: thin must be >= 1");
    if (!(burn_in_fraction >= 0.0) || !(burn_in_fraction <= 1.0))
        throw std::invalid_argument("ChainOptions: burn_in_fraction must be in [0, 1]");
    if (adapt_every < 1)
        throw std::invalid_argument("ChainOptions: adapt_every must be >= 1");
    if (!(adapt_factor > 1.0))
        throw std::invalid_argument("ChainOptions: adapt_factor must exceed 1");
    if (!(accept_low > 0.0) || !(accept_high > accept_low) || !(accept_high < 1.0))
        throw std::invalid_argument("ChainOptions: bad acceptance band");
    if (!(initial_sigma > 0.0))
        throw std::invalid_argument("ChainOptions: initial_sigma must be positive");
    if (check_every < 1)
        throw std::invalid_argument("ChainOptions: check_every must be >= 1");
}

double delta_log_likelihood(const Vector& residual, const SparseOperator& op,
                            Eigen::Index site, double delta,
                            const NoiseModel& noise) {
    if (site < 0 || site >= op.cols())
        throw std::out_of_range("delta_log_likelihood: site out of range");
    double acc = 0.0;
    for (SparseOperator::InnerIterator it(op, site); it; ++it) {
        const double vd = it.value() * delta;
        acc += vd * (vd - 2.0 * residual[it.row()]);
    }
    return -acc / (2.0 * noise.stddev * noise.stddev);
}

void apply_residual_update(Vector& residual, const SparseOperator& op,
                           Eigen::Index site, double delta) {
    for (SparseOperator::InnerIterator it(op, site); it; ++it)
        residual[it.row()] -= it.value() * delta;
}

double log_posterior(const Vector& x, const Posterior& post) {
    double lp = 0.0;
    if (post.include_likelihood) {
        const Vector r = post.data - post.op * x;
        lp -= r.squaredNorm() / (2.0 * post.noise.stddev * post.noise.stddev);
    }
    if (post.include_prior) lp += log_prior(x, post.layout, post.prior);
    return lp;
}

Chain scmh_init(const Posterior& post, const Vector& init,
                Eigen::Index planned_sweeps, const ChainOptions& options,
                std::uint64_t seed) {
    post.validate();
    options.validate();
    if (init.size() != post.layout.size())
        throw std::invalid_argument("scmh_init: init length does not match layout");
    if (planned_sweeps < 1)
        throw std::invalid_argument("scmh_init: need at least one sweep");

    Chain chain;
    chain.options = options;
    chain.seed = seed;
    chain.state = init;
    chain.planned_sweeps = planned_sweeps;
    chain.burn_in_sweeps = static_cast<Eigen::Index>(
        options.burn_in_fraction * static_cast<double>(planned_sweeps));
    const Eigen::Index k = init.size();
    chain.accept_counts = Eigen::VectorX<std::int64_t>::Zero(k);
    chain.propose_counts = Eigen::VectorX<std::int64_t>::Zero(k);
    chain.window_accepts = Eigen::VectorX<std::int64_t>::Zero(k);
    chain.window_proposes = Eigen::VectorX<std::int64_t>::Zero(k);
    chain.proposal_sigmas = Vector::Constant(k, options.initial_sigma);
    if (post.include_likelihood) chain.residual = post.data - post.op * init;
    chain.log_posterior = log_posterior(init, post);
    if (!std::isfinite(chain.log_posterior))
        throw std::runtime_error("scmh_init: log-posterior is not finite at the initial state");
    chain.rng_state = RandomStream(seed).state();
    return chain;
}

void adapt_proposals(Chain& chain) {
    const auto& opt = chain.options;
    for (Eigen::Index i = 0; i < chain.proposal_sigmas.size(); ++i) {
        if (chain.window_proposes[i] == 0) continue;
        const double rate = static_cast<double>(chain.window_accepts[i]) /
                            static_cast<double>(chain.window_proposes[i]);
        if (rate > opt.accept_high)
            chain.proposal_sigmas[i] *= opt.adapt_factor;
        else if (rate < opt.accept_low)
            chain.proposal_sigmas[i] /= opt.adapt_factor;
    }
    chain.window_accepts.setZero();
    chain.window_proposes.setZero();
}

void scmh_advance(const Posterior& post, Chain& chain, Eigen::Index sweeps) {
    post.validate();
    const Eigen::Index k = chain.state.size();
    if (k != post.layout.size())
        throw std::invalid_argument("scmh_advance: chain does not match posterior");
    RandomStream rng(0);
    rng.set_state(chain.rng_state);
    const auto& opt = chain.options;

    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) order[static_cast<std::size_t>(i)] = i;

    const Eigen::Index last = chain.sweeps_done + sweeps;
    for (Eigen::Index sweep = chain.sweeps_done; sweep < last; ++sweep) {
        // Proposal scales are frozen once burn-in ends so the retained
        // samples come from a fixed transition kernel.
        if (sweep > 0 && sweep < chain.burn_in_sweeps &&
            sweep % opt.adapt_every == 0)
            adapt_proposals(chain);

        if (opt.random_scan) {
            for (Eigen::Index i = k - 1; i > 0; --i) {
                const auto j = static_cast<Eigen::Index>(
                    rng.uniform01() * static_cast<double>(i + 1));
                std::swap(order[static_cast<std::size_t>(i)],
                          order[static_cast<std::size_t>(std::min(j, i))]);
            }
        }

        for (Eigen::Index idx = 0; idx < k; ++idx) {
            const Eigen::Index site = order[static_cast<std::size_t>(idx)];
            const double old_value = chain.state[site];
            const double new_value =
                old_value + chain.proposal_sigmas[site] * rng.gaussian();
            double log_ratio = 0.0;
            if (post.include_prior)
                log_ratio += delta_log_prior(chain.state, post.layout, post.prior,
                                             site, new_value);
            if (post.include_likelihood)
                log_ratio += delta_log_likelihood(chain.residual, post.op, site,
                                                  new_value - old_value, post.noise);
            ++chain.propose_counts[site];
            ++chain.window_proposes[site];
            // Symmetric Gaussian proposal: the q-ratio cancels exactly.
            const double u = rng.uniform01();
            if (std::log(u) < log_ratio) {
                if (post.include_likelihood)
                    apply_residual_update(chain.residual, post.op, site,
                                          new_value - old_value);
                chain.state[site] = new_value;
                chain.log_posterior += log_ratio;
                ++chain.accept_counts[site];
                ++chain.window_accepts[site];
            }
        }

        if ((sweep + 1) % opt.check_every == 0) {
            const double fresh = log_posterior(chain.state, post);
            const double drift = std::abs(fresh - chain.log_posterior) /
                                 std::max(1.0, std::abs(fresh));
            chain.max_logpost_drift = std::max(chain.max_logpost_drift, drift);
            chain.log_posterior = fresh;
            if (post.include_likelihood) {
                const Vector exact = post.data - post.op * chain.state;
                const double rdrift = (exact - chain.residual).cwiseAbs().maxCoeff();
                chain.max_residual_drift =
                    std::max(chain.max_residual_drift, rdrift);
                chain.residual = exact;
            }
        }

        if ((sweep + 1) % opt.thin == 0) chain.samples.push_back(chain.state);
    }

    chain.sweeps_done = last;
    chain.burn_in = std::min<Eigen::Index>(
        chain.burn_in_sweeps / opt.thin,
        static_cast<Eigen::Index>(chain.samples.size()));
    chain.rng_state = rng.state();
}

Chain scmh_run(const Posterior& post, const Vector& init, Eigen::Index sweeps,
               const ChainOptions& options, std::uint64_t seed) {
    Chain chain = scmh_init(post, init, sweeps, options, seed);
    scmh_advance(post, chain, sweeps);
    return chain;
}

Vector cm_estimate(const Chain& chain) {
    const auto total = static_cast<Eigen::Index>(chain.samples.size());
    if (chain.burn_in >= total)
        throw std::runtime_error("cm_estimate: no retained samples after burn-in");
    Vector mean = Vector::Zero(chain.samples.front().size());
    for (Eigen::Index i = chain.burn_in; i < total; ++i) mean += chain.samples[i];
    mean /= static_cast<double>(total - chain.burn_in);
    return mean;
}

namespace {

void write_hex_vector(std::ostream& os, const char* tag, const Vector& v) {
    os << tag << ' ' << v.size();
    char buf[48];
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof(buf), " %a", v[i]);
        os << buf;
    }
    os << '\n';
}

void write_int_vector(std::ostream& os, const char* tag,
                      const Eigen::VectorX<std::int64_t>& v) {
    os << tag << ' ' << v.size();
    for (Eigen::Index i = 0; i < v.size(); ++i) os << ' ' << v[i];
    os << '\n';
}

Vector read_hex_vector(std::istream& is, const std::string& expect) {
    std::string tag;
    Eigen::Index n = 0;
    is >> tag >> n;
    if (tag != expect || n < 0)
        throw std::runtime_error("load_chain: expected field " + expect);
    Vector v(n);
    std::string word;
    for (Eigen::Index i = 0; i < n; ++i) {
        is >> word;
        v[i] = std::strtod(word.c_str(), nullptr);
    }
    return v;
}

Eigen::VectorX<std::int64_t> read_int_vector(std::istream& is,
                                             const std::string& expect) {
    std::string tag;
    Eigen::Index n = 0;
    is >> tag >> n;
    if (tag != expect || n < 0)
        throw std::runtime_error("load_chain: expected field " + expect);
    Eigen::VectorX<std::int64_t> v(n);
    for (Eigen::Index i = 0; i < n; ++i) is >> v[i];
    return v;
}

}  // namespace

void save_chain(std::ostream& os, const Chain& chain) {
    const auto& o = chain.options;
    os << "levybayes-chain 1\n";
    os << "seed " << chain.seed << '\n';
    os << "sweeps " << chain.sweeps_done << ' ' << chain.planned_sweeps << ' '
       << chain.burn_in_sweeps << '\n';
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "options %lld %a %lld %a %a %a %a %d %lld\n",
                  static_cast<long long>(o.thin), o.burn_in_fraction,
                  static_cast<long long>(o.adapt_every), o.adapt_factor,
                  o.accept_low, o.accept_high, o.initial_sigma,
                  o.random_scan ? 1 : 0, static_cast<long long>(o.check_every));
    os << buf;
    std::snprintf(buf, sizeof(buf), "logpost %a\ndrift %a %a\n",
                  chain.log_posterior, chain.max_logpost_drift,
                  chain.max_residual_drift);
    os << buf;
    os << "rng " << chain.rng_state << '\n';
    write_hex_vector(os, "sigmas", chain.proposal_sigmas);
    write_int_vector(os, "accepts", chain.accept_counts);
    write_int_vector(os, "proposes", chain.propose_counts);
    write_int_vector(os, "window_accepts", chain.window_accepts);
    write_int_vector(os, "window_proposes", chain.window_proposes);
    write_hex_vector(os, "state", chain.state);
    write_hex_vector(os, "residual", chain.residual);
    os << "samples " << chain.samples.size() << '\n';
    for (const auto& s : chain.samples) write_hex_vector(os, "sample", s);
}

void save_chain(const std::string& path, const Chain& chain) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_chain: cannot open " + path);
    save_chain(os, chain);
}

Chain load_chain(std::istream& is) {
    std::string tag, version;
    is >> tag >> version;
    if (tag != "levybayes-chain" || version != "1")
        throw std::runtime_error("load_chain: unrecognized checkpoint header");
    Chain chain;
    is >> tag >> chain.seed;
    is >> tag >> chain.sweeps_done >> chain.planned_sweeps >> chain.burn_in_sweeps;
    std::string word;
    auto read_double = [&]() {
        is >> word;
        return std::strtod(word.c_str(), nullptr);
    };
    is >> tag >> chain.options.thin;
    chain.options.burn_in_fraction = read_double();
    is >> chain.options.adapt_every;
    chain.options.adapt_factor = read_double();
    chain.options.accept_low = read_double();
    chain.options.accept_high = read_double();
    chain.options.initial_sigma = read_double();
    int random_scan = 0;
    is >> random_scan >> chain.options.check_every;
    chain.options.random_scan = random_scan != 0;
    is >> tag;
    chain.log_posterior = read_double();
    is >> tag;
    chain.max_logpost_drift = read_double();
    chain.max_residual_drift = read_double();
    is >> tag;
    std::getline(is, chain.rng_state);
    if (!chain.rng_state.empty() && chain.rng_state.front() == ' ')
        chain.rng_state.erase(0, 1);
    chain.proposal_sigmas = read_hex_vector(is, "sigmas");
    chain.accept_counts = read_int_vector(is, "accepts");
    chain.propose_counts = read_int_vector(is, "proposes");
    chain.window_accepts = read_int_vector(is, "window_accepts");
    chain.window_proposes = read_int_vector(is, "window_proposes");
    chain.state = read_hex_vector(is, "state");
    chain.residual = read_hex_vector(is, "residual");
    std::size_t count = 0;
    is >> tag >> count;
    if (tag != "samples") throw std::runtime_error("load_chain: expected samples");
    chain.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        chain.samples.push_back(read_hex_vector(is, "sample"));
    if (is.fail()) throw std::runtime_error("load_chain: truncated checkpoint");
    chain.burn_in = std::min<Eigen::Index>(
        chain.burn_in_sweeps / chain.options.thin,
        static_cast<Eigen::Index>(chain.samples.size()));
    return chain;
}

Chain load_chain(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_chain: cannot open " + path);
    return load_chain(is);
}

}  // namespace levybayes
