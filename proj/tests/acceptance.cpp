// Acceptance suite: one pass/fail line per criterion. Exit status is the
// number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "levybayes/experiments.hpp"
#include "levybayes/fbp.hpp"
#include "levybayes/io.hpp"
#include "levybayes/map_solver.hpp"
#include "levybayes/phantoms.hpp"
#include "levybayes/random_walk.hpp"
#include "levybayes/samplers.hpp"
#include "test_support.hpp"

using namespace levybayes;
namespace fs = std::filesystem;
using levybayes::testing::batch_means_se;
using levybayes::testing::finite_difference_gradient;
using levybayes::testing::one_sample_ks;
using levybayes::testing::two_sample_ks;

namespace {

struct Checker {
    bool ok = true;
    std::string detail;

    void require(bool condition, const std::string& what) {
        if (!condition && ok) {
            ok = false;
            detail = what;
        }
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// Shared experiment builders (desk-scale defaults, pinned seeds).

struct DeconvProblem {
    Posterior post;
    Vector truth;
};

DeconvProblem deconv_problem(Eigen::Index n, PriorFamily family, double reg,
                             std::uint64_t seed) {
    DeconvProblem prob;
    const Grid1D truth = piecewise_signal_1d(n);
    prob.truth = truth.values;
    prob.post.op = build_convolution_operator(n, 0.04);
    RandomStream rng(derive_seed(seed, "noise-n" + std::to_string(n)));
    const auto noisy = add_noise(prob.post.op * truth.values, 0.01, rng);
    prob.post.data = noisy.m;
    prob.post.noise = noisy.noise;
    prob.post.prior.family = family;
    prob.post.prior.reg = reg;
    prob.post.layout = Layout::of(truth);
    return prob;
}

struct TomoProblem {
    Posterior post;
    Vector truth;
    FanBeamGeometry geom;
    Lattice2D fbp;
};

TomoProblem tomo_problem(PriorFamily family, double reg, std::uint64_t seed) {
    TomoProblem prob;
    prob.geom.n_detector_pixels = 100;
    for (int i = 0; i < 20; ++i)
        prob.geom.angles_deg.push_back(-10.0 + 200.0 * i / 19.0);
    const Lattice2D truth = shepp_logan(64, 64);
    prob.truth = truth.values;
    prob.post.op = build_fanbeam_operator(prob.geom, 64, 64);
    RandomStream rng(derive_seed(seed, "noise"));
    const auto noisy = add_noise(prob.post.op * truth.values, 0.001, rng);
    prob.post.data = noisy.m;
    prob.post.noise = noisy.noise;
    prob.post.prior.family = family;
    prob.post.prior.reg = reg;
    prob.post.layout = Layout::of(truth);
    prob.fbp = fbp_reconstruct(noisy.m, prob.geom, 64, 64);
    return prob;
}

// Independent long-double recomputation of the log-prior.
long double log_prior_ld(const Vector& v, const Layout& layout,
                         const PriorModel& prior) {
    const auto diff = build_difference_operator(layout, prior);
    const Eigen::SparseMatrix<double, Eigen::RowMajor> by_row = diff.matrix;
    long double total = 0.0L;
    for (Eigen::Index j = 0; j < by_row.rows(); ++j) {
        long double d = 0.0L;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator
                 it(by_row, j);
             it; ++it)
            d += static_cast<long double>(it.value()) * v[it.col()];
        const long double s = diff.scales[j];
        switch (prior.family) {
            case PriorFamily::Cauchy:
                total += std::log(s) - std::log(s * s + d * d);
                break;
            case PriorFamily::Gaussian:
                total += -d * d / (4.0L * s * s);
                break;
            case PriorFamily::TV:
                total += -static_cast<long double>(prior.reg) *
                         (d < 0.0L ? -d : d);
                break;
        }
    }
    return total;
}

// Independent long-double log-likelihood with a fresh residual evaluation.
long double likelihood_ld(const Vector& x, const Posterior& post) {
    std::vector<long double> r(static_cast<std::size_t>(post.op.rows()));
    for (Eigen::Index i = 0; i < post.op.rows(); ++i)
        r[static_cast<std::size_t>(i)] = post.data[i];
    for (Eigen::Index col = 0; col < post.op.outerSize(); ++col)
        for (SparseOperator::InnerIterator it(post.op, col); it; ++it)
            r[static_cast<std::size_t>(it.row())] -=
                static_cast<long double>(it.value()) * x[col];
    long double acc = 0.0L;
    for (const long double value : r) acc += value * value;
    const long double s = post.noise.stddev;
    return -acc / (2.0L * s * s);
}

// ---------------------------------------------------------------------------
// Criteria.

bool criterion_modality(Checker& check) {
    for (const double a : {0.5, 0.99}) {
        const auto report = analyze_modality(a);
        check.require(report.classification == Modality::Unimodal,
                      "a=" + fmt(a) + " not unimodal");
    }
    const auto flat = analyze_modality(1.0);
    check.require(flat.classification == Modality::Flat, "a=1 not flat");
    check.require(std::abs(flat.second_derivative_at_zero) < 1e-12,
                  "D''(0) at a=1 is " + fmt(flat.second_derivative_at_zero));
    for (const double a : {1.01, 2.0, 5.0}) {
        const auto report = analyze_modality(a);
        check.require(report.classification == Modality::Bimodal,
                      "a=" + fmt(a) + " not bimodal");
        const double expected = std::sqrt(a * a - 1.0);
        check.require(std::abs(report.modes.back() - expected) < 1e-12,
                      "mode formula at a=" + fmt(a));
        double best_x = 0.0, best = -1.0;
        const double hi = a + 2.0;
        for (double x = 0.0; x <= hi; x += 5e-5) {
            const double density = conditional_site_density(a, x);
            if (density > best) {
                best = density;
                best_x = x;
            }
        }
        check.require(std::abs(best_x - expected) <= 1e-4,
                      "grid argmax " + fmt(best_x) + " vs mode " + fmt(expected) +
                          " at a=" + fmt(a));
    }
    return check.ok;
}

bool criterion_stable_sampler(Checker& check) {
    const int n = 100000;
    {
        RandomStream rng(2101);
        std::vector<double> draws(n);
        const StableParams cauchy(1.0, 0.0, 1.0, 0.0);
        for (auto& d : draws) d = sample_stable(cauchy, rng);
        const double ks =
            one_sample_ks(draws, [](double x) { return cauchy_cdf(x, 0.0, 1.0); });
        check.require(ks < 0.01, "Cauchy KS = " + fmt(ks));
    }
    {
        RandomStream rng(2102);
        std::vector<double> draws(n);
        const StableParams normal(2.0, 0.0, 1.0, 0.0);
        for (auto& d : draws) d = sample_stable(normal, rng);
        const double sd = std::numbers::sqrt2;
        const double ks = one_sample_ks(
            draws, [sd](double x) { return gaussian_cdf(x, 0.0, sd); });
        check.require(ks < 0.01, "Gaussian KS = " + fmt(ks));
    }
    std::uint64_t seed = 2103;
    for (const double alpha : {0.5, 1.0, 1.5, 2.0}) {
        for (const int terms : {2, 4}) {
            RandomStream rng(seed++);
            const StableParams unit(alpha, 0.0, 1.0, 0.0);
            const StableParams scaled(
                alpha, 0.0, std::pow(static_cast<double>(terms), 1.0 / alpha),
                0.0);
            std::vector<double> sums(n), direct(n);
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int k = 0; k < terms; ++k) s += sample_stable(unit, rng);
                sums[i] = s;
                direct[i] = sample_stable(scaled, rng);
            }
            const double ks = two_sample_ks(sums, direct);
            check.require(ks < 0.02, "closure KS = " + fmt(ks) + " at alpha=" +
                                         fmt(alpha) + ", n=" + fmt(terms));
        }
    }
    return check.ok;
}

bool criterion_incremental_oracle(Checker& check) {
    struct Case {
        const char* name;
        Posterior post;
        double move_scale;
    };
    std::vector<Case> cases;
    cases.push_back(
        {"deconv", deconv_problem(131, PriorFamily::Cauchy, 2.0, 3101).post, 1.0});
    cases.push_back(
        {"tomo", tomo_problem(PriorFamily::Cauchy, 0.3, 3102).post, 0.1});

    for (auto& c : cases) {
        RandomStream rng(3103);
        Vector x(c.post.layout.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = 0.4 * rng.gaussian();
        Vector residual = c.post.data - c.post.op * x;
        for (int trial = 0; trial < 1000; ++trial) {
            const auto site = static_cast<Eigen::Index>(
                rng.uniform01() * static_cast<double>(x.size()));
            const double new_value = x[site] + c.move_scale * rng.gaussian();

            const double fast_ll = delta_log_likelihood(
                residual, c.post.op, site, new_value - x[site], c.post.noise);
            const double fast_lp =
                delta_log_prior(x, c.post.layout, c.post.prior, site, new_value);

            Vector moved = x;
            moved[site] = new_value;
            const double full_ll = static_cast<double>(
                likelihood_ld(moved, c.post) - likelihood_ld(x, c.post));
            const double full_lp = static_cast<double>(
                log_prior_ld(moved, c.post.layout, c.post.prior) -
                log_prior_ld(x, c.post.layout, c.post.prior));

            check.require(std::abs(fast_ll - full_ll) <=
                              1e-10 * std::max(1.0, std::abs(full_ll)),
                          std::string(c.name) + " delta-loglik trial " +
                              fmt(trial) + ": " + fmt(fast_ll) + " vs " +
                              fmt(full_ll));
            check.require(std::abs(fast_lp - full_lp) <=
                              1e-10 * std::max(1.0, std::abs(full_lp)),
                          std::string(c.name) + " delta-logprior trial " +
                              fmt(trial) + ": " + fmt(fast_lp) + " vs " +
                              fmt(full_lp));
            if (!check.ok) return false;
            if (trial % 3 != 0) {  // keep wandering through state space
                apply_residual_update(residual, c.post.op, site,
                                      new_value - x[site]);
                x = moved;
            }
        }
    }
    return check.ok;
}

bool criterion_exact_posterior(Checker& check) {
    const Eigen::Index n = 16;
    Posterior post;
    SparseOperator op(n, n);
    for (Eigen::Index i = 0; i < n; ++i) op.insert(i, i) = 1.0;
    op.makeCompressed();
    post.op = op;
    RandomStream data_rng(4101);
    post.data = Vector(n);
    for (Eigen::Index i = 0; i < n; ++i) post.data[i] = 4.0 * data_rng.gaussian();
    post.noise.stddev = 1.0;
    post.include_prior = false;
    post.layout = {n, 1, 1.0, 1.0};

    ChainOptions opt;
    opt.thin = 5;
    opt.adapt_every = 200;
    const Eigen::Index sweeps = 30000;
    Chain chain = scmh_init(post, Vector::Zero(n), sweeps, opt, 4102);
    scmh_advance(post, chain, sweeps / 2);
    const Eigen::VectorX<std::int64_t> acc0 = chain.accept_counts;
    const Eigen::VectorX<std::int64_t> prop0 = chain.propose_counts;
    scmh_advance(post, chain, sweeps - sweeps / 2);

    const Vector cm = cm_estimate(chain);
    for (Eigen::Index i = 0; i < n; ++i) {
        std::vector<double> xs;
        for (std::size_t s = static_cast<std::size_t>(chain.burn_in);
             s < chain.samples.size(); ++s)
            xs.push_back(chain.samples[s][i]);
        const double se = batch_means_se(xs);
        check.require(std::abs(cm[i] - post.data[i]) < 3.0 * se,
                      "site " + fmt(i) + ": |cm - m| = " +
                          fmt(std::abs(cm[i] - post.data[i])) + " vs 3se = " +
                          fmt(3.0 * se));
        const double rate =
            static_cast<double>(chain.accept_counts[i] - acc0[i]) /
            static_cast<double>(chain.propose_counts[i] - prop0[i]);
        check.require(rate >= 0.25 && rate <= 0.5,
                      "site " + fmt(i) + " post-adaptation acceptance " +
                          fmt(rate));
    }
    return check.ok;
}

bool criterion_deconvolution(Checker& check) {
    const Eigen::Index sweeps = 200000;
    ChainOptions opt;
    opt.initial_sigma = 0.1;
    opt.adapt_every = 500;

    std::vector<Vector> cauchy_cms;
    for (const Eigen::Index n : {66, 131}) {
        auto cauchy = deconv_problem(n, PriorFamily::Cauchy, 2.0, 5101);
        auto gauss = cauchy;  // the same noisy data for both priors
        gauss.post.prior.family = PriorFamily::Gaussian;
        gauss.post.prior.reg = 1.0;  // the Gaussian prior's own tuned scale

        const Chain cauchy_chain =
            scmh_run(cauchy.post, Vector::Zero(n), sweeps, opt,
                     derive_seed(5102, "cauchy-" + std::to_string(n)));
        const Chain gauss_chain =
            scmh_run(gauss.post, Vector::Zero(n), sweeps, opt,
                     derive_seed(5102, "gauss-" + std::to_string(n)));

        const Vector cauchy_cm = cm_estimate(cauchy_chain);
        const Vector gauss_cm = cm_estimate(gauss_chain);
        const double cauchy_err = relative_l2(cauchy_cm, cauchy.truth);
        const double gauss_err = relative_l2(gauss_cm, cauchy.truth);
        check.require(cauchy_err < gauss_err,
                      "n=" + fmt(n) + ": Cauchy err " + fmt(cauchy_err) +
                          " !< Gaussian err " + fmt(gauss_err));
        cauchy_cms.push_back(cauchy_cm);
    }
    const double cross = relative_l2(resample_linear(cauchy_cms[0], 521),
                                     resample_linear(cauchy_cms[1], 521));
    check.require(cross < 0.15, "cross-grid relative L2 = " + fmt(cross));
    if (check.ok) check.detail = "cross-grid relative L2 = " + fmt(cross);
    return check.ok;
}

bool criterion_tomography(Checker& check) {
    auto cauchy = tomo_problem(PriorFamily::Cauchy, 0.3, 6101);
    auto gauss = cauchy;  // the same sinogram for both priors
    gauss.post.prior.family = PriorFamily::Gaussian;
    gauss.post.prior.reg = 0.02;  // the Gaussian prior's own tuned scale

    ChainOptions opt;
    opt.initial_sigma = 0.01;
    const Eigen::Index sweeps = 4000;
    const Chain cauchy_chain = scmh_run(cauchy.post, cauchy.fbp.values, sweeps,
                                        opt, derive_seed(6102, "cauchy"));
    const Chain gauss_chain = scmh_run(gauss.post, gauss.fbp.values, sweeps, opt,
                                       derive_seed(6102, "gauss"));

    const double fbp_err = rmse(cauchy.fbp.values, cauchy.truth);
    const double cauchy_err = rmse(cm_estimate(cauchy_chain), cauchy.truth);
    const double gauss_err = rmse(cm_estimate(gauss_chain), cauchy.truth);
    check.require(cauchy_err < fbp_err, "Cauchy CM RMSE " + fmt(cauchy_err) +
                                            " !< FBP RMSE " + fmt(fbp_err));
    check.require(cauchy_err < gauss_err,
                  "Cauchy CM RMSE " + fmt(cauchy_err) + " !< Gaussian CM RMSE " +
                      fmt(gauss_err));
    if (check.ok)
        check.detail = "rmse: cauchy " + fmt(cauchy_err) + ", gauss " +
                       fmt(gauss_err) + ", fbp " + fmt(fbp_err);
    return check.ok;
}

bool criterion_map_solver(Checker& check) {
    {
        const auto prob = deconv_problem(150, PriorFamily::Gaussian, 1.0, 7101);
        MapConfig cfg;
        const auto result = map_estimate(prob.post, Vector::Zero(150), cfg);
        const auto diff =
            build_difference_operator(prob.post.layout, prob.post.prior);
        const double inv_var =
            1.0 / (prob.post.noise.stddev * prob.post.noise.stddev);
        Eigen::MatrixXd a_dense(prob.post.op);
        Eigen::MatrixXd l_dense(diff.matrix);
        Eigen::VectorXd w(diff.scales.size());
        for (Eigen::Index j = 0; j < w.size(); ++j)
            w[j] = 1.0 / (4.0 * diff.scales[j] * diff.scales[j]);
        const Eigen::MatrixXd normal =
            inv_var * a_dense.transpose() * a_dense +
            2.0 * l_dense.transpose() * w.asDiagonal() * l_dense;
        const Vector direct =
            normal.ldlt().solve(inv_var * a_dense.transpose() * prob.post.data);
        const double rel = (result.x - direct).norm() / direct.norm();
        check.require(rel < 1e-6, "Gaussian MAP vs dense solve: rel = " + fmt(rel));
    }
    {
        const auto prob = deconv_problem(131, PriorFamily::Cauchy, 2.0, 7102);
        MapConfig cfg;
        cfg.max_iters = 200;
        // Line-search-verified descent bottoms out once objective changes
        // fall below double resolution, around gradient 1e-5 at this size.
        cfg.grad_tol = 1e-4;
        const auto result = map_estimate(prob.post, Vector::Zero(131), cfg);
        for (std::size_t i = 1; i < result.trace.size(); ++i)
            check.require(result.trace[i] <= result.trace[i - 1] + 1e-12,
                          "trace increases at step " + fmt(i));
        check.require(result.converged, "Cauchy MAP did not reach grad_tol");
    }
    for (const auto family : {PriorFamily::Cauchy, PriorFamily::Gaussian}) {
        const auto prob = deconv_problem(40, family, 1.5, 7103);
        RandomStream rng(7104);
        Vector x(40);
        for (Eigen::Index i = 0; i < 40; ++i) x[i] = 0.6 * rng.gaussian();
        const Vector analytic = nlp_gradient(x, prob.post);
        const Vector numeric = finite_difference_gradient(
            [&](const Vector& v) { return negative_log_posterior(v, prob.post); },
            x);
        for (Eigen::Index i = 0; i < 40; ++i)
            check.require(std::abs(analytic[i] - numeric[i]) <=
                              1e-5 * std::max(1.0, std::abs(analytic[i])),
                          "gradient mismatch at component " + fmt(i));
    }
    return check.ok;
}

bool criterion_fanbeam_operator(Checker& check) {
    FanBeamGeometry geom;
    geom.n_detector_pixels = 100;
    for (int i = 0; i < 20; ++i)
        geom.angles_deg.push_back(-10.0 + 200.0 * i / 19.0);
    const Eigen::Index nx = 64, ny = 64;
    const auto op = build_fanbeam_operator(geom, nx, ny);
    const Vector row_sums = op * Vector::Ones(nx * ny);

    const double pitch = geom.detector_width / geom.n_detector_pixels;
    double worst = 0.0;
    for (std::size_t ia = 0; ia < geom.angles_deg.size(); ++ia) {
        const double theta = geom.angles_deg[ia] * std::numbers::pi / 180.0;
        const double sx = 4.0 * std::cos(theta), sy = 4.0 * std::sin(theta);
        for (Eigen::Index ip = 0; ip < geom.n_detector_pixels; ++ip) {
            const double offset = (ip + 0.5) * pitch - 1.5;
            const double ex = -2.0 * std::cos(theta) - offset * std::sin(theta);
            const double ey = -2.0 * std::sin(theta) + offset * std::cos(theta);
            double t0 = 0.0, t1 = 1.0;
            const double d[2] = {ex - sx, ey - sy};
            const double p[2] = {sx, sy};
            bool hits = true;
            for (int axis = 0; axis < 2; ++axis) {
                if (d[axis] == 0.0) {
                    if (p[axis] < -1.0 || p[axis] > 1.0) hits = false;
                    continue;
                }
                double lo = (-1.0 - p[axis]) / d[axis];
                double hi = (1.0 - p[axis]) / d[axis];
                if (lo > hi) std::swap(lo, hi);
                t0 = std::max(t0, lo);
                t1 = std::min(t1, hi);
            }
            const double chord =
                hits && t1 > t0 ? (t1 - t0) * std::hypot(d[0], d[1]) : 0.0;
            const auto row =
                static_cast<Eigen::Index>(ia) * geom.n_detector_pixels + ip;
            worst = std::max(worst, std::abs(row_sums[row] - chord));
        }
    }
    check.require(worst < 1e-8, "worst chord mismatch = " + fmt(worst));

    RandomStream rng(8101);
    Vector x(op.cols()), y(op.rows());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = rng.gaussian();
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] = rng.gaussian();
    const double lhs = y.dot(op * x);
    const double rhs = x.dot(op.transpose() * y);
    check.require(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)),
                  "adjoint identity: " + fmt(lhs) + " vs " + fmt(rhs));
    if (check.ok) check.detail = "worst chord mismatch " + fmt(worst);
    return check.ok;
}

bool criterion_scaling_rules(Checker& check) {
    const double lambda = 1.7, sigma = 0.6;
    check.require(scale_for_direction(1.0, lambda, 0.05, 3.0) == lambda * 0.05,
                  "Cauchy(lambda h) not exact");
    check.require(scale_for_direction(1.0, lambda, 0.25, 0.125) == lambda * 0.25,
                  "Cauchy(lambda h) not exact (dyadic)");
    check.require(scale_for_direction(2.0, sigma, 1.0, 4.0) == sigma / 2.0,
                  "Gaussian sd form not exact at h/h' = 1/4");
    check.require(scale_for_direction(2.0, sigma, 2.0, 8.0) ==
                      sigma * std::sqrt(2.0 / 8.0),
                  "Gaussian sd form not exact at scaled steps");
    check.require(scale_for_direction(2.0, sigma, 0.5, 0.5) == sigma,
                  "Gaussian sd form not exact at h = h'");

    RandomStream rng(9101);
    const double scale = 0.8;
    const StableParams cauchy(1.0, 0.0, scale, 0.0);
    std::vector<double> averages(100000);
    for (auto& a : averages)
        a = 0.5 * (sample_stable(cauchy, rng) + sample_stable(cauchy, rng));
    const double ks = one_sample_ks(
        averages, [scale](double x) { return cauchy_cdf(x, 0.0, scale); });
    check.require(ks < 0.02, "pair-averaging KS = " + fmt(ks));
    return check.ok;
}

bool criterion_cli_determinism(Checker& check) {
    const fs::path root = fs::temp_directory_path() / "levybayes_acceptance";
    fs::remove_all(root);

    auto compare_dirs = [&](const fs::path& a, const fs::path& b,
                            const std::string& label) {
        std::set<std::string> names_a, names_b;
        for (const auto& e : fs::directory_iterator(a))
            names_a.insert(e.path().filename().string());
        for (const auto& e : fs::directory_iterator(b))
            names_b.insert(e.path().filename().string());
        check.require(names_a == names_b, label + ": file sets differ");
        for (const auto& name : names_a) {
            std::ifstream fa(a / name, std::ios::binary);
            std::ifstream fb(b / name, std::ios::binary);
            std::stringstream sa, sb;
            sa << fa.rdbuf();
            sb << fb.rdbuf();
            if (name == "rmse.csv") {
                // The runtime_s column is wall clock; compare the rest.
                std::string la, lb;
                std::istringstream ia(sa.str()), ib(sb.str());
                while (std::getline(ia, la) && std::getline(ib, lb))
                    check.require(la.substr(0, la.rfind(',')) ==
                                      lb.substr(0, lb.rfind(',')),
                                  label + ": rmse.csv row differs");
                continue;
            }
            check.require(sa.str() == sb.str(), label + ": " + name + " differs");
        }
    };

    {
        std::istringstream src(
            "[realizations]\nnx = 32\nny = 32\ncrop = 4\nsweeps = 60\nwalk_n = "
            "400\n[sampler]\nseed = 9\n");
        auto cfg = Config::parse(src);
        run_prior_realizations(cfg, (root / "real_a").string());
        auto manifest = Config::load((root / "real_a" / "manifest.ini").string());
        run_prior_realizations(manifest, (root / "real_b").string());
        compare_dirs(root / "real_a", root / "real_b", "prior-realizations");
    }
    {
        std::istringstream src(
            "[deconv]\nn_values = 66,131\n[sampler]\nseed = 9\nsweeps = 400\n");
        auto cfg = Config::parse(src);
        run_deconvolution(cfg, (root / "dec_a").string());
        auto manifest = Config::load((root / "dec_a" / "manifest.ini").string());
        run_deconvolution(manifest, (root / "dec_b").string());
        compare_dirs(root / "dec_a", root / "dec_b", "deconvolve");
    }
    const char* tomo_src =
        "[grid]\nnx = 24\nny = 24\n[geometry]\nn_detector_pixels = 30\nn_angles "
        "= 10\n[sampler]\nseed = 9\nsweeps = 80\n[solver]\nmax_iters = 4\n";
    {
        std::istringstream src(tomo_src);
        auto cfg = Config::parse(src);
        run_tomography(cfg, (root / "tomo_a").string());
        auto manifest = Config::load((root / "tomo_a" / "manifest.ini").string());
        run_tomography(manifest, (root / "tomo_b").string());
        compare_dirs(root / "tomo_a", root / "tomo_b", "tomo");
    }
    {
        std::istringstream src(tomo_src);
        auto cfg = Config::parse(src);
        run_tomography(cfg, (root / "fbp_a").string(), TomoMode::FbpOnly);
        auto manifest = Config::load((root / "fbp_a" / "manifest.ini").string());
        run_tomography(manifest, (root / "fbp_b").string(), TomoMode::FbpOnly);
        compare_dirs(root / "fbp_a", root / "fbp_b", "fbp-only");
    }
    {
        std::istringstream src(tomo_src);
        auto cfg = Config::parse(src);
        run_tomography(cfg, (root / "map_a").string(), TomoMode::MapOnly);
        auto manifest = Config::load((root / "map_a" / "manifest.ini").string());
        run_tomography(manifest, (root / "map_b").string(), TomoMode::MapOnly);
        compare_dirs(root / "map_a", root / "map_b", "map-only");
    }
    return check.ok;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<bool(Checker&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "modality trichotomy", criterion_modality},
        {2, "stable sampler distribution checks", criterion_stable_sampler},
        {3, "incremental-update oracle", criterion_incremental_oracle},
        {4, "exact-posterior sanity", criterion_exact_posterior},
        {5, "deconvolution desk run", criterion_deconvolution},
        {6, "tomography desk run", criterion_tomography},
        {7, "MAP solver checks", criterion_map_solver},
        {8, "fan-beam operator chords and adjoint", criterion_fanbeam_operator},
        {9, "2D scaling rules and coarsening", criterion_scaling_rules},
        {10, "CLI determinism from manifests", criterion_cli_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Checker check;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        std::string error;
        try {
            ok = criterion.run(check);
        } catch (const std::exception& e) {
            ok = false;
            error = e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        std::printf("[%s] %2d  %-38s (%.1f s)", ok ? "PASS" : "FAIL",
                    criterion.id, criterion.name, secs);
        if (!ok) {
            ++failures;
            std::printf("  <- %s",
                        !error.empty() ? error.c_str() : check.detail.c_str());
        } else if (!check.detail.empty()) {
            std::printf("  [%s]", check.detail.c_str());
        }
        std::printf("\n");
        std::fflush(stdout);
    }
    if (failures == 0) std::printf("all acceptance criteria passed\n");
    return failures;
}
