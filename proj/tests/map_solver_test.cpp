#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "levybayes/forward_models.hpp"
#include "levybayes/map_solver.hpp"
#include "levybayes/phantoms.hpp"
#include "test_support.hpp"

using namespace levybayes;
using levybayes::testing::finite_difference_gradient;

namespace {

SparseOperator identity_op(Eigen::Index n) {
    SparseOperator op(n, n);
    for (Eigen::Index i = 0; i < n; ++i) op.insert(i, i) = 1.0;
    op.makeCompressed();
    return op;
}

Posterior deconvolution_posterior(Eigen::Index n, PriorFamily family,
                                  double reg, std::uint64_t seed) {
    const Grid1D truth = piecewise_signal_1d(n);
    Posterior post;
    post.op = build_convolution_operator(n, 0.04);
    RandomStream rng(seed);
    const auto noisy = add_noise(post.op * truth.values, 0.01, rng);
    post.data = noisy.m;
    post.noise = noisy.noise;
    post.prior.family = family;
    post.prior.reg = reg;
    post.layout = Layout::of(truth);
    return post;
}

}  // namespace

TEST_CASE("negative_log_posterior pinned values") {
    SUBCASE("perfect fit with unit-scale Cauchy prior is zero") {
        const Eigen::Index n = 5;
        Posterior post;
        post.op = identity_op(n);
        post.data = Vector::Constant(n, 2.0);
        post.noise.stddev = 0.3;
        post.prior.family = PriorFamily::Cauchy;
        post.prior.reg = 1.0;
        post.layout = {n, 1, 1.0, 1.0};
        CHECK(negative_log_posterior(post.data, post) == doctest::Approx(0.0));
    }
    SUBCASE("doubling the residual quadruples the likelihood term") {
        const Eigen::Index n = 7;
        Posterior post;
        post.op = identity_op(n);
        post.data = Vector::Zero(n);
        post.noise.stddev = 2.0;
        post.include_prior = false;
        post.layout = {n, 1, 1.0, 1.0};
        const Vector x = Vector::Constant(n, 1.0);
        const Vector x2 = Vector::Constant(n, 2.0);
        CHECK(negative_log_posterior(x2, post) ==
              doctest::Approx(4.0 * negative_log_posterior(x, post)).epsilon(1e-12));
    }
    SUBCASE("matches term-by-term recomputation") {
        const auto post = deconvolution_posterior(40, PriorFamily::Cauchy, 1.5, 9);
        RandomStream rng(10);
        Vector x(40);
        for (Eigen::Index i = 0; i < 40; ++i) x[i] = rng.gaussian();
        const Vector r = post.data - post.op * x;
        const double expected =
            0.5 * r.squaredNorm() / (post.noise.stddev * post.noise.stddev) -
            log_prior(x, post.layout, post.prior);
        CHECK(negative_log_posterior(x, post) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("analytic gradient matches central differences") {
    SUBCASE("1D, both differentiable priors") {
        for (const auto family : {PriorFamily::Cauchy, PriorFamily::Gaussian}) {
            const auto post = deconvolution_posterior(30, family, 1.2, 11);
            RandomStream rng(12);
            Vector x(30);
            for (Eigen::Index i = 0; i < 30; ++i) x[i] = 0.7 * rng.gaussian();
            const Vector analytic = nlp_gradient(x, post);
            const Vector numeric = finite_difference_gradient(
                [&](const Vector& v) { return negative_log_posterior(v, post); },
                x);
            for (Eigen::Index i = 0; i < x.size(); ++i)
                CHECK(std::abs(analytic[i] - numeric[i]) <=
                      1e-5 * std::max(1.0, std::abs(analytic[i])));
        }
    }
    SUBCASE("2D lattice posterior") {
        Posterior post;
        const Eigen::Index nx = 6, ny = 5;
        FanBeamGeometry geom;
        geom.n_detector_pixels = 15;
        for (int i = 0; i < 8; ++i) geom.angles_deg.push_back(-10.0 + 25.0 * i);
        post.op = build_fanbeam_operator(geom, nx, ny);
        RandomStream rng(13);
        Vector truth(nx * ny);
        for (Eigen::Index i = 0; i < truth.size(); ++i) truth[i] = rng.uniform01();
        const auto noisy = add_noise(post.op * truth, 0.01, rng);
        post.data = noisy.m;
        post.noise = noisy.noise;
        post.prior.family = PriorFamily::Cauchy;
        post.prior.reg = 0.7;
        post.layout = {nx, ny, 2.0 / nx, 2.0 / ny};

        Vector x(nx * ny);
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = 0.3 * rng.gaussian();
        const Vector analytic = nlp_gradient(x, post);
        const Vector numeric = finite_difference_gradient(
            [&](const Vector& v) { return negative_log_posterior(v, post); }, x);
        for (Eigen::Index i = 0; i < x.size(); ++i)
            CHECK(std::abs(analytic[i] - numeric[i]) <=
                  1e-5 * std::max(1.0, std::abs(analytic[i])));
    }
}

TEST_CASE("Gaussian prior MAP matches the dense normal-equation solution") {
    const Eigen::Index n = 150;
    const auto post = deconvolution_posterior(n, PriorFamily::Gaussian, 1.0, 14);
    MapConfig cfg;
    cfg.linear_solver_tol = 1e-12;
    const auto result = map_estimate(post, Vector::Zero(n), cfg);

    const auto diff = build_difference_operator(post.layout, post.prior);
    const double inv_var = 1.0 / (post.noise.stddev * post.noise.stddev);
    Eigen::MatrixXd a_dense(post.op);
    Eigen::MatrixXd l_dense(diff.matrix);
    Eigen::VectorXd w(diff.scales.size());
    for (Eigen::Index j = 0; j < w.size(); ++j)
        w[j] = 1.0 / (4.0 * diff.scales[j] * diff.scales[j]);
    const Eigen::MatrixXd normal =
        inv_var * a_dense.transpose() * a_dense +
        2.0 * l_dense.transpose() * w.asDiagonal() * l_dense;
    const Vector direct = normal.ldlt().solve(inv_var * a_dense.transpose() * post.data);

    CHECK((result.x - direct).norm() / direct.norm() < 1e-6);
    CHECK(result.converged);
}

TEST_CASE("Cauchy prior MAP: monotone trace and small final gradient") {
    const Eigen::Index n = 66;
    const auto post = deconvolution_posterior(n, PriorFamily::Cauchy, 2.0, 15);
    MapConfig cfg;
    cfg.max_iters = 200;
    cfg.grad_tol = 1e-5;
    cfg.linear_solver_tol = 1e-12;
    const auto result = map_estimate(post, Vector::Zero(n), cfg);
    REQUIRE(result.trace.size() > 2);
    for (std::size_t i = 1; i < result.trace.size(); ++i)
        CHECK(result.trace[i] <= result.trace[i - 1] + 1e-12);
    CHECK(result.converged);
    CHECK(result.grad_inf_norm < cfg.grad_tol);
}

TEST_CASE("likelihood-dominated limit returns the data") {
    const Eigen::Index n = 40;
    Posterior post;
    post.op = identity_op(n);
    post.data = Vector(n);
    for (Eigen::Index i = 0; i < n; ++i)
        post.data[i] = 2.0 * static_cast<double>(i % 5) - 4.0;
    post.noise.stddev = 1e-4;
    post.prior.family = PriorFamily::Cauchy;
    post.prior.reg = 1e-3;
    post.layout = {n, 1, 1.0, 1.0};
    MapConfig cfg;
    cfg.grad_tol = 1e-8;
    cfg.max_iters = 200;
    const auto result = map_estimate(post, Vector::Zero(n), cfg);
    CHECK((result.x - post.data).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("TV prior is rejected by the MAP solver") {
    auto post = deconvolution_posterior(20, PriorFamily::TV, 1.0, 16);
    MapConfig cfg;
    CHECK_THROWS_AS(map_estimate(post, Vector::Zero(20), cfg),
                    std::invalid_argument);
    Vector x = Vector::Zero(20);
    CHECK_THROWS_AS(nlp_gradient(x, post), std::invalid_argument);
}

TEST_CASE("non-finite objective raises SolverError with the trace attached") {
    auto post = deconvolution_posterior(20, PriorFamily::Cauchy, 1.0, 17);
    post.data[3] = std::numeric_limits<double>::quiet_NaN();
    MapConfig cfg;
    CHECK_THROWS_AS(map_estimate(post, Vector::Zero(20), cfg), SolverError);
}

TEST_CASE("MapConfig validation") {
    MapConfig cfg;
    cfg.ls_shrink = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = MapConfig{};
    cfg.max_iters = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
