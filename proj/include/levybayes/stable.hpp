// Sampling and closed-form density/CDF evaluation for Levy alpha-stable laws.
//
// Scale convention: S_alpha(scale, beta, location) has characteristic function
// exp(i*location*t - scale^alpha * |t|^alpha) for beta = 0. Note the alpha = 2
// member is N(location, 2*scale^2), i.e. sd = scale*sqrt(2) -- a factor 2 in
// variance compared with the textbook N(0, sigma^2) parameterization.
#ifndef LEVYBAYES_STABLE_HPP
#define LEVYBAYES_STABLE_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace levybayes {

/// Parameters of a stable law S_alpha(scale, beta, location).
struct StableParams {
    double alpha;     // stability index, in (0, 2]
    double beta;      // skewness, in [-1, 1]
    double scale;     // > 0
    double location;

    StableParams(double alpha_, double beta_ = 0.0, double scale_ = 1.0,
                 double location_ = 0.0)
        : alpha(alpha_), beta(beta_), scale(scale_), location(location_) {
        if (!(alpha > 0.0) || !(alpha <= 2.0))
            throw std::invalid_argument("StableParams: alpha must be in (0, 2]");
        if (!(beta >= -1.0) || !(beta <= 1.0))
            throw std::invalid_argument("StableParams: beta must be in [-1, 1]");
        if (!(scale > 0.0))
            throw std::invalid_argument("StableParams: scale must be positive");
        if (alpha == 2.0)
            beta = 0.0;  // skewness is irrelevant to the normal case
    }
};

// Deterministic stream of uniforms/gaussians on top of mt19937_64. The
// standard library distributions are implementation-defined, so the
// transforms live here; identical seeds give bit-identical sequences.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Uniform draw on the open interval (0, 1) with 53 significant bits.
    double uniform01() {
        const std::uint64_t u = engine_() >> 11;
        return (static_cast<double>(u) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal draw (Box-Muller; consumes two uniforms).
    double gaussian() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    std::string state() const;
    void set_state(const std::string& text);

private:
    std::mt19937_64 engine_;
};

namespace detail {

// Chambers-Mallows-Stuck transform on two open-(0,1) uniforms.
// u1 drives the wedge angle V = pi*(u1 - 1/2); u2 the exponential W.
inline double cms_standard(double alpha, double beta, double u1, double u2) {
    const double pi = std::numbers::pi;
    const double v = pi * (u1 - 0.5);
    const double w = -std::log(u2);
    if (alpha == 2.0)
        return 2.0 * std::sin(v) * std::sqrt(w);
    if (alpha == 1.0) {
        if (beta == 0.0)
            return std::tan(v);
        const double half_pi = 0.5 * pi;
        return (2.0 / pi) * ((half_pi + beta * v) * std::tan(v) -
                             beta * std::log((half_pi * w * std::cos(v)) /
                                             (half_pi + beta * v)));
    }
    if (beta == 0.0) {
        return std::sin(alpha * v) / std::pow(std::cos(v), 1.0 / alpha) *
               std::pow(std::cos(v - alpha * v) / w, (1.0 - alpha) / alpha);
    }
    const double t = beta * std::tan(0.5 * pi * alpha);
    const double b = std::atan(t) / alpha;
    const double s = std::pow(1.0 + t * t, 0.5 / alpha);
    return s * std::sin(alpha * (v + b)) / std::pow(std::cos(v), 1.0 / alpha) *
           std::pow(std::cos(v - alpha * (v + b)) / w, (1.0 - alpha) / alpha);
}

}  // namespace detail

/// One draw from S_alpha(scale, beta, location). `Source` must provide
/// uniform01() returning doubles in (0, 1); two uniforms are consumed.
template <class Source>
double sample_stable(const StableParams& params, Source& rng) {
    const double u1 = rng.uniform01();
    const double u2 = rng.uniform01();
    const double x = detail::cms_standard(params.alpha, params.beta, u1, u2);
    double y = params.location + params.scale * x;
    if (params.alpha == 1.0 && params.beta != 0.0)
        y += (2.0 / std::numbers::pi) * params.beta * params.scale *
             std::log(params.scale);
    return y;
}

/// log of the Cauchy(location, scale) density at x.
double cauchy_logpdf(double x, double location, double scale);

/// log of the N(location, stddev^2) density at x.
double gaussian_logpdf(double x, double location, double stddev);

/// Cauchy(location, scale) distribution function at x.
double cauchy_cdf(double x, double location, double scale);

/// N(location, stddev^2) distribution function at x.
double gaussian_cdf(double x, double location, double stddev);

}  // namespace levybayes

#endif
