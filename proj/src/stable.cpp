#include "levybayes/stable.hpp"

#include <sstream>

namespace levybayes {

std::string RandomStream::state() const {
    std::ostringstream os;
    os << engine_;
    return os.str();
}

void RandomStream::set_state(const std::string& text) {
    std::istringstream is(text);
    is >> engine_;
    if (is.fail())
        throw std::invalid_argument("RandomStream: malformed engine state");
}

double cauchy_logpdf(double x, double location, double scale) {
    if (!(scale > 0.0))
        throw std::invalid_argument("cauchy_logpdf: scale must be positive");
    const double d = x - location;
    return std::log(scale / std::numbers::pi) - std::log(scale * scale + d * d);
}

double gaussian_logpdf(double x, double location, double stddev) {
    if (!(stddev > 0.0))
        throw std::invalid_argument("gaussian_logpdf: stddev must be positive");
    const double z = (x - location) / stddev;
    return -0.5 * z * z - std::log(stddev) -
           0.5 * std::log(2.0 * std::numbers::pi);
}

double cauchy_cdf(double x, double location, double scale) {
    if (!(scale > 0.0))
        throw std::invalid_argument("cauchy_cdf: scale must be positive");
    return 0.5 + std::atan((x - location) / scale) / std::numbers::pi;
}

double gaussian_cdf(double x, double location, double stddev) {
    if (!(stddev > 0.0))
        throw std::invalid_argument("gaussian_cdf: stddev must be positive");
    return 0.5 * (1.0 + std::erf((x - location) / (stddev * std::numbers::sqrt2)));
}

}  // namespace levybayes
