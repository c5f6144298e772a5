#include "levybayes/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace levybayes {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

PgmRange write_pgm(const std::string& path, const Lattice2D& image, int maxval) {
    image.validate();
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_pgm: cannot open " + path);
    PgmRange range{image.values.minCoeff(), image.values.maxCoeff()};
    const double scale =
        range.hi > range.lo ? static_cast<double>(maxval) / (range.hi - range.lo)
                            : 0.0;
    os << "P2\n" << image.nx << ' ' << image.ny << '\n' << maxval << '\n';
    for (Eigen::Index iy = 0; iy < image.ny; ++iy) {
        for (Eigen::Index ix = 0; ix < image.nx; ++ix) {
            const long level =
                std::lround((image.at(ix, iy) - range.lo) * scale);
            os << level << (ix + 1 == image.nx ? '\n' : ' ');
        }
    }
    if (!os) throw std::runtime_error("write_pgm: failed writing " + path);
    return range;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<Vector>& columns) {
    if (header.size() != columns.size())
        throw std::invalid_argument("write_csv: header/column count mismatch");
    const Eigen::Index rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns)
        if (col.size() != rows)
            throw std::invalid_argument("write_csv: ragged columns");
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t c = 0; c < header.size(); ++c)
        os << header[c] << (c + 1 == header.size() ? '\n' : ',');
    for (Eigen::Index r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c)
            os << format_number(columns[c][r])
               << (c + 1 == columns.size() ? '\n' : ',');
    if (!os) throw std::runtime_error("write_csv: failed writing " + path);
}

double relative_l2(const Vector& a, const Vector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("relative_l2: size mismatch");
    const double denom = b.norm();
    if (denom == 0.0)
        throw std::invalid_argument("relative_l2: reference vector is zero");
    return (a - b).norm() / denom;
}

double rmse(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("rmse: size mismatch");
    return std::sqrt((a - b).squaredNorm() / static_cast<double>(a.size()));
}

Vector resample_linear(const Vector& values, Eigen::Index n_target) {
    const Eigen::Index n = values.size();
    if (n < 2 || n_target < 2)
        throw std::invalid_argument("resample_linear: need at least two points");
    Vector out(n_target);
    for (Eigen::Index i = 0; i < n_target; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(n_target - 1);
        const double pos = t * static_cast<double>(n - 1);
        const auto j = std::min<Eigen::Index>(static_cast<Eigen::Index>(pos), n - 2);
        const double frac = pos - static_cast<double>(j);
        out[i] = (1.0 - frac) * values[j] + frac * values[j + 1];
    }
    return out;
}

}  // namespace levybayes
