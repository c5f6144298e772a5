#include "levybayes/experiments.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "levybayes/fbp.hpp"
#include "levybayes/io.hpp"
#include "levybayes/map_solver.hpp"
#include "levybayes/phantoms.hpp"
#include "levybayes/random_walk.hpp"
#include "levybayes/samplers.hpp"

namespace levybayes {

namespace {

namespace fs = std::filesystem;

std::string join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("cannot create output directory " + dir + ": " +
                                 ec.message());
}

PriorFamily parse_family(const std::string& name) {
    if (name == "cauchy") return PriorFamily::Cauchy;
    if (name == "gaussian") return PriorFamily::Gaussian;
    if (name == "tv") return PriorFamily::TV;
    throw ConfigError("unknown prior family: " + name);
}

BoundaryRule parse_boundary(const std::string& name) {
    if (name == "free") return BoundaryRule::Free;
    if (name == "zero") return BoundaryRule::Zero;
    throw ConfigError("unknown boundary rule: " + name);
}

std::vector<std::string> split_names(const std::string& raw) {
    std::vector<std::string> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto begin = item.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        const auto end = item.find_last_not_of(" \t");
        out.push_back(item.substr(begin, end - begin + 1));
    }
    if (out.empty()) throw ConfigError("empty name list: " + raw);
    return out;
}

ChainOptions sampler_options(Config& cfg, double default_initial_sigma,
                             std::int64_t default_adapt_every) {
    ChainOptions opt;
    opt.thin = cfg.resolve_int("sampler", "thin", 10);
    opt.burn_in_fraction = cfg.resolve_double("sampler", "burn_in_fraction", 0.5);
    opt.adapt_every = cfg.resolve_int("sampler", "adapt_every", default_adapt_every);
    opt.initial_sigma =
        cfg.resolve_double("sampler", "initial_sigma", default_initial_sigma);
    opt.random_scan = cfg.resolve_string("sampler", "scan", "raster") == "random";
    opt.validate();
    return opt;
}

std::uint64_t base_seed(const Config& cfg) {
    if (!cfg.has("sampler", "seed"))
        throw ConfigError("missing mandatory [sampler] seed");
    return static_cast<std::uint64_t>(cfg.get_int("sampler", "seed"));
}

MapConfig solver_config(Config& cfg) {
    MapConfig mc;
    mc.max_iters = static_cast<int>(cfg.resolve_int("solver", "max_iters", 60));
    mc.grad_tol = cfg.resolve_double("solver", "grad_tol", 1e-5);
    mc.ls_shrink = cfg.resolve_double("solver", "ls_shrink", 0.5);
    mc.ls_max_backtracks =
        static_cast<int>(cfg.resolve_int("solver", "ls_max_backtracks", 30));
    mc.linear_solver_tol = cfg.resolve_double("solver", "cg_tol", 1e-12);
    mc.validate();
    return mc;
}

void write_manifest(Config& cfg, const std::string& out_dir,
                    const std::string& command) {
    cfg.set_string("meta", "version", kVersion);
    cfg.set_string("meta", "command", command);
    // The output directory is wherever the manifest lives; recording it would
    // break byte-identical reruns into a different directory.
    cfg.erase_section("output");
    cfg.save(join(out_dir, "manifest.ini"));
}

std::string alpha_tag(double alpha) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", alpha);
    return buf;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
            .count();
    }
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
    std::uint64_t h = 14695981039346656037ull ^ base;
    for (const char c : tag) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 1099511628211ull;
    }
    return h;
}

void run_prior_realizations(Config& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    const std::uint64_t seed = base_seed(cfg);

    // 1D walks, one CSV per requested alpha.
    const auto alphas = cfg.resolve_list("realizations", "alphas", "1,2");
    const auto n = cfg.resolve_int("realizations", "walk_n", 1000);
    const double h = cfg.resolve_double("realizations", "walk_h",
                                        1.0 / static_cast<double>(n - 1));
    for (const double alpha : alphas) {
        const std::string tag = alpha_tag(alpha);
        RandomStream rng(derive_seed(seed, "walk-alpha-" + tag));
        const Grid1D walk = simulate_walk_1d(alpha, 0.0, h, n, rng);
        Vector t(n);
        for (Eigen::Index j = 0; j < n; ++j)
            t[j] = static_cast<double>(j) * h;
        write_csv(join(out_dir, "walk_alpha_" + tag + ".csv"), {"t", "value"},
                  {t, walk.values});
    }

    // 2D realizations: generated with a zero boundary on an enlarged lattice,
    // then cropped.
    const auto families =
        split_names(cfg.resolve_string("realizations", "families",
                                       "cauchy,gaussian,tv"));
    const auto nx = cfg.resolve_int("realizations", "nx", 64);
    const auto ny = cfg.resolve_int("realizations", "ny", 64);
    const auto crop = cfg.resolve_int("realizations", "crop", 16);
    const auto sweeps = cfg.resolve_int("realizations", "sweeps", 2000);
    const double h2 = cfg.resolve_double("realizations", "h",
                                         2.0 / static_cast<double>(nx));
    const double h2p = cfg.resolve_double("realizations", "h_prime",
                                          2.0 / static_cast<double>(ny));

    std::vector<std::string> family_names;
    Vector accept_rates(static_cast<Eigen::Index>(families.size()));
    Vector lows(accept_rates.size()), highs(accept_rates.size());
    Eigen::Index row = 0;
    for (const auto& name : families) {
        PriorModel prior;
        prior.family = parse_family(name);
        prior.reg = cfg.resolve_double("realizations", name + "_reg", 1.0);
        prior.boundary = BoundaryRule::Zero;
        const auto realization =
            sample_prior_2d(prior, nx + 2 * crop, ny + 2 * crop, h2, h2p, sweeps,
                            derive_seed(seed, "realization-" + name));
        Lattice2D cropped(nx, ny, h2, h2p);
        for (Eigen::Index iy = 0; iy < ny; ++iy)
            for (Eigen::Index ix = 0; ix < nx; ++ix)
                cropped.at(ix, iy) = realization.lattice.at(ix + crop, iy + crop);
        const PgmRange range =
            write_pgm(join(out_dir, "prior2d_" + name + ".pgm"), cropped);
        family_names.push_back(name);
        accept_rates[row] = realization.acceptance_rate;
        lows[row] = range.lo;
        highs[row] = range.hi;
        ++row;
    }
    {
        std::ofstream os(join(out_dir, "realizations.csv"));
        os << "family,acceptance_rate,min,max\n";
        for (Eigen::Index i = 0; i < row; ++i)
            os << family_names[static_cast<std::size_t>(i)] << ','
               << format_number(accept_rates[i]) << ',' << format_number(lows[i])
               << ',' << format_number(highs[i]) << '\n';
    }

    write_manifest(cfg, out_dir, "prior-realizations");
}

void run_deconvolution(Config& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    const std::uint64_t seed = base_seed(cfg);

    const auto n_list = cfg.resolve_list("deconv", "n_values", "66,131,261,521");
    const double kernel_width = cfg.resolve_double("deconv", "kernel_width", 0.04);
    const double noise_level = cfg.resolve_double("noise", "level", 0.01);
    PriorModel prior;
    prior.family = parse_family(cfg.resolve_string("prior", "family", "cauchy"));
    prior.reg = cfg.resolve_double("prior", "reg", 2.0);
    prior.boundary =
        parse_boundary(cfg.resolve_string("prior", "boundary", "free"));
    const auto sweeps = cfg.resolve_int("sampler", "sweeps", 20000);
    // Long adaptation windows keep the per-site acceptance rates inside the
    // band once the scales freeze at the end of burn-in.
    const ChainOptions opts = sampler_options(cfg, 0.1, 500);

    std::vector<Vector> estimates;
    std::vector<Eigen::Index> sizes;
    Vector grid_col(static_cast<Eigen::Index>(n_list.size()));
    Vector accept_col(grid_col.size()), in_band_col(grid_col.size());

    Eigen::Index run_idx = 0;
    for (const double n_real : n_list) {
        const auto n = static_cast<Eigen::Index>(n_real);
        if (n < 2) throw ConfigError("deconv n_values entries must be >= 2");
        const std::string tag = "n" + std::to_string(n);

        const Grid1D truth = piecewise_signal_1d(n);
        const SparseOperator op = build_convolution_operator(n, kernel_width);
        const Vector clean = op * truth.values;
        RandomStream noise_rng(derive_seed(seed, "noise-" + tag));
        const NoisyData measured = add_noise(clean, noise_level, noise_rng);

        Posterior post;
        post.op = op;
        post.data = measured.m;
        post.noise = measured.noise;
        post.prior = prior;
        post.layout = Layout::of(truth);

        const Chain chain =
            scmh_run(post, Vector::Zero(n), sweeps, opts,
                     derive_seed(seed, "chain-" + tag));
        const Vector cm = cm_estimate(chain);

        Vector t(n);
        for (Eigen::Index j = 0; j < n; ++j)
            t[j] = static_cast<double>(j) * truth.h;
        write_csv(join(out_dir, "truth_" + tag + ".csv"), {"t", "value"},
                  {t, truth.values});
        write_csv(join(out_dir, "data_" + tag + ".csv"), {"t", "clean", "noisy"},
                  {t, clean, measured.m});
        write_csv(join(out_dir, "cm_" + tag + ".csv"), {"t", "value"}, {t, cm});

        Eigen::Index in_band = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double rate = chain.acceptance_rate(i);
            if (rate >= opts.accept_low && rate <= opts.accept_high) ++in_band;
        }
        grid_col[run_idx] = static_cast<double>(n);
        accept_col[run_idx] = chain.overall_acceptance();
        in_band_col[run_idx] =
            static_cast<double>(in_band) / static_cast<double>(n);
        ++run_idx;

        estimates.push_back(cm);
        sizes.push_back(n);
    }

    write_csv(join(out_dir, "acceptance.csv"),
              {"n", "overall_acceptance", "fraction_sites_in_band"},
              {grid_col, accept_col, in_band_col});

    // Pairwise cross-grid distances on the finest grid.
    Eigen::Index finest = 0;
    for (const auto n : sizes) finest = std::max(finest, n);
    std::vector<double> na, nb, dist;
    for (std::size_t a = 0; a < estimates.size(); ++a)
        for (std::size_t b = a + 1; b < estimates.size(); ++b) {
            const Vector ea = resample_linear(estimates[a], finest);
            const Vector eb = resample_linear(estimates[b], finest);
            na.push_back(static_cast<double>(sizes[a]));
            nb.push_back(static_cast<double>(sizes[b]));
            dist.push_back(relative_l2(ea, eb));
        }
    const auto pairs = static_cast<Eigen::Index>(dist.size());
    write_csv(join(out_dir, "cross_grid.csv"), {"n_a", "n_b", "relative_l2"},
              {Eigen::Map<Vector>(na.data(), pairs),
               Eigen::Map<Vector>(nb.data(), pairs),
               Eigen::Map<Vector>(dist.data(), pairs)});

    write_manifest(cfg, out_dir, "deconvolve");
}

void run_tomography(Config& cfg, const std::string& out_dir, TomoMode mode) {
    ensure_dir(out_dir);
    const std::uint64_t seed = base_seed(cfg);

    const auto nx = cfg.resolve_int("grid", "nx", 64);
    const auto ny = cfg.resolve_int("grid", "ny", 64);
    FanBeamGeometry geom;
    geom.source_radius = cfg.resolve_double("geometry", "source_radius", 4.0);
    geom.detector_radius = cfg.resolve_double("geometry", "detector_radius", 2.0);
    geom.detector_width = cfg.resolve_double("geometry", "detector_width", 3.0);
    geom.n_detector_pixels =
        cfg.resolve_int("geometry", "n_detector_pixels", 100);
    const double angle_start = cfg.resolve_double("geometry", "angle_start", -10.0);
    const double angle_stop = cfg.resolve_double("geometry", "angle_stop", 190.0);
    const auto n_angles = cfg.resolve_int("geometry", "n_angles", 20);
    const double fov = cfg.resolve_double("geometry", "fov", 1.0);
    if (n_angles < 1) throw ConfigError("n_angles must be >= 1");
    for (Eigen::Index i = 0; i < n_angles; ++i)
        geom.angles_deg.push_back(
            n_angles == 1
                ? angle_start
                : angle_start + (angle_stop - angle_start) *
                                    static_cast<double>(i) /
                                    static_cast<double>(n_angles - 1));

    const double noise_level = cfg.resolve_double("noise", "level", 0.001);
    const double cauchy_reg = cfg.resolve_double("tomo", "cauchy_reg", 0.3);
    const double gaussian_reg = cfg.resolve_double("tomo", "gaussian_reg", 0.02);
    const double tv_reg = cfg.resolve_double("tomo", "tv_reg", 10.0);
    const BoundaryRule boundary =
        parse_boundary(cfg.resolve_string("tomo", "boundary", "free"));
    const SheppLoganVariant variant =
        cfg.resolve_string("tomo", "phantom_variant", "modified") == "classic"
            ? SheppLoganVariant::Classic
            : SheppLoganVariant::Modified;
    const FbpFilter filter =
        cfg.resolve_string("tomo", "fbp_filter", "ram-lak") == "hann"
            ? FbpFilter::Hann
            : FbpFilter::RamLak;
    const auto sweeps = cfg.resolve_int("sampler", "sweeps", 4000);
    // Proposal scales start near the per-site conditional widths set by the
    // tight tomographic noise; adaptation only has to fine-tune from there.
    const ChainOptions opts = sampler_options(cfg, 0.01, 50);
    const MapConfig map_cfg = solver_config(cfg);

    const Lattice2D truth = shepp_logan(nx, ny, variant);
    const SparseOperator op = build_fanbeam_operator(geom, nx, ny, fov);
    const Vector clean = op * truth.values;
    RandomStream noise_rng(derive_seed(seed, "noise"));
    const NoisyData measured = add_noise(clean, noise_level, noise_rng);

    struct Estimate {
        std::string name;
        Vector values;
        double runtime = 0.0;
    };
    std::vector<Estimate> estimates;

    Timer fbp_timer;
    const Lattice2D fbp_image =
        fbp_reconstruct(measured.m, geom, nx, ny, filter, fov);
    const double fbp_time = fbp_timer.seconds();
    estimates.push_back({"fbp", fbp_image.values, fbp_time});

    auto make_posterior = [&](PriorFamily family, double reg) {
        Posterior post;
        post.op = op;
        post.data = measured.m;
        post.noise = measured.noise;
        post.prior.family = family;
        post.prior.reg = reg;
        post.prior.boundary = boundary;
        post.layout = Layout::of(truth);
        return post;
    };

    if (mode != TomoMode::FbpOnly) {
        {
            Timer timer;
            const auto result = map_estimate(
                make_posterior(PriorFamily::Cauchy, cauchy_reg), fbp_image.values,
                map_cfg);
            estimates.push_back({"map_cauchy", result.x, timer.seconds()});
        }
        if (mode == TomoMode::Full) {
            const std::vector<std::pair<std::string, Posterior>> chains = {
                {"cm_cauchy", make_posterior(PriorFamily::Cauchy, cauchy_reg)},
                {"cm_tv", make_posterior(PriorFamily::TV, tv_reg)},
                {"cm_gauss", make_posterior(PriorFamily::Gaussian, gaussian_reg)},
            };
            for (const auto& [name, post] : chains) {
                Timer timer;
                const Chain chain = scmh_run(post, fbp_image.values, sweeps, opts,
                                             derive_seed(seed, name));
                estimates.push_back({name, cm_estimate(chain), timer.seconds()});
            }
        }
    }

    // Images, their quantization ranges, RMSE table and center cross-sections.
    std::vector<std::string> image_names = {"truth"};
    std::vector<Vector> image_values = {truth.values};
    for (const auto& e : estimates) {
        image_names.push_back(e.name);
        image_values.push_back(e.values);
    }
    std::ofstream ranges(join(out_dir, "ranges.csv"));
    ranges << "image,min,max\n";
    for (std::size_t i = 0; i < image_names.size(); ++i) {
        const Lattice2D img(nx, ny, truth.h, truth.h_prime, image_values[i]);
        const PgmRange r = write_pgm(join(out_dir, image_names[i] + ".pgm"), img);
        ranges << image_names[i] << ',' << format_number(r.lo) << ','
               << format_number(r.hi) << '\n';
    }
    ranges.close();

    {
        std::ofstream os(join(out_dir, "rmse.csv"));
        os << "method,rmse,runtime_s\n";
        for (const auto& e : estimates)
            os << e.name << ',' << format_number(rmse(e.values, truth.values))
               << ',' << format_number(e.runtime) << '\n';
    }

    const Eigen::Index mid_y = ny / 2, mid_x = nx / 2;
    std::vector<std::string> cross_header = {"coord", "truth"};
    for (const auto& e : estimates) cross_header.push_back(e.name);
    std::vector<Vector> cross_h(cross_header.size(), Vector(nx));
    std::vector<Vector> cross_v(cross_header.size(), Vector(ny));
    for (Eigen::Index ix = 0; ix < nx; ++ix) {
        cross_h[0][ix] = -fov + (static_cast<double>(ix) + 0.5) * truth.h;
        cross_h[1][ix] = truth.at(ix, mid_y);
        for (std::size_t e = 0; e < estimates.size(); ++e)
            cross_h[e + 2][ix] = estimates[e].values[mid_y * nx + ix];
    }
    for (Eigen::Index iy = 0; iy < ny; ++iy) {
        cross_v[0][iy] = -fov + (static_cast<double>(iy) + 0.5) * truth.h_prime;
        cross_v[1][iy] = truth.at(mid_x, iy);
        for (std::size_t e = 0; e < estimates.size(); ++e)
            cross_v[e + 2][iy] = estimates[e].values[iy * nx + mid_x];
    }
    write_csv(join(out_dir, "cross_horizontal.csv"), cross_header, cross_h);
    write_csv(join(out_dir, "cross_vertical.csv"), cross_header, cross_v);

    const char* command = mode == TomoMode::Full     ? "tomo"
                          : mode == TomoMode::FbpOnly ? "fbp-only"
                                                      : "map-only";
    write_manifest(cfg, out_dir, command);
}

}  // namespace levybayes
