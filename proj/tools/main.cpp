// levybayes command line: edge-preserving Bayesian inversion experiments with
// Cauchy (and general alpha-stable) difference priors.
//
// Subcommands: prior-realizations | deconvolve | tomo | fbp-only | map-only
// Exit codes: 0 success, 2 configuration error, 3 numeric failure.
#include <CLI11.hpp>
#include <iostream>

#include "levybayes/experiments.hpp"
#include "levybayes/map_solver.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::int64_t seed = -1;
    bool seed_given = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "Configuration file path")
        ->required();
    sub->add_option("--out", args.out_dir, "Output directory (overrides config)");
    sub->add_option("--seed", args.seed, "Seed override for [sampler] seed");
}

levybayes::Config load_config(CommonArgs& args) {
    auto cfg = levybayes::Config::load(args.config_path);
    if (args.seed >= 0 || args.seed_given)
        cfg.set_int("sampler", "seed", args.seed);
    return cfg;
}

std::string resolve_out(const CommonArgs& args, const levybayes::Config& cfg,
                        const char* fallback) {
    if (!args.out_dir.empty()) return args.out_dir;
    if (cfg.has("output", "dir")) return cfg.get_string("output", "dir");
    return fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge-preserving Bayesian inversion with stable difference priors"};
    app.require_subcommand(1);
    app.set_version_flag("--version", levybayes::kVersion);

    CommonArgs realization_args, deconv_args, tomo_args, fbp_args, map_args;
    auto* realizations = app.add_subcommand(
        "prior-realizations", "1D random walks and 2D prior realizations");
    add_common(realizations, realization_args);
    auto* deconv =
        app.add_subcommand("deconvolve", "1D deconvolution across grid sizes");
    add_common(deconv, deconv_args);
    auto* tomo = app.add_subcommand(
        "tomo", "Fan-beam tomography with FBP, MAP and CM estimators");
    add_common(tomo, tomo_args);
    auto* fbp_only =
        app.add_subcommand("fbp-only", "Fan-beam tomography, FBP baseline only");
    add_common(fbp_only, fbp_args);
    auto* map_only =
        app.add_subcommand("map-only", "Fan-beam tomography, Cauchy MAP only");
    add_common(map_only, map_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*realizations) {
            realization_args.seed_given = realizations->count("--seed") > 0;
            auto cfg = load_config(realization_args);
            levybayes::run_prior_realizations(
                cfg, resolve_out(realization_args, cfg, "out-prior-realizations"));
        } else if (*deconv) {
            deconv_args.seed_given = deconv->count("--seed") > 0;
            auto cfg = load_config(deconv_args);
            levybayes::run_deconvolution(cfg,
                                         resolve_out(deconv_args, cfg, "out-deconvolve"));
        } else if (*tomo) {
            tomo_args.seed_given = tomo->count("--seed") > 0;
            auto cfg = load_config(tomo_args);
            levybayes::run_tomography(cfg, resolve_out(tomo_args, cfg, "out-tomo"),
                                      levybayes::TomoMode::Full);
        } else if (*fbp_only) {
            fbp_args.seed_given = fbp_only->count("--seed") > 0;
            auto cfg = load_config(fbp_args);
            levybayes::run_tomography(cfg, resolve_out(fbp_args, cfg, "out-fbp"),
                                      levybayes::TomoMode::FbpOnly);
        } else if (*map_only) {
            map_args.seed_given = map_only->count("--seed") > 0;
            auto cfg = load_config(map_args);
            levybayes::run_tomography(cfg, resolve_out(map_args, cfg, "out-map"),
                                      levybayes::TomoMode::MapOnly);
        }
    } catch (const levybayes::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const levybayes::SolverError& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
