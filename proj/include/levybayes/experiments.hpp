// Experiment drivers behind the CLI subcommands: prior realizations, 1D
// deconvolution across grids, and 2D fan-beam tomography with the FBP, MAP
// and CM estimator family. Each run resolves its configuration defaults,
// writes all artifacts into an output directory and finishes with a
// manifest.ini that reproduces the run byte for byte.
#ifndef LEVYBAYES_EXPERIMENTS_HPP
#define LEVYBAYES_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include "levybayes/config.hpp"

namespace levybayes {

inline constexpr const char* kVersion = "levybayes 0.1.0";

/// FNV-1a mix of a base seed and a task tag; every stochastic sub-task of a
/// run draws from its own stream.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag);

void run_prior_realizations(Config& cfg, const std::string& out_dir);

void run_deconvolution(Config& cfg, const std::string& out_dir);

enum class TomoMode { Full, FbpOnly, MapOnly };
void run_tomography(Config& cfg, const std::string& out_dir,
                    TomoMode mode = TomoMode::Full);

}  // namespace levybayes

#endif
