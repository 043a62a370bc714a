#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cita/ca_core.hpp"

namespace cita::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kDataValidation = 3 };

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr int kDefaultFolds = 10;

/// Parsed command line. Precedence: flags, then --config file, then defaults.
struct RunConfig {
  std::string command;     // extract | evaluate | perturb | sweep | synth
  std::string subcommand;  // perturb: noise | rotate
  std::string manifest;
  std::string test_manifest;
  std::string features;
  std::string method = "cita";
  CitaParams params{1, 0.05, 158};
  int k = kDefaultFolds;
  std::uint64_t seed = kDefaultSeed;
  double shrinkage = 0.0;
  double noise_level = 0.0;
  std::string mode = "both_noisy";
  std::string out = "out";
  int threads = 0;  // 0: OpenMP default
  std::vector<double> gammas;
  std::vector<std::int64_t> nus;
  int stride = 1;
  int synth_size = 64;
  int synth_samples = 10;
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// Never throws; returns an ExitCode.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace cita::cli
