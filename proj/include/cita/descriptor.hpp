#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "cita/ca_core.hpp"
#include "cita/labeled_dataset.hpp"

namespace cita {

/// Per-pixel-normalised cumulative corroded mass, one entry per step.
struct FeatureVector {
  std::vector<double> values;
  CitaParams params;
  std::string source_id;
};

/// nu = 1, gamma = 0.05, 158 iterations.
CitaParams default_params();

FeatureVector extract(const GrayImage& img, const CitaParams& params,
                      std::string source_id = {},
                      ca::Execution exec = ca::Execution::parallel);

/// Runs extract over every image, parallel across images. Row r of the result
/// is the feature vector of images[r].
Eigen::MatrixXd extract_all(std::span<const GrayImage> images,
                            const CitaParams& params);

/// Success rate in percent for a feature matrix (one row per sample).
using RateEvaluator =
    std::function<double(const Eigen::MatrixXd& features, std::span<const int> labels)>;

struct SweepCell {
  double gamma = 0.0;
  std::int64_t nu = 0;
  double best_rate = 0.0;
  int best_iterations = 0;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // gamma-major, nu-minor
  int budget = 0;
};

struct SweepOptions {
  int budget = 200;
  /// Prefix lengths scanned are stride, 2*stride, ..., and always budget.
  int stride = 1;
};

/// One CA run per image and (gamma, nu); each prefix length of the cumulative
/// series is scored by the evaluator and the best rate with the shortest
/// prefix achieving it is kept.
SweepResult sweep(const LabeledDataset& dataset, std::span<const double> gammas,
                  std::span<const std::int64_t> nus, const SweepOptions& options,
                  const RateEvaluator& evaluator);

}  // namespace cita
