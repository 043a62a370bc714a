#include "cita/descriptor.hpp"

#include <algorithm>
#include <stdexcept>

namespace cita {

CitaParams default_params() { return CitaParams{1, 0.05, 158}; }

FeatureVector extract(const GrayImage& img, const CitaParams& params,
                      std::string source_id, ca::Execution exec) {
  params.validate();
  const auto series = ca::run(ca::init_from_image(img), params, exec);
  const double pixels = static_cast<double>(img.size());
  FeatureVector fv{{}, params, std::move(source_id)};
  fv.values.reserve(series.cumulative_mass.size());
  for (ca::State m : series.cumulative_mass)
    fv.values.push_back(static_cast<double>(m) / pixels);
  return fv;
}

Eigen::MatrixXd extract_all(std::span<const GrayImage> images,
                            const CitaParams& params) {
  params.validate();
  const auto n = static_cast<std::ptrdiff_t>(images.size());
  Eigen::MatrixXd out(n, params.iterations);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    const auto fv = extract(images[r], params, {}, ca::Execution::serial);
    for (int t = 0; t < params.iterations; ++t) out(r, t) = fv.values[t];
  }
  return out;
}

SweepResult sweep(const LabeledDataset& dataset, std::span<const double> gammas,
                  std::span<const std::int64_t> nus, const SweepOptions& options,
                  const RateEvaluator& evaluator) {
  if (dataset.size() == 0) throw InvalidInput("sweep: empty dataset");
  if (dataset.labels.size() != dataset.size())
    throw InvalidInput("sweep: label count does not match image count");
  if (gammas.empty() || nus.empty())
    throw InvalidInput("sweep: empty parameter list");
  if (options.budget < 1) throw InvalidInput("sweep: budget must be >= 1");
  if (options.stride < 1) throw InvalidInput("sweep: stride must be >= 1");
  if (!evaluator) throw InvalidInput("sweep: no evaluator");

  std::vector<int> lengths;
  for (int t = options.stride; t < options.budget; t += options.stride)
    lengths.push_back(t);
  lengths.push_back(options.budget);

  SweepResult result;
  result.budget = options.budget;
  for (double gamma : gammas) {
    for (std::int64_t nu : nus) {
      const CitaParams params{nu, gamma, options.budget};
      const Eigen::MatrixXd full = extract_all(dataset.images, params);
      SweepCell cell{gamma, nu, -1.0, 0};
      for (int len : lengths) {
        const double rate = evaluator(full.leftCols(len), dataset.labels);
        if (rate > cell.best_rate) {
          cell.best_rate = rate;
          cell.best_iterations = len;
        }
      }
      result.cells.push_back(cell);
    }
  }
  return result;
}

}  // namespace cita
