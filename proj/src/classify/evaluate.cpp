#include "cita/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cita/error.hpp"

namespace cita::classify {

namespace {
struct FoldOutcome {
  std::vector<std::size_t> test_rows;
  std::vector<int> predicted;
};

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<std::size_t>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(r) = m.row(rows[r]);
  return out;
}
}  // namespace

EvalReport evaluate_paired(const Eigen::MatrixXd& train_side,
                           const Eigen::MatrixXd& test_side,
                           std::span<const int> labels, int k, std::uint64_t seed,
                           double shrinkage) {
  if (train_side.rows() != test_side.rows() || train_side.cols() != test_side.cols())
    throw InvalidInput("evaluate: paired feature matrices differ in shape");
  if (static_cast<std::size_t>(train_side.rows()) != labels.size())
    throw InvalidInput("evaluate: label count does not match sample count");

  const auto folds = stratified_kfold(labels, k, seed);
  EvalReport report;
  report.k = k;
  report.seed = seed;
  report.shrinkage = shrinkage;
  report.warnings = folds.warnings;
  report.classes.assign(labels.begin(), labels.end());
  std::sort(report.classes.begin(), report.classes.end());
  report.classes.erase(std::unique(report.classes.begin(), report.classes.end()),
                       report.classes.end());
  if (report.classes.size() < 2) throw InvalidInput("evaluate: need at least two classes");

  std::vector<FoldOutcome> outcomes(k);
  std::vector<std::string> errors(k);
#pragma omp parallel for schedule(dynamic)
  for (int f = 0; f < k; ++f) {
    std::vector<std::size_t> train_rows;
    std::vector<int> train_labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (folds.fold[i] == f) {
        outcomes[f].test_rows.push_back(i);
      } else {
        train_rows.push_back(i);
        train_labels.push_back(labels[i]);
      }
    }
    if (outcomes[f].test_rows.empty()) continue;
    try {
      const auto model = lda_fit(take_rows(train_side, train_rows), train_labels, shrinkage);
      outcomes[f].predicted = lda_predict(model, take_rows(test_side, outcomes[f].test_rows));
    } catch (const std::exception& e) {
      errors[f] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw InvalidInput("evaluate: " + e);

  const auto n_classes = report.classes.size();
  report.confusion.assign(n_classes, std::vector<std::int64_t>(n_classes, 0));
  auto class_index = [&](int label) {
    return static_cast<std::size_t>(
        std::lower_bound(report.classes.begin(), report.classes.end(), label) -
        report.classes.begin());
  };
  for (const auto& fold : outcomes) {
    report.fold_sizes.push_back(static_cast<int>(fold.test_rows.size()));
    if (fold.test_rows.empty()) continue;
    std::size_t hits = 0;
    for (std::size_t t = 0; t < fold.test_rows.size(); ++t) {
      const int truth = labels[fold.test_rows[t]];
      hits += fold.predicted[t] == truth;
      ++report.confusion[class_index(truth)][class_index(fold.predicted[t])];
    }
    report.correct += hits;
    report.total += fold.test_rows.size();
    report.fold_rates.push_back(100.0 * static_cast<double>(hits) /
                                static_cast<double>(fold.test_rows.size()));
  }

  const auto m = static_cast<double>(report.fold_rates.size());
  report.mean_rate =
      std::accumulate(report.fold_rates.begin(), report.fold_rates.end(), 0.0) / m;
  if (report.fold_rates.size() > 1) {
    double ss = 0.0;
    for (double r : report.fold_rates) ss += (r - report.mean_rate) * (r - report.mean_rate);
    report.std_rate = std::sqrt(ss / (m - 1.0));
  }
  return report;
}

EvalReport evaluate(const Eigen::MatrixXd& features, std::span<const int> labels,
                    int k, std::uint64_t seed, double shrinkage) {
  return evaluate_paired(features, features, labels, k, seed, shrinkage);
}

}  // namespace cita::classify
