#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace cita::classify {

/// Sample-to-fold map produced by stratified_kfold.
struct FoldAssignment {
  int k = 0;
  std::uint64_t seed = 0;
  std::vector<int> fold;              // fold[i] in [0, k)
  std::vector<std::string> warnings;  // classes with fewer than k samples
};

/// Shuffles each class with a seeded Mersenne Twister and deals its samples
/// round-robin over the folds, continuing the deal where the previous class
/// stopped. Per-class fold counts therefore differ by at most one, and so do
/// total fold sizes. Classes smaller than k land in distinct folds and are
/// reported in warnings. Throws InvalidInput for k < 2 or empty labels.
FoldAssignment stratified_kfold(std::span<const int> labels, int k,
                                std::uint64_t seed);

/// Default diagonal floor, relative to the average covariance eigenvalue.
inline constexpr double kDefaultCovarianceFloor = 1e-6;

/// Shared-covariance Gaussian classifier with linear discriminants
///   score_c(x) = x' S^+ mu_c - mu_c' S^+ mu_c / 2 + log prior_c.
struct LdaModel {
  std::vector<int> classes;    // sorted distinct labels
  Eigen::MatrixXd means;       // classes x features
  Eigen::MatrixXd covariance;  // pooled within-class, after shrinkage and floor
  Eigen::VectorXd priors;      // class proportions in the training data
  double shrinkage = 0.0;
  Eigen::MatrixXd weights;     // features x classes, S^+ mu_c per column
  Eigen::VectorXd bias;        // per-class constant term

  Eigen::Index dimension() const { return means.cols(); }
};

/// Pooled covariance is the maximum-likelihood estimate (scatter / n). It is
/// blended toward (trace / dim) * I by the shrinkage coefficient, then
/// floor * (trace / dim) is added to the diagonal and a pseudo-inverse is
/// taken. Throws InvalidInput for fewer than two classes, fewer than two
/// samples, mismatched sizes or shrinkage outside [0, 1].
LdaModel lda_fit(const Eigen::MatrixXd& features, std::span<const int> labels,
                 double shrinkage = 0.0,
                 double floor = kDefaultCovarianceFloor);

/// Highest discriminant wins; exact ties go to the lowest class.
std::vector<int> lda_predict(const LdaModel& model, const Eigen::MatrixXd& features);

struct EvalReport {
  int k = 0;
  std::uint64_t seed = 0;
  double shrinkage = 0.0;
  std::vector<int> classes;
  std::vector<double> fold_rates;  // percent, folds with no test samples omitted
  std::vector<int> fold_sizes;
  double mean_rate = 0.0;          // mean of fold_rates
  double std_rate = 0.0;           // sample standard deviation of fold_rates
  std::size_t correct = 0;
  std::size_t total = 0;
  std::vector<std::vector<std::int64_t>> confusion;  // [true][predicted]
  std::vector<std::string> warnings;
};

/// Stratified k-fold cross-validation of LDA on one feature matrix.
EvalReport evaluate(const Eigen::MatrixXd& features, std::span<const int> labels,
                    int k, std::uint64_t seed, double shrinkage = 0.0);

/// Cross-validation over paired feature matrices: each fold is fitted on the
/// training-side rows of the other folds and scored on the test-side rows of
/// the held-out fold. Row i of both matrices describes the same sample.
EvalReport evaluate_paired(const Eigen::MatrixXd& train_side,
                           const Eigen::MatrixXd& test_side,
                           std::span<const int> labels, int k, std::uint64_t seed,
                           double shrinkage = 0.0);

}  // namespace cita::classify
