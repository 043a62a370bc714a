#include "cita/classify.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "cita/error.hpp"

namespace cita::classify {

namespace {
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& sym) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double top = values.cwiseAbs().maxCoeff();
  const double tol =
      top * static_cast<double>(sym.rows()) * std::numeric_limits<double>::epsilon();
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (values[i] > tol) inv[i] = 1.0 / values[i];
  return eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
}
}  // namespace

LdaModel lda_fit(const Eigen::MatrixXd& features, std::span<const int> labels,
                 double shrinkage, double floor) {
  const Eigen::Index n = features.rows();
  const Eigen::Index dim = features.cols();
  if (static_cast<std::size_t>(n) != labels.size())
    throw InvalidInput("lda_fit: label count does not match sample count");
  if (n < 2) throw InvalidInput("lda_fit: need at least two samples");
  if (dim < 1) throw InvalidInput("lda_fit: need at least one feature");
  if (!(shrinkage >= 0.0 && shrinkage <= 1.0))
    throw InvalidInput("lda_fit: shrinkage must lie in [0, 1]");
  if (!(floor >= 0.0)) throw InvalidInput("lda_fit: floor must be >= 0");

  LdaModel model;
  model.shrinkage = shrinkage;
  model.classes.assign(labels.begin(), labels.end());
  std::sort(model.classes.begin(), model.classes.end());
  model.classes.erase(std::unique(model.classes.begin(), model.classes.end()),
                      model.classes.end());
  const auto n_classes = static_cast<Eigen::Index>(model.classes.size());
  if (n_classes < 2) throw InvalidInput("lda_fit: need at least two classes");

  std::vector<Eigen::Index> class_of(n);
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(n_classes);
  model.means = Eigen::MatrixXd::Zero(n_classes, dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    class_of[i] = std::lower_bound(model.classes.begin(), model.classes.end(),
                                   labels[i]) - model.classes.begin();
    model.means.row(class_of[i]) += features.row(i);
    counts[class_of[i]] += 1.0;
  }
  for (Eigen::Index c = 0; c < n_classes; ++c) model.means.row(c) /= counts[c];
  model.priors = counts / static_cast<double>(n);

  Eigen::MatrixXd centred(n, dim);
  for (Eigen::Index i = 0; i < n; ++i)
    centred.row(i) = features.row(i) - model.means.row(class_of[i]);
  Eigen::MatrixXd cov = (centred.transpose() * centred) / static_cast<double>(n);
  cov = (cov + cov.transpose()) * 0.5;

  const double avg_eigen = cov.trace() / static_cast<double>(dim);
  cov *= (1.0 - shrinkage);
  cov.diagonal().array() += (shrinkage + floor) * avg_eigen;
  model.covariance = cov;

  model.weights = pseudo_inverse(cov) * model.means.transpose();
  model.bias.resize(n_classes);
  for (Eigen::Index c = 0; c < n_classes; ++c)
    model.bias[c] = -0.5 * model.means.row(c).dot(model.weights.col(c)) +
                    std::log(model.priors[c]);
  return model;
}

std::vector<int> lda_predict(const LdaModel& model, const Eigen::MatrixXd& features) {
  if (features.cols() != model.dimension())
    throw InvalidInput("lda_predict: feature dimension does not match the model");
  const Eigen::MatrixXd scores =
      (features * model.weights).rowwise() + model.bias.transpose();
  std::vector<int> out(static_cast<std::size_t>(features.rows()));
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < scores.cols(); ++c)
      if (scores(i, c) > scores(i, best)) best = c;
    out[i] = model.classes[best];
  }
  return out;
}

}  // namespace cita::classify
