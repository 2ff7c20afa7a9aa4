#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>

namespace stl2vec {

/// Kernel PCA basis: eigenpairs of the double-centered training Gram matrix
/// plus the centering statistics needed to project new kernel rows.
struct KpcaModel {
  Eigen::VectorXd eigenvalues;   // descending; entries below 1e-10*max zeroed
  Eigen::MatrixXd eigenvectors;  // column j is the unit eigenvector for eigenvalue j
  Eigen::VectorXd row_means;     // training Gram row means
  double grand_mean = 0.0;
  Eigen::Index d = 0;            // retained dimension
  std::map<std::string, std::string> provenance;

  Eigen::Index size() const { return eigenvalues.size(); }
};

/// Double centering: K - 1K/D - K1/D + 1K1/D^2. Rows and columns of the
/// result sum to zero.
Eigen::MatrixXd center(const Eigen::MatrixXd& K);

/// Eigendecomposition of the centered Gram matrix. Throws std::domain_error
/// when d exceeds the number of positive eigenvalues.
KpcaModel fit_kpca(const Eigen::MatrixXd& K, Eigen::Index d);

/// Training coordinates: column j = sqrt(lambda_j) * alpha_j.
Eigen::MatrixXd training_coordinates(const KpcaModel& model);

/// Out-of-sample coordinates from raw cross-kernel rows (one row per
/// formula, columns matching the training set). Centering statistics stored
/// in the model are applied; projecting a training row reproduces its
/// training coordinates.
Eigen::MatrixXd project(const KpcaModel& model, const Eigen::MatrixXd& cross_rows);

/// X_d: cumulative share of the positive spectrum carried by the first d axes.
double variance_explained(const KpcaModel& model, Eigen::Index d);

void save_kpca_model(const std::string& path, const KpcaModel& model);
KpcaModel load_kpca_model(const std::string& path);

}  // namespace stl2vec
