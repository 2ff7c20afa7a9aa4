#pragma once

#include <Eigen/Dense>
#include <vector>

namespace stl2vec {

enum class RidgeMode { KernelSpace, FeatureSpace };

/// Ridge regression. Kernel mode solves (K + lambda I) c = y; feature mode
/// solves (X'X + lambda I) w = X'y. Callers wanting an unpenalized intercept
/// center y (and features) themselves and add the mean back after predict.
struct RidgeModel {
  RidgeMode mode = RidgeMode::KernelSpace;
  Eigen::VectorXd coefficients;  // length D (kernel) or d (feature)
  double lambda = 0.0;
};

/// lambda < 0 selects the default 1e-6 * trace(K)/D.
RidgeModel fit_ridge_kernel(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                            double lambda = -1.0);
/// lambda < 0 selects the default 1e-6.
RidgeModel fit_ridge_features(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              double lambda = -1.0);

/// Kernel mode expects cross-kernel rows against the training set; feature
/// mode expects feature rows.
Eigen::VectorXd predict(const RidgeModel& model, const Eigen::MatrixXd& rep);

/// AE = |pred - truth|; RE = AE / max(|truth|, eps).
struct ErrorReport {
  std::vector<double> abs_errors;
  std::vector<double> rel_errors;
  // 1st quartile, median, 3rd quartile, 99th percentile
  std::vector<double> ae_quantiles;
  std::vector<double> re_quantiles;
};

ErrorReport evaluate(const Eigen::VectorXd& pred, const Eigen::VectorXd& truth,
                     double eps = 1e-6);

}  // namespace stl2vec
