#include "stl2vec/ridge.hpp"

#include <cmath>
#include <stdexcept>

#include "stl2vec/stats.hpp"

namespace stl2vec {

namespace {

Eigen::VectorXd solve_checked(const Eigen::MatrixXd& A, const Eigen::VectorXd& rhs,
                              const char* who) {
  Eigen::VectorXd x = A.ldlt().solve(rhs);
  double resid = (A * x - rhs).norm();
  double scale = std::max(rhs.norm(), 1.0);
  if (!(resid <= 1e-6 * scale)) {
    throw std::domain_error(std::string(who) + ": singular or ill-conditioned system");
  }
  return x;
}

}  // namespace

RidgeModel fit_ridge_kernel(const Eigen::MatrixXd& K, const Eigen::VectorXd& y,
                            double lambda) {
  if (K.rows() != K.cols() || K.rows() != y.size()) {
    throw std::invalid_argument("fit_ridge_kernel: shape mismatch");
  }
  RidgeModel model;
  model.mode = RidgeMode::KernelSpace;
  model.lambda = lambda >= 0.0
                     ? lambda
                     : 1e-6 * K.trace() / static_cast<double>(K.rows());
  Eigen::MatrixXd A = K;
  A.diagonal().array() += model.lambda;
  model.coefficients = solve_checked(A, y, "fit_ridge_kernel");
  return model;
}

RidgeModel fit_ridge_features(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              double lambda) {
  if (X.rows() != y.size()) throw std::invalid_argument("fit_ridge_features: shape mismatch");
  RidgeModel model;
  model.mode = RidgeMode::FeatureSpace;
  model.lambda = lambda >= 0.0 ? lambda : 1e-6;
  Eigen::MatrixXd A = X.transpose() * X;
  A.diagonal().array() += model.lambda;
  model.coefficients = solve_checked(A, X.transpose() * y, "fit_ridge_features");
  return model;
}

Eigen::VectorXd predict(const RidgeModel& model, const Eigen::MatrixXd& rep) {
  if (rep.cols() != model.coefficients.size()) {
    throw std::invalid_argument("predict: representation width mismatch");
  }
  return rep * model.coefficients;
}

ErrorReport evaluate(const Eigen::VectorXd& pred, const Eigen::VectorXd& truth,
                     double eps) {
  if (pred.size() != truth.size()) throw std::invalid_argument("evaluate: length mismatch");
  ErrorReport rep;
  rep.abs_errors.reserve(pred.size());
  rep.rel_errors.reserve(pred.size());
  for (Eigen::Index i = 0; i < pred.size(); ++i) {
    double ae = std::abs(pred[i] - truth[i]);
    rep.abs_errors.push_back(ae);
    rep.rel_errors.push_back(ae / std::max(std::abs(truth[i]), eps));
  }
  const std::vector<double> ps = {0.25, 0.5, 0.75, 0.99};
  rep.ae_quantiles = quantiles(rep.abs_errors, ps);
  rep.re_quantiles = quantiles(rep.rel_errors, ps);
  return rep;
}

}  // namespace stl2vec
