#include "stl2vec/kernel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stl2vec {

Eigen::MatrixXd robustness_matrix(const std::vector<FormulaPtr>& formulae,
                                  const std::vector<Trajectory>& trajectories,
                                  RobustnessMode mode) {
  Eigen::MatrixXd rm(static_cast<Eigen::Index>(formulae.size()),
                     static_cast<Eigen::Index>(trajectories.size()));
  for (std::size_t j = 0; j < formulae.size(); ++j) {
    for (std::size_t k = 0; k < trajectories.size(); ++k) {
      auto context = [&](const std::exception& e) {
        return "monitoring formula " + std::to_string(j) + " on trajectory " +
               std::to_string(k) + ": " + e.what();
      };
      try {
        rm(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
            robustness(*formulae[j], trajectories[k], 0, mode);
      } catch (const std::domain_error& e) {
        throw std::domain_error(context(e));
      } catch (const std::out_of_range& e) {
        throw std::out_of_range(context(e));
      } catch (const std::exception& e) {
        throw std::runtime_error(context(e));
      }
    }
  }
  return rm;
}

Eigen::MatrixXd gram(const Eigen::MatrixXd& rm) {
  if (rm.cols() < 1) throw std::invalid_argument("gram: no trajectories");
  const Eigen::Index d = rm.rows();
  const double inv_m = 1.0 / static_cast<double>(rm.cols());
  Eigen::MatrixXd K(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      double acc = 0.0;  // fixed ascending-k order keeps runs bitwise equal
      for (Eigen::Index k = 0; k < rm.cols(); ++k) acc += rm(i, k) * rm(j, k);
      K(i, j) = acc * inv_m;
      K(j, i) = K(i, j);
    }
  }
  return K;
}

Eigen::MatrixXd cross_kernel(const Eigen::MatrixXd& test_rm,
                             const Eigen::MatrixXd& train_rm) {
  if (test_rm.cols() != train_rm.cols()) {
    throw std::invalid_argument("cross_kernel: trajectory count mismatch");
  }
  const double inv_m = 1.0 / static_cast<double>(train_rm.cols());
  Eigen::MatrixXd C(test_rm.rows(), train_rm.rows());
  for (Eigen::Index t = 0; t < test_rm.rows(); ++t) {
    for (Eigen::Index i = 0; i < train_rm.rows(); ++i) {
      double acc = 0.0;
      for (Eigen::Index k = 0; k < train_rm.cols(); ++k) {
        acc += test_rm(t, k) * train_rm(i, k);
      }
      C(t, i) = acc * inv_m;
    }
  }
  return C;
}

Eigen::MatrixXd cosine_normalize(const Eigen::MatrixXd& K) {
  if (K.rows() != K.cols()) throw std::invalid_argument("cosine_normalize: not square");
  Eigen::MatrixXd out = K;
  for (Eigen::Index i = 0; i < K.rows(); ++i) {
    if (!(K(i, i) > 0.0)) {
      throw std::domain_error("cosine_normalize: non-positive diagonal entry " +
                              std::to_string(i));
    }
  }
  for (Eigen::Index i = 0; i < K.rows(); ++i) {
    for (Eigen::Index j = 0; j < K.cols(); ++j) {
      out(i, j) = K(i, j) / std::sqrt(K(i, i) * K(j, j));
    }
  }
  return out;
}

}  // namespace stl2vec
