#pragma once

#include <Eigen/Dense>
#include <vector>

#include "stl2vec/formula.hpp"
#include "stl2vec/robustness.hpp"
#include "stl2vec/trajectory.hpp"

namespace stl2vec {

/// r(j, k) = robustness of formula j on trajectory k at t = 0.
/// Shape: (formula count) x (trajectory count).
Eigen::MatrixXd robustness_matrix(const std::vector<FormulaPtr>& formulae,
                                  const std::vector<Trajectory>& trajectories,
                                  RobustnessMode mode = RobustnessMode::Normalized);

/// Monte-Carlo kernel estimate K(i, j) = (1/M) sum_k r(i, k) r(j, k),
/// accumulated in ascending k so results do not depend on scheduling.
Eigen::MatrixXd gram(const Eigen::MatrixXd& rm);

/// Row t, column i = (1/M) sum_k test_rm(t, k) * train_rm(i, k); both
/// matrices must share the trajectory set.
Eigen::MatrixXd cross_kernel(const Eigen::MatrixXd& test_rm,
                             const Eigen::MatrixXd& train_rm);

/// Optional cosine normalization K(i, j) / sqrt(K(i, i) K(j, j)).
Eigen::MatrixXd cosine_normalize(const Eigen::MatrixXd& K);

}  // namespace stl2vec
