#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace stl2vec {

/// Multivariate piecewise-linear signal on a uniform time grid.
/// values(i, j) is dimension j at time t0 + i*dt.
struct Trajectory {
  double t0 = 0.0;
  double dt = 1.0;
  Eigen::MatrixXd values;  // (grid length) x (dimension)

  Eigen::Index length() const { return values.rows(); }
  Eigen::Index dimension() const { return values.cols(); }
};

/// Per-dimension affine map x -> (x - shift) / scale.
struct AffineTransform {
  Eigen::VectorXd shift;
  Eigen::VectorXd scale;
};

/// Z-scores every dimension with mean/std pooled across all trajectories.
/// Throws std::domain_error on a zero-variance dimension.
std::pair<std::vector<Trajectory>, AffineTransform> standardize(
    const std::vector<Trajectory>& trajs);

/// CSV round trip: header traj_id,t,x0,...,x{n-1}; rows sorted by (traj_id, t).
void save_trajectories_csv(const std::string& path,
                           const std::vector<Trajectory>& trajs);
std::vector<Trajectory> load_trajectories_csv(const std::string& path);

}  // namespace stl2vec
