#pragma once

#include <cstdint>
#include <vector>

#include "stl2vec/trajectory.hpp"

namespace stl2vec {

/// Parameters of the baseline stochastic trajectory sampler. Each dimension
/// is drawn independently: a Gaussian starting point, a squared-Gaussian
/// total variation split uniformly into per-step increments, and a random
/// direction per step (base direction flipped independently with probability
/// flip_prob).
struct Mu0Params {
  double t_start = 0.0;
  double t_end = 100.0;
  double dt = 1.0;
  double mean_init = 0.0;
  double sd_init = 1.0;
  double mean_tv = 0.0;   // total variation is (N(mean_tv, sd_tv))^2
  double sd_tv = 1.0;
  double flip_prob = 0.1;
  std::size_t dim = 1;
  std::uint64_t seed = 0;
};

/// Number of grid points implied by [t_start, t_end] and dt (inclusive ends).
std::size_t mu0_grid_length(const Mu0Params& p);

/// Draws `count` independent trajectories. Trajectory i depends only on
/// (seed, i), so subsets and orderings reproduce bitwise.
std::vector<Trajectory> sample_mu0(const Mu0Params& p, std::size_t count);

}  // namespace stl2vec
