#include "stl2vec/mu0.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "stl2vec/rng.hpp"

namespace stl2vec {

std::size_t mu0_grid_length(const Mu0Params& p) {
  if (!(p.dt > 0.0) || !(p.t_end > p.t_start)) {
    throw std::invalid_argument("trajectory grid requires dt > 0 and t_end > t_start");
  }
  return static_cast<std::size_t>(std::floor((p.t_end - p.t_start) / p.dt + 1e-9)) + 1;
}

std::vector<Trajectory> sample_mu0(const Mu0Params& p, std::size_t count) {
  if (p.dim == 0) throw std::invalid_argument("dimension must be positive");
  if (!(p.flip_prob >= 0.0 && p.flip_prob <= 1.0)) {
    throw std::invalid_argument("flip probability must be in [0, 1]");
  }
  const std::size_t n = mu0_grid_length(p);

  std::vector<Trajectory> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = substream_engine(p.seed, "mu0", i);
    std::normal_distribution<double> init(p.mean_init, p.sd_init);
    std::normal_distribution<double> tv_root(p.mean_tv, p.sd_tv);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    Trajectory& tr = out[i];
    tr.t0 = p.t_start;
    tr.dt = p.dt;
    tr.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p.dim));
    for (std::size_t d = 0; d < p.dim; ++d) {
      double x0 = init(rng);
      double root = tv_root(rng);
      double total = root * root;

      // n-1 increments: gaps cut into [0, total] by n-2 sorted uniform draws
      std::vector<double> cuts(n - 2);
      for (double& c : cuts) c = unit(rng) * total;
      std::sort(cuts.begin(), cuts.end());

      double base = unit(rng) < 0.5 ? 1.0 : -1.0;
      double x = x0;
      tr.values(0, static_cast<Eigen::Index>(d)) = x;
      double prev_cut = 0.0;
      for (std::size_t k = 1; k < n; ++k) {
        double cut = k - 1 < cuts.size() ? cuts[k - 1] : total;
        double step = cut - prev_cut;
        prev_cut = cut;
        double sign = unit(rng) < p.flip_prob ? -base : base;
        x += sign * step;
        tr.values(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(d)) = x;
      }
    }
  }
  return out;
}

}  // namespace stl2vec
