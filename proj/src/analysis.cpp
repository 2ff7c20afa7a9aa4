#include "stl2vec/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stl2vec/assignment.hpp"
#include "stl2vec/formula_sampler.hpp"
#include "stl2vec/kernel.hpp"
#include "stl2vec/robustness.hpp"
#include "stl2vec/stats.hpp"

namespace stl2vec {

FormulaPtr substitute_var(const Formula& f, std::size_t var) {
  switch (f.kind) {
    case FormulaKind::True:
      return make_true();
    case FormulaKind::Atom:
      return make_atom(var, f.relation, f.threshold);
    case FormulaKind::Not:
      return make_not(substitute_var(*f.children[0], var));
    case FormulaKind::And:
      return make_and(substitute_var(*f.children[0], var),
                      substitute_var(*f.children[1], var));
    case FormulaKind::Or:
      return make_or(substitute_var(*f.children[0], var),
                     substitute_var(*f.children[1], var));
    case FormulaKind::Eventually:
      return make_eventually(f.lo, f.hi, substitute_var(*f.children[0], var));
    case FormulaKind::Always:
      return make_always(f.lo, f.hi, substitute_var(*f.children[0], var));
    case FormulaKind::Until:
      return make_until(f.lo, f.hi, substitute_var(*f.children[0], var),
                        substitute_var(*f.children[1], var));
  }
  throw std::logic_error("unreachable formula kind");
}

std::vector<double> median_robustness(const std::vector<FormulaPtr>& formulae,
                                      const std::vector<Trajectory>& trajs) {
  std::vector<double> medians(formulae.size());
  std::vector<double> row(trajs.size());
  for (std::size_t j = 0; j < formulae.size(); ++j) {
    for (std::size_t k = 0; k < trajs.size(); ++k) {
      row[k] = robustness(*formulae[j], trajs[k], 0, RobustnessMode::Normalized);
    }
    medians[j] = quantile(row, 0.5);
  }
  return medians;
}

double explain_pc0(const Eigen::MatrixXd& coords,
                   const std::vector<FormulaPtr>& formulae,
                   const std::vector<Trajectory>& trajs) {
  if (coords.rows() != static_cast<Eigen::Index>(formulae.size()) || coords.cols() < 1) {
    throw std::invalid_argument("explain_pc0: embedding shape mismatch");
  }
  std::vector<double> pc0(coords.col(0).data(), coords.col(0).data() + coords.rows());
  return std::abs(pearson(pc0, median_robustness(formulae, trajs)));
}

namespace {

// statistics: one vector per variable; pcs: which embedding columns to fill
ExplanationReport assign_statistics(const Eigen::MatrixXd& coords,
                                    const std::vector<std::vector<double>>& stats,
                                    const std::vector<std::size_t>& pcs,
                                    const std::string& stat_prefix) {
  const std::size_t n = stats.size();
  std::vector<std::vector<double>> score(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> col(coords.col(static_cast<Eigen::Index>(pcs[j])).data(),
                              coords.col(static_cast<Eigen::Index>(pcs[j])).data() +
                                  coords.rows());
      score[i][j] = std::abs(pearson(stats[i], col));
    }
  }
  std::vector<std::size_t> perm = assign_max(score);
  ExplanationReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    rep.items.push_back({pcs[perm[i]], stat_prefix + std::to_string(i),
                         score[i][perm[i]]});
  }
  return rep;
}

}  // namespace

ExplanationReport explain_group2(const Eigen::MatrixXd& coords,
                                 const std::vector<FormulaPtr>& formulae,
                                 const std::vector<Trajectory>& fresh_trajs,
                                 std::size_t n_vars,
                                 const GroupExplainParams& params) {
  if (coords.cols() < static_cast<Eigen::Index>(n_vars) + 1) {
    throw std::invalid_argument("explain_group2: embedding needs at least n_vars+1 columns");
  }
  Eigen::MatrixXd test_rm = robustness_matrix(formulae, fresh_trajs);
  const double inv_m = 1.0 / static_cast<double>(fresh_trajs.size());

  std::vector<std::vector<double>> stats;
  for (std::size_t var = 0; var < n_vars; ++var) {
    FormulaDistParams fd;
    fd.p_leaf = params.p_leaf;
    fd.t_max = params.t_max;
    fd.n_vars = 1;
    fd.seed = params.seed + var;  // independent probe set per variable
    std::vector<FormulaPtr> probes = sample_formulae(fd, params.per_var_count);
    for (auto& f : probes) f = substitute_var(*f, var);

    Eigen::MatrixXd probe_rm = robustness_matrix(probes, fresh_trajs);
    std::vector<double> stds(probes.size());
    for (std::size_t j = 0; j < probes.size(); ++j) {
      auto row = probe_rm.row(static_cast<Eigen::Index>(j));
      double mean = row.mean();
      stds[j] = std::sqrt((row.array() - mean).square().mean());
    }
    double cut = quantile(stds, 0.9);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < probes.size(); ++j) {
      if (stds[j] > cut) keep.push_back(j);
    }
    if (keep.size() < 10) {
      throw std::domain_error("explain_group2: fewer than 10 high-variance probes for x" +
                              std::to_string(var));
    }
    // mean kernel similarity of each dataset formula to the kept probes
    std::vector<double> stat(formulae.size(), 0.0);
    for (std::size_t t = 0; t < formulae.size(); ++t) {
      double acc = 0.0;
      for (std::size_t j : keep) {
        acc += test_rm.row(static_cast<Eigen::Index>(t))
                   .dot(probe_rm.row(static_cast<Eigen::Index>(j))) *
               inv_m;
      }
      stat[t] = acc / static_cast<double>(keep.size());
    }
    stats.push_back(std::move(stat));
  }

  std::vector<std::size_t> pcs(n_vars);
  for (std::size_t j = 0; j < n_vars; ++j) pcs[j] = 1 + j;
  return assign_statistics(coords, stats, pcs, "mean_kernel_similarity_x");
}

std::vector<double> zeroed_robustness_delta(const std::vector<FormulaPtr>& formulae,
                                            const std::vector<Trajectory>& trajs,
                                            std::size_t var, bool signed_mean) {
  std::vector<Trajectory> zeroed = trajs;
  for (auto& tr : zeroed) tr.values.col(static_cast<Eigen::Index>(var)).setZero();
  std::vector<double> delta(formulae.size(), 0.0);
  for (std::size_t j = 0; j < formulae.size(); ++j) {
    // robustness is unchanged for formulae not mentioning x_var
    if (!contains_var(*formulae[j], var)) continue;
    double acc = 0.0;
    for (std::size_t k = 0; k < trajs.size(); ++k) {
      double d = robustness(*formulae[j], trajs[k], 0, RobustnessMode::Normalized) -
                 robustness(*formulae[j], zeroed[k], 0, RobustnessMode::Normalized);
      acc += signed_mean ? d : std::abs(d);
    }
    delta[j] = acc / static_cast<double>(trajs.size());
  }
  return delta;
}

ExplanationReport explain_group3(const Eigen::MatrixXd& coords,
                                 const std::vector<FormulaPtr>& formulae,
                                 const std::vector<Trajectory>& trajs,
                                 std::size_t n_vars) {
  if (coords.cols() < static_cast<Eigen::Index>(2 * n_vars) + 1) {
    throw std::invalid_argument("explain_group3: embedding needs at least 2*n_vars+1 columns");
  }
  std::vector<std::vector<double>> stats;
  for (std::size_t var = 0; var < n_vars; ++var) {
    stats.push_back(zeroed_robustness_delta(formulae, trajs, var));
  }
  std::vector<std::size_t> pcs(n_vars);
  for (std::size_t j = 0; j < n_vars; ++j) pcs[j] = 1 + n_vars + j;
  return assign_statistics(coords, stats, pcs, "zeroed_robustness_delta_x");
}

std::vector<double> match_axes(const Eigen::MatrixXd& probe_coords_a,
                               const Eigen::MatrixXd& probe_coords_b,
                               Eigen::Index d) {
  if (probe_coords_a.rows() != probe_coords_b.rows()) {
    throw std::invalid_argument("match_axes: probe sets differ in size");
  }
  if (d > probe_coords_a.cols() || d > probe_coords_b.cols()) {
    throw std::invalid_argument("match_axes: fewer axes than requested");
  }
  const std::size_t n = static_cast<std::size_t>(d);
  std::vector<std::vector<double>> score(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> a(probe_coords_a.col(static_cast<Eigen::Index>(i)).data(),
                          probe_coords_a.col(static_cast<Eigen::Index>(i)).data() +
                              probe_coords_a.rows());
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> b(probe_coords_b.col(static_cast<Eigen::Index>(j)).data(),
                            probe_coords_b.col(static_cast<Eigen::Index>(j)).data() +
                                probe_coords_b.rows());
      score[i][j] = std::abs(cosine(a, b));
    }
  }
  std::vector<std::size_t> perm = assign_max(score);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = score[i][perm[i]];
  return out;
}

}  // namespace stl2vec
