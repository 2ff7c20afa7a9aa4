#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "stl2vec/formula.hpp"
#include "stl2vec/trajectory.hpp"

namespace stl2vec {

struct ExplanationItem {
  std::size_t pc = 0;          // embedding column the statistic was assigned to
  std::string statistic;
  double abs_r = 0.0;          // |Pearson r| between statistic and that column
};

struct ExplanationReport {
  std::vector<ExplanationItem> items;
};

/// Per-formula median normalized robustness over the trajectory set.
std::vector<double> median_robustness(const std::vector<FormulaPtr>& formulae,
                                      const std::vector<Trajectory>& trajs);

/// |Pearson r| between the first embedding column and the median robustness
/// of each formula.
double explain_pc0(const Eigen::MatrixXd& coords,
                   const std::vector<FormulaPtr>& formulae,
                   const std::vector<Trajectory>& trajs);

struct GroupExplainParams {
  std::size_t per_var_count = 400;  // single-variable probe formulae per variable
  double p_leaf = 0.5;
  std::size_t t_max = 10;
  std::uint64_t seed = 0;
};

/// For each variable i: the mean kernel similarity of each dataset formula
/// to high-robustness-variance single-variable probes of x_i, optimally
/// assigned to embedding columns 1..n_vars.
ExplanationReport explain_group2(const Eigen::MatrixXd& coords,
                                 const std::vector<FormulaPtr>& formulae,
                                 const std::vector<Trajectory>& fresh_trajs,
                                 std::size_t n_vars,
                                 const GroupExplainParams& params);

/// For each variable i: the mean absolute robustness change when dimension i
/// is zeroed out, optimally assigned to embedding columns
/// n_vars+1 .. 2*n_vars.
ExplanationReport explain_group3(const Eigen::MatrixXd& coords,
                                 const std::vector<FormulaPtr>& formulae,
                                 const std::vector<Trajectory>& trajs,
                                 std::size_t n_vars);

/// Mean robustness change of each formula when trajectory dimension `var`
/// is replaced by the constant 0. The signed mean is what the group-3
/// embedding axes encode (they are centered linear functionals, so folding
/// the sign with an absolute value destroys the correlation); the absolute
/// mean measures unsigned variable importance.
std::vector<double> zeroed_robustness_delta(const std::vector<FormulaPtr>& formulae,
                                            const std::vector<Trajectory>& trajs,
                                            std::size_t var,
                                            bool signed_mean = true);

/// Matches the first d axes of two embeddings of a shared probe formula set
/// by maximum total |cosine|; entry r is the matched similarity of axis r of
/// the first embedding.
std::vector<double> match_axes(const Eigen::MatrixXd& probe_coords_a,
                               const Eigen::MatrixXd& probe_coords_b,
                               Eigen::Index d);

/// Copy of f with every atom rewritten to variable `var`.
FormulaPtr substitute_var(const Formula& f, std::size_t var);

}  // namespace stl2vec
