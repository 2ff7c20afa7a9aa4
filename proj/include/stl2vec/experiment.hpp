#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <vector>

#include "stl2vec/formula.hpp"
#include "stl2vec/kpca.hpp"
#include "stl2vec/ridge.hpp"
#include "stl2vec/ssa.hpp"
#include "stl2vec/trajectory.hpp"

namespace stl2vec {

enum class TrajectorySource { Mu0, Sirs, Network };

/// End-to-end dataset for one experiment: formulae, kernel trajectories,
/// robustness rows, Gram matrix, and a kPCA basis.
struct ExplanationPipelineParams {
  std::size_t n_vars = 3;
  double p_leaf = 0.5;
  double q = 0.1;          // trajectory monotonicity-flip probability
  double k_scale = 1.0;    // scale of the total-variation Gaussian
  std::size_t formula_count = 1000;
  std::size_t traj_count = 10000;
  Eigen::Index dim = 0;    // retained axes; 0 means 2*n_vars + 1
  TrajectorySource source = TrajectorySource::Mu0;
  ReactionNetwork network;  // used when source == Network
  std::uint64_t seed = 0;
};

struct ExplanationScores {
  double pc0 = 0.0;
  std::vector<double> group2;  // assigned |r| per variable, axes 1..n
  std::vector<double> group3;  // assigned |r| per variable, axes n+1..2n
};

/// Samples a formula dataset and trajectories, fits the kernel embedding,
/// and runs all three PC explanations.
ExplanationScores run_explanation_pipeline(const ExplanationPipelineParams& p);

struct TrainedEmbedding;

/// Explanations for an already-trained embedding (avoids refitting when the
/// caller also needs the artifacts).
ExplanationScores explanation_scores(const TrainedEmbedding& te,
                                     const ExplanationPipelineParams& p);

/// The trained artifacts of the same pipeline, for callers that need more
/// than the scores (stability probes, scatter exports).
struct TrainedEmbedding {
  std::vector<FormulaPtr> formulae;
  std::vector<Trajectory> trajectories;
  Eigen::MatrixXd robustness_rows;  // formulae x trajectories
  Eigen::MatrixXd gram_matrix;
  KpcaModel model;
  Eigen::MatrixXd coords;  // training coordinates, formula_count x dim
};

TrainedEmbedding train_embedding(const ExplanationPipelineParams& p);

enum class RegressionTarget { Rho, ExpectedRobustness, SatProb };

struct RegressionConfig {
  RegressionTarget target = RegressionTarget::ExpectedRobustness;
  TrajectorySource source = TrajectorySource::Mu0;
  ReactionNetwork network;
  std::size_t n_vars = 3;
  double p_leaf = 0.5;
  std::size_t train_count = 1000;
  std::size_t test_count = 200;
  std::size_t traj_count = 5000;
  std::vector<Eigen::Index> dims = {10, 500};  // stl2vec dimensions to sweep
  std::size_t reps = 20;
  double lambda = -1.0;  // < 0: 1e-6 * trace(centered K)/D
  std::uint64_t seed = 0;
};

struct RegressionRepResult {
  ErrorReport kernel;                        // full-kernel ridge
  std::map<Eigen::Index, ErrorReport> by_dim;
};

std::vector<RegressionRepResult> run_regression_experiment(const RegressionConfig& c);

/// One rep of the regression experiment, exposed for targeted tests.
RegressionRepResult run_regression_rep(const RegressionConfig& c, std::size_t rep);

}  // namespace stl2vec
