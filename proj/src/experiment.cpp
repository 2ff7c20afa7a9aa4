#include "stl2vec/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stl2vec/analysis.hpp"
#include "stl2vec/formula_sampler.hpp"
#include "stl2vec/kernel.hpp"
#include "stl2vec/mu0.hpp"
#include "stl2vec/rng.hpp"

namespace stl2vec {

namespace {

std::vector<Trajectory> sample_source(TrajectorySource source,
                                      const ReactionNetwork& network,
                                      std::size_t n_vars, double q, double k_scale,
                                      std::size_t count, std::uint64_t seed) {
  switch (source) {
    case TrajectorySource::Mu0: {
      Mu0Params mp;
      mp.dim = n_vars;
      mp.flip_prob = q;
      mp.sd_tv = k_scale;
      mp.seed = seed;
      return sample_mu0(mp, count);
    }
    case TrajectorySource::Sirs:
      return standardize(simulate_ssa(sirs_preset(), count, seed)).first;
    case TrajectorySource::Network:
      return standardize(simulate_ssa(network, count, seed)).first;
  }
  throw std::logic_error("unreachable trajectory source");
}

std::size_t source_dim(TrajectorySource source, const ReactionNetwork& network,
                       std::size_t n_vars) {
  switch (source) {
    case TrajectorySource::Mu0:
      return n_vars;
    case TrajectorySource::Sirs:
      return 3;
    case TrajectorySource::Network:
      return network.species.size();
  }
  throw std::logic_error("unreachable trajectory source");
}

// centering of cross-kernel rows against the training Gram statistics,
// matching the double-centered training matrix
Eigen::MatrixXd center_cross(const Eigen::MatrixXd& cross,
                             const Eigen::VectorXd& train_row_means,
                             double train_grand_mean) {
  Eigen::MatrixXd out = cross;
  Eigen::VectorXd row_means = cross.rowwise().mean();
  out.colwise() -= row_means;
  out.rowwise() -= train_row_means.transpose();
  out.array() += train_grand_mean;
  return out;
}

}  // namespace

TrainedEmbedding train_embedding(const ExplanationPipelineParams& p) {
  const std::size_t dim_vars = source_dim(p.source, p.network, p.n_vars);

  TrainedEmbedding te;
  FormulaDistParams fd;
  fd.p_leaf = p.p_leaf;
  fd.n_vars = dim_vars;
  fd.seed = substream_seed(p.seed, "pipeline-formulae", 0);
  te.formulae = sample_formulae(fd, p.formula_count);

  te.trajectories = sample_source(p.source, p.network, dim_vars, p.q, p.k_scale,
                                  p.traj_count, substream_seed(p.seed, "pipeline-trajs", 0));

  te.robustness_rows = robustness_matrix(te.formulae, te.trajectories);
  te.gram_matrix = gram(te.robustness_rows);

  Eigen::Index d = p.dim > 0 ? p.dim : static_cast<Eigen::Index>(2 * dim_vars + 1);
  te.model = fit_kpca(te.gram_matrix, d);
  te.coords = training_coordinates(te.model).leftCols(d);
  return te;
}

ExplanationScores run_explanation_pipeline(const ExplanationPipelineParams& p) {
  return explanation_scores(train_embedding(p), p);
}

ExplanationScores explanation_scores(const TrainedEmbedding& te,
                                     const ExplanationPipelineParams& p) {
  const std::size_t dim_vars = source_dim(p.source, p.network, p.n_vars);

  ExplanationScores scores;
  scores.pc0 = explain_pc0(te.coords, te.formulae, te.trajectories);

  std::vector<Trajectory> fresh =
      sample_source(p.source, p.network, dim_vars, p.q, p.k_scale, p.traj_count,
                    substream_seed(p.seed, "pipeline-fresh", 0));
  GroupExplainParams gp;
  gp.p_leaf = p.p_leaf;
  gp.seed = substream_seed(p.seed, "pipeline-probes", 0);
  ExplanationReport g2 = explain_group2(te.coords, te.formulae, fresh, dim_vars, gp);
  for (const auto& item : g2.items) scores.group2.push_back(item.abs_r);

  ExplanationReport g3 = explain_group3(te.coords, te.formulae, te.trajectories, dim_vars);
  for (const auto& item : g3.items) scores.group3.push_back(item.abs_r);
  return scores;
}

RegressionRepResult run_regression_rep(const RegressionConfig& c, std::size_t rep) {
  const std::size_t dim_vars = source_dim(c.source, c.network, c.n_vars);
  const std::size_t total = c.train_count + c.test_count;

  FormulaDistParams fd;
  fd.p_leaf = c.p_leaf;
  fd.n_vars = dim_vars;
  fd.seed = substream_seed(c.seed, "regress-formulae", rep);
  std::vector<FormulaPtr> formulae = sample_formulae(fd, total);

  // one extra trajectory reserved as the single-trajectory target
  std::vector<Trajectory> trajs =
      sample_source(c.source, c.network, dim_vars, 0.1, 1.0, c.traj_count + 1,
                    substream_seed(c.seed, "regress-trajs", rep));
  Trajectory target_traj = std::move(trajs.back());
  trajs.pop_back();

  Eigen::MatrixXd rm = robustness_matrix(formulae, trajs);

  Eigen::VectorXd y(total);
  switch (c.target) {
    case RegressionTarget::Rho:
      for (std::size_t j = 0; j < total; ++j) {
        y[static_cast<Eigen::Index>(j)] =
            robustness(*formulae[j], target_traj, 0, RobustnessMode::Normalized);
      }
      break;
    case RegressionTarget::ExpectedRobustness:
      y = rm.rowwise().mean();
      break;
    case RegressionTarget::SatProb:
      y = (rm.array() > 0.0).cast<double>().rowwise().mean();
      break;
  }
  Eigen::MatrixXd train_rm = rm.topRows(static_cast<Eigen::Index>(c.train_count));
  Eigen::MatrixXd test_rm = rm.bottomRows(static_cast<Eigen::Index>(c.test_count));
  Eigen::VectorXd y_train = y.head(static_cast<Eigen::Index>(c.train_count));
  Eigen::VectorXd y_test = y.tail(static_cast<Eigen::Index>(c.test_count));

  Eigen::MatrixXd K = gram(train_rm);
  Eigen::MatrixXd Kc = center(K);
  Eigen::MatrixXd cross = cross_kernel(test_rm, train_rm);
  Eigen::VectorXd train_row_means = K.rowwise().mean();
  double train_grand = K.mean();
  Eigen::MatrixXd cross_c = center_cross(cross, train_row_means, train_grand);

  double lambda = c.lambda >= 0.0
                      ? c.lambda
                      : 1e-6 * Kc.trace() / static_cast<double>(c.train_count);
  double y_mean = y_train.mean();
  Eigen::VectorXd yc = y_train.array() - y_mean;

  auto finish = [&](Eigen::VectorXd pred) {
    pred.array() += y_mean;
    if (c.target == RegressionTarget::SatProb) {
      pred = pred.cwiseMax(0.0).cwiseMin(1.0);
    }
    return evaluate(pred, y_test);
  };

  RegressionRepResult result;
  RidgeModel km = fit_ridge_kernel(Kc, yc, lambda);
  result.kernel = finish(predict(km, cross_c));

  // one decomposition serves every swept dimension
  KpcaModel model = fit_kpca(K, 1);
  Eigen::Index positive = 0;
  for (Eigen::Index j = 0; j < model.size(); ++j) {
    if (model.eigenvalues[j] > 0.0) ++positive;
  }
  for (Eigen::Index d : c.dims) {
    model.d = std::min(d, positive);
    Eigen::MatrixXd X = training_coordinates(model);
    Eigen::MatrixXd Z = project(model, cross);
    RidgeModel fm = fit_ridge_features(X, yc, lambda);
    result.by_dim[d] = finish(predict(fm, Z));
  }
  return result;
}

std::vector<RegressionRepResult> run_regression_experiment(const RegressionConfig& c) {
  std::vector<RegressionRepResult> out;
  out.reserve(c.reps);
  for (std::size_t rep = 0; rep < c.reps; ++rep) {
    out.push_back(run_regression_rep(c, rep));
  }
  return out;
}

}  // namespace stl2vec
