// End-to-end acceptance suite. Each criterion prints exactly one
// [PASS]/[FAIL] line; run with --only N to execute a single criterion.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "stl2vec/analysis.hpp"
#include "stl2vec/experiment.hpp"
#include "stl2vec/formula_sampler.hpp"
#include "stl2vec/kernel.hpp"
#include "stl2vec/kpca.hpp"
#include "stl2vec/mu0.hpp"
#include "stl2vec/rng.hpp"
#include "stl2vec/robustness.hpp"
#include "stl2vec/ssa.hpp"
#include "stl2vec/stats.hpp"

using namespace stl2vec;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) ok = false;
    detail << (cond ? " [ok " : " [FAIL ") << what << "]";
  }
};

// ---------------------------------------------------------------- shared data

// The full-scale 3-variable dataset used by criteria 3-5 (single fixed seed).
const TrainedEmbedding& full_scale_dataset() {
  static const TrainedEmbedding te = [] {
    ExplanationPipelineParams p;
    p.n_vars = 3;
    p.formula_count = 1000;
    p.traj_count = 10000;
    p.dim = 10;
    p.seed = 1;
    return train_embedding(p);
  }();
  return te;
}

// ------------------------------------------------------------------ criteria

bool criterion1(std::string& detail) {
  Check c;
  std::mt19937_64 rng(20240901);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    auto f = oracle::random_formula(rng, 8, 2, 4.0);
    auto tr = oracle::random_trajectory(rng, 2, 6, 2);
    for (auto mode : {RobustnessMode::Raw, RobustnessMode::Normalized}) {
      double expected = oracle::rob(*f, tr, 0, mode == RobustnessMode::Normalized);
      double got = robustness(f, tr, 0, mode);
      if (std::isinf(expected)) {
        if (got != expected) worst = 1.0;
      } else {
        worst = std::max(worst, std::abs(got - expected));
      }
      // exact algebraic identities
      if (robustness(make_not(f), tr, 0, mode) != -got) worst = 1.0;
    }
    auto g = oracle::random_formula(rng, 6, 2, 4.0);
    double conj = robustness(make_and(f, g), tr, 0, RobustnessMode::Normalized);
    double via =
        robustness(make_not(make_or(make_not(f), make_not(g))), tr, 0,
                   RobustnessMode::Normalized);
    if (conj != via) worst = 1.0;
  }
  c.require(worst < 1e-12, "max |monitor - oracle| = " + std::to_string(worst));
  detail = c.detail.str();
  return c.ok;
}

bool criterion2(std::string& detail) {
  Check c;
  FormulaDistParams fp;
  fp.n_vars = 3;
  fp.seed = 1;
  auto fs = sample_formulae(fp, 200);
  Mu0Params mp;
  mp.dim = 3;
  mp.seed = 1;
  auto trajs = sample_mu0(mp, 5000);
  auto rm = robustness_matrix(fs, trajs);
  auto K = gram(rm);
  c.require((K - K.transpose()).cwiseAbs().maxCoeff() == 0.0, "symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
  double lmin = es.eigenvalues().minCoeff();
  double lmax = es.eigenvalues().maxCoeff();
  c.require(lmin >= -1e-8 * lmax,
            "PSD (lambda_min = " + std::to_string(lmin) + ")");
  std::vector<FormulaPtr> negs;
  for (const auto& f : fs) negs.push_back(make_not(f));
  auto rm_neg = robustness_matrix(negs, trajs);
  auto cross = cross_kernel(rm_neg, rm);
  bool anti = true;
  for (int i = 0; i < 200; ++i) {
    if (cross(i, i) != -K(i, i)) anti = false;
  }
  c.require(anti, "k(f, not f) = -k(f, f) exactly");
  detail = c.detail.str();
  return c.ok;
}

bool criterion3(std::string& detail) {
  Check c;
  const auto& te = full_scale_dataset();
  const auto D = te.gram_matrix.rows();
  const double M = static_cast<double>(te.trajectories.size());
  std::vector<double> emb_dist, rob_dist;
  emb_dist.reserve(static_cast<std::size_t>(D * (D - 1) / 2));
  rob_dist.reserve(emb_dist.capacity());
  for (Eigen::Index i = 0; i < D; ++i) {
    for (Eigen::Index j = i + 1; j < D; ++j) {
      emb_dist.push_back((te.coords.row(i) - te.coords.row(j)).norm());
      double sq = M * (te.gram_matrix(i, i) + te.gram_matrix(j, j) -
                       2.0 * te.gram_matrix(i, j));
      rob_dist.push_back(std::sqrt(std::max(sq, 0.0)));
    }
  }
  double r = pearson(emb_dist, rob_dist);
  c.require(r >= 0.90, "pearson(embedding dist, robustness dist) = " +
                           std::to_string(r));
  detail = c.detail.str();
  return c.ok;
}

bool criterion4(std::string& detail) {
  Check c;
  const auto& model = full_scale_dataset().model;
  int d95 = 0, d98 = 0;
  for (Eigen::Index d = 1; d <= model.size(); ++d) {
    double x = variance_explained(model, d);
    if (d95 == 0 && x >= 0.95) d95 = static_cast<int>(d);
    if (d98 == 0 && x >= 0.98) {
      d98 = static_cast<int>(d);
      break;
    }
  }
  c.require(d95 >= 7 && d95 <= 13, "PCs for 95% = " + std::to_string(d95));
  c.require(d98 >= 10 && d98 <= 16, "PCs for 98% = " + std::to_string(d98));
  int gap_at = 0;
  double best_gap = -1.0;
  for (int i = 0; i + 1 < 7; ++i) {
    double gap = model.eigenvalues[i] - model.eigenvalues[i + 1];
    if (gap > best_gap) {
      best_gap = gap;
      gap_at = i;
    }
  }
  c.require(gap_at == 0, "largest gap after eigenvalue " + std::to_string(gap_at + 1));
  detail = c.detail.str();
  return c.ok;
}

bool criterion5(std::string& detail) {
  Check c;
  const auto& te = full_scale_dataset();
  double r_mu0 = explain_pc0(te.coords, te.formulae, te.trajectories);
  c.require(r_mu0 >= 0.95, "mu0 PC0 |r| = " + std::to_string(r_mu0));

  ExplanationPipelineParams p;
  p.n_vars = 3;
  p.formula_count = 1000;
  p.traj_count = 10000;
  p.dim = 7;
  p.source = TrajectorySource::Sirs;
  p.seed = 1;
  auto sirs = train_embedding(p);
  double r_sirs = explain_pc0(sirs.coords, sirs.formulae, sirs.trajectories);
  c.require(r_sirs >= 0.95, "SIRS PC0 |r| = " + std::to_string(r_sirs));
  detail = c.detail.str();
  return c.ok;
}

bool criterion6(std::string& detail) {
  Check c;
  const int n = 3;
  std::vector<std::vector<double>> g2_by_pc(n), g3_by_pc(n);
  std::optional<TrainedEmbedding> first;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    ExplanationPipelineParams p;
    p.n_vars = n;
    p.formula_count = 1000;
    p.traj_count = 10000;
    p.dim = 2 * n + 1;
    p.seed = seed;
    auto te = train_embedding(p);
    auto fresh = sample_mu0(
        [&] {
          Mu0Params mp;
          mp.dim = n;
          mp.seed = substream_seed(seed, "pipeline-fresh", 0);
          return mp;
        }(),
        p.traj_count);
    GroupExplainParams gp;
    gp.seed = substream_seed(seed, "pipeline-probes", 0);
    auto g2 = explain_group2(te.coords, te.formulae, fresh, n, gp);
    for (const auto& item : g2.items) {
      g2_by_pc[item.pc - 1].push_back(item.abs_r);
    }
    auto g3 = explain_group3(te.coords, te.formulae, te.trajectories, n);
    for (const auto& item : g3.items) {
      g3_by_pc[item.pc - 1 - n].push_back(item.abs_r);
    }
    if (seed == 1) first = std::move(te);
  }
  for (int j = 0; j < n; ++j) {
    double med2 = quantile(g2_by_pc[j], 0.5);
    double med3 = quantile(g3_by_pc[j], 0.5);
    c.require(med2 >= 0.85,
              "PC" + std::to_string(1 + j) + " median |r| = " + std::to_string(med2));
    c.require(med3 >= 0.70,
              "PC" + std::to_string(1 + n + j) + " median |r| = " + std::to_string(med3));
  }
  // negative control: row-shuffled embedding should explain nothing
  Eigen::MatrixXd shuffled = first->coords;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(shuffled.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(555);
  std::shuffle(order.begin(), order.end(), rng);
  for (Eigen::Index i = 0; i < shuffled.rows(); ++i) {
    shuffled.row(i) = first->coords.row(order[static_cast<std::size_t>(i)]);
  }
  double worst = explain_pc0(shuffled, first->formulae, first->trajectories);
  auto g3s = explain_group3(shuffled, first->formulae, first->trajectories, n);
  for (const auto& item : g3s.items) worst = std::max(worst, item.abs_r);
  c.require(worst < 0.2, "negative control max |r| = " + std::to_string(worst));
  detail = c.detail.str();
  return c.ok;
}

bool criterion7(std::string& detail) {
  Check c;
  // Six formula training sets against one shared trajectory sample, so that
  // every model estimates the same empirical kernel. Models keep 13 axes and
  // the optimal assignment runs over all of them (nearby eigenvalues may
  // swap ranks between training sets); the gate reads the first five ranks.
  const int kProbes = 300;
  const Eigen::Index kDim = 13;
  FormulaDistParams probe_dist;
  probe_dist.n_vars = 3;
  probe_dist.seed = 777;
  auto probes = sample_formulae(probe_dist, kProbes);
  Mu0Params traj_dist;
  traj_dist.dim = 3;
  traj_dist.seed = 778;
  auto trajs = sample_mu0(traj_dist, 10000);
  Eigen::MatrixXd probe_rm = robustness_matrix(probes, trajs);

  std::vector<Eigen::MatrixXd> probe_coords;
  std::uint64_t seed = 1;
  for (double p_leaf : {0.4, 0.45, 0.5}) {
    for (int copy = 0; copy < 2; ++copy, ++seed) {
      FormulaDistParams fp;
      fp.n_vars = 3;
      fp.p_leaf = p_leaf;
      fp.seed = seed * 31 + copy;
      auto fs = sample_formulae(fp, 1000);
      Eigen::MatrixXd rm = robustness_matrix(fs, trajs);
      auto model = fit_kpca(gram(rm), kDim);
      probe_coords.push_back(project(model, cross_kernel(probe_rm, rm)));
    }
  }
  double worst = 1.0;
  for (std::size_t a = 0; a < probe_coords.size(); ++a) {
    for (std::size_t b = a + 1; b < probe_coords.size(); ++b) {
      auto sims = match_axes(probe_coords[a], probe_coords[b], kDim);
      for (std::size_t r = 0; r < 5; ++r) worst = std::min(worst, sims[r]);
    }
  }
  c.require(worst >= 0.90, "min matched |cosine| over pairs, first 5 ranks = " +
                               std::to_string(worst));
  detail = c.detail.str();
  return c.ok;
}

bool criterion8(std::string& detail) {
  Check c;
  auto pooled_median_re = [](const std::vector<RegressionRepResult>& rs,
                             Eigen::Index d) {
    std::vector<double> re;
    for (const auto& r : rs) {
      const auto& e = r.by_dim.at(d).rel_errors;
      re.insert(re.end(), e.begin(), e.end());
    }
    return quantile(re, 0.5);
  };

  RegressionConfig sirs;
  sirs.source = TrajectorySource::Sirs;
  sirs.n_vars = 3;
  sirs.train_count = 1000;
  sirs.test_count = 200;
  sirs.traj_count = 5000;
  sirs.dims = {500};
  sirs.reps = 20;
  sirs.seed = 1;

  sirs.target = RegressionTarget::ExpectedRobustness;
  auto rs_R = run_regression_experiment(sirs);
  double med_R = pooled_median_re(rs_R, 500);
  c.require(med_R <= 0.06, "SIRS R median RE = " + std::to_string(med_R));

  sirs.target = RegressionTarget::Rho;
  auto rs_rho = run_regression_experiment(sirs);
  double med_rho = pooled_median_re(rs_rho, 500);
  c.require(med_rho <= 0.07, "SIRS rho median RE = " + std::to_string(med_rho));

  // KS indistinguishability of stl2vec(500) vs full-kernel AE on one rho run
  double d_stat = ks_statistic(rs_rho[0].by_dim.at(500).abs_errors,
                               rs_rho[0].kernel.abs_errors);
  double p = ks_pvalue(d_stat, rs_rho[0].by_dim.at(500).abs_errors.size(),
                       rs_rho[0].kernel.abs_errors.size());
  c.require(p >= 0.05, "KS p = " + std::to_string(p));

  RegressionConfig mu0;
  mu0.source = TrajectorySource::Mu0;
  mu0.n_vars = 3;
  mu0.target = RegressionTarget::ExpectedRobustness;
  mu0.train_count = 1000;
  mu0.test_count = 200;
  mu0.traj_count = 5000;
  mu0.dims = {7};  // interpretable dimension 1 + 2n
  mu0.reps = 20;
  mu0.seed = 1;
  auto rs_mu0 = run_regression_experiment(mu0);
  double med_mu0 = pooled_median_re(rs_mu0, 7);
  c.require(med_mu0 <= 0.2, "mu0 R stl2vec(7) median RE = " + std::to_string(med_mu0));
  detail = c.detail.str();
  return c.ok;
}

bool criterion9(std::string& detail) {
  Check c;
  Mu0Params mp;
  mp.seed = 1;
  auto trajs = sample_mu0(mp, 5000);
  double changes = 0.0;
  for (const auto& tr : trajs) {
    double prev = 0.0;
    bool have = false;
    int n = 0;
    for (Eigen::Index i = 1; i < tr.length(); ++i) {
      double step = tr.values(i, 0) - tr.values(i - 1, 0);
      if (step == 0.0) continue;
      if (have && (step > 0) != (prev > 0)) ++n;
      prev = step;
      have = true;
    }
    changes += n;
  }
  changes /= 5000.0;
  c.require(std::abs(changes - 17.8) <= 1.0,
            "mean monotonicity changes = " + std::to_string(changes));

  FormulaDistParams fp;
  fp.seed = 1;
  auto fs = sample_formulae(fp, 10000);
  double nodes = 0.0;
  for (const auto& f : fs) nodes += static_cast<double>(node_count(f));
  nodes /= 10000.0;
  c.require(std::abs(nodes - 4.4) <= 0.5, "mean node count = " + std::to_string(nodes));
  detail = c.detail.str();
  return c.ok;
}

bool criterion10(std::string& detail) {
  Check c;
  namespace fs = std::filesystem;
  const std::string cli = STL2VEC_CLI_PATH;
  auto root = fs::temp_directory_path() / "stl2vec_acceptance_repro";
  fs::remove_all(root);
  fs::create_directories(root);
  auto run = [&](const std::string& args) {
    int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status) == 0;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  bool ok = true;
  for (int variant = 0; variant < 2; ++variant) {
    auto dir = (root / ("run" + std::to_string(variant))).string();
    fs::create_directories(dir);
    std::string threads = variant == 0 ? "1" : "4";
    ok = ok && run("--seed 33 --threads " + threads +
                   " sample-formulae --n-vars 3 --count 80 -o " + dir + "/f.txt");
    ok = ok && run("--seed 33 --threads " + threads +
                   " sample-mu0 --dim 3 --count 500 -o " + dir + "/t.csv");
    ok = ok && run("--seed 33 --threads " + threads + " kernel --formulae " + dir +
                   "/f.txt --trajectories " + dir + "/t.csv -o " + dir + "/k");
    ok = ok && run("--seed 33 --threads " + threads + " embed --gram " + dir +
                   "/k/gram.csv --dim 7 -o " + dir + "/e");
    ok = ok && run("--seed 33 --threads " + threads + " simulate-ssa --preset sirs" +
                   " --count 50 -o " + dir + "/sirs.csv");
  }
  c.require(ok, "pipelines completed");
  if (ok) {
    bool identical = true;
    for (const char* rel :
         {"f.txt", "t.csv", "k/gram.csv", "k/robustness.csv", "e/eigenvalues.csv",
          "e/embedding.csv", "e/model.json", "sirs.csv"}) {
      if (slurp(root / "run0" / rel) != slurp(root / "run1" / rel)) {
        identical = false;
        c.require(false, std::string(rel) + " differs");
      }
    }
    c.require(identical, "outputs bitwise identical across thread counts");
  }
  fs::remove_all(root);
  detail = c.detail.str();
  return c.ok;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
    }
  }
  struct Entry {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Entry> entries = {
      {1, "monitor matches the brute-force reference", criterion1},
      {2, "Gram matrices are symmetric, PSD and antisymmetric under negation", criterion2},
      {3, "embedding distances track robustness distances", criterion3},
      {4, "variance-explained counts and spectral gap", criterion4},
      {5, "first axis correlates with median robustness (mu0 and SIRS)", criterion5},
      {6, "group explanations over five datasets with negative control", criterion6},
      {7, "principal axes are stable across training sets", criterion7},
      {8, "learning model checking error and KS gates", criterion8},
      {9, "sampler statistics (monotonicity changes, node count)", criterion9},
      {10, "CLI pipelines reproduce bitwise across thread counts", criterion10},
  };
  bool all_ok = true;
  for (const auto& e : entries) {
    if (only != 0 && e.id != only) continue;
    bool ok = false;
    std::string detail;
    try {
      ok = e.run(detail);
    } catch (const std::exception& ex) {
      ok = false;
      detail = std::string(" [exception: ") + ex.what() + "]";
    }
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << e.id << ": "
              << e.name << detail << std::endl;
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
