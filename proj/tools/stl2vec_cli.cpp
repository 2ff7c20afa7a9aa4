#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stl2vec/analysis.hpp"
#include "stl2vec/experiment.hpp"
#include "stl2vec/formula_sampler.hpp"
#include "stl2vec/io.hpp"
#include "stl2vec/kernel.hpp"
#include "stl2vec/kpca.hpp"
#include "stl2vec/mu0.hpp"
#include "stl2vec/parser.hpp"
#include "stl2vec/ridge.hpp"
#include "stl2vec/rng.hpp"
#include "stl2vec/ssa.hpp"
#include "stl2vec/stats.hpp"

namespace fs = std::filesystem;
using namespace stl2vec;

namespace {

constexpr const char* kVersion = "stl2vec 1.0.0";

std::uint64_t resolve_seed(std::uint64_t flag_seed, bool seed_given) {
  if (seed_given) return flag_seed;
  if (const char* env = std::getenv("STL2VEC_SEED")) {
    return std::stoull(env);
  }
  return 0;
}

std::string now_string() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// refuse inputs whose bytes no longer match the hash recorded when they
// were produced
void check_input(RunManifest& m, const std::string& path) {
  std::string hash = file_hash(path);
  m.input_hashes[path] = hash;
  std::string sidecar = path + ".manifest.json";
  if (!fs::exists(sidecar)) return;
  RunManifest upstream = load_manifest(sidecar);
  std::string name = fs::path(path).filename().string();
  auto it = upstream.output_hashes.find(name);
  if (it != upstream.output_hashes.end() && it->second != hash) {
    throw std::runtime_error("input " + path +
                             " does not match the hash in its manifest (stale or "
                             "edited upstream output)");
  }
}

void finalize_manifest(RunManifest& m, const std::string& manifest_path,
                       const std::vector<std::string>& outputs) {
  for (const auto& out : outputs) {
    m.output_hashes[fs::path(out).filename().string()] = file_hash(out);
  }
  m.version = kVersion;
  m.timestamp = now_string();
  save_manifest(manifest_path, m);
}

std::vector<std::size_t> distinct_vars(const Formula& f, std::size_t n_vars) {
  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < n_vars; ++v) {
    if (contains_var(f, v)) vars.push_back(v);
  }
  return vars;
}

TrajectorySource parse_source(const std::string& s) {
  if (s == "mu0") return TrajectorySource::Mu0;
  if (s == "sirs") return TrajectorySource::Sirs;
  if (s == "network") return TrajectorySource::Network;
  throw CLI::ValidationError("--source", "must be mu0, sirs or network");
}

std::string quantile_row(const std::vector<double>& xs) {
  std::vector<double> qs =
      quantiles(xs, {0.01, 0.25, 0.5, 0.75, 0.99});
  std::string row;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    row += (i ? "," : "") + format_double(qs[i]);
  }
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"STL robustness kernels, embeddings and learning model checking"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 0;  // accepted for interface compatibility; results never depend on it
  app.add_option("--seed", seed, "master seed (env STL2VEC_SEED as fallback)")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--threads", threads, "worker cap; outputs are independent of it");

  // ---- sample-formulae ----
  auto* sf = app.add_subcommand("sample-formulae", "draw random formulae");
  std::size_t sf_nvars = 3, sf_tmax = 10, sf_count = 1000;
  double sf_pleaf = 0.5;
  std::vector<double> sf_weights;
  std::string sf_out;
  sf->add_option("--n-vars", sf_nvars);
  sf->add_option("--p-leaf", sf_pleaf);
  sf->add_option("--t-max", sf_tmax);
  sf->add_option("--count", sf_count);
  sf->add_option("--op-weights", sf_weights, "six weights: not,and,or,F,G,U")
      ->expected(6);
  sf->add_option("-o,--output", sf_out)->required();

  // ---- sample-mu0 ----
  auto* sm = app.add_subcommand("sample-mu0", "draw base-measure trajectories");
  Mu0Params sm_params;
  std::size_t sm_count = 1000;
  std::string sm_out;
  sm->add_option("--dim", sm_params.dim);
  sm->add_option("--count", sm_count);
  sm->add_option("--t-start", sm_params.t_start);
  sm->add_option("--t-end", sm_params.t_end);
  sm->add_option("--dt", sm_params.dt);
  sm->add_option("--q", sm_params.flip_prob, "per-step direction flip probability");
  sm->add_option("--k-scale", sm_params.sd_tv, "total-variation Gaussian scale");
  sm->add_option("-o,--output", sm_out)->required();

  // ---- simulate-ssa ----
  auto* ss = app.add_subcommand("simulate-ssa", "simulate a reaction network");
  std::string ss_preset, ss_network, ss_out;
  std::size_t ss_count = 1000;
  bool ss_standardize = false;
  ss->add_option("--preset", ss_preset, "sirs or immigration");
  ss->add_option("--network", ss_network, "reaction network JSON config");
  ss->add_option("--count", ss_count);
  ss->add_flag("--standardize", ss_standardize, "z-score each species dimension");
  ss->add_option("-o,--output", ss_out)->required();

  // ---- monitor ----
  auto* mo = app.add_subcommand("monitor", "robustness of formulae on trajectories");
  std::string mo_formulae, mo_trajs, mo_out, mo_mode = "normalized";
  std::size_t mo_t = 0;
  mo->add_option("--formulae", mo_formulae)->required();
  mo->add_option("--trajectories", mo_trajs)->required();
  mo->add_option("--mode", mo_mode, "raw or normalized");
  mo->add_option("--t", mo_t, "evaluation grid index");
  mo->add_option("-o,--output", mo_out)->required();

  // ---- kernel ----
  auto* ke = app.add_subcommand("kernel", "robustness and Gram matrices");
  std::string ke_formulae, ke_trajs, ke_outdir;
  bool ke_cosine = false;
  ke->add_option("--formulae", ke_formulae)->required();
  ke->add_option("--trajectories", ke_trajs)->required();
  ke->add_flag("--cosine-normalize", ke_cosine);
  ke->add_option("-o,--output", ke_outdir, "output directory")->required();

  // ---- embed ----
  auto* em = app.add_subcommand("embed", "kernel PCA of a Gram matrix");
  std::string em_gram, em_outdir;
  Eigen::Index em_dim = 0;
  em->add_option("--gram", em_gram)->required();
  em->add_option("--dim", em_dim)->required();
  em->add_option("-o,--output", em_outdir, "output directory")->required();

  // ---- project ----
  auto* pj = app.add_subcommand("project", "out-of-sample embedding coordinates");
  std::string pj_model, pj_formulae, pj_trajs, pj_train_rob, pj_out;
  pj->add_option("--model", pj_model)->required();
  pj->add_option("--formulae", pj_formulae)->required();
  pj->add_option("--trajectories", pj_trajs, "the model's kernel trajectories")->required();
  pj->add_option("--train-robustness", pj_train_rob, "training robustness matrix CSV")
      ->required();
  pj->add_option("-o,--output", pj_out)->required();

  // ---- explain ----
  auto* ex = app.add_subcommand("explain", "PC explanations for one dataset");
  ExplanationPipelineParams ex_params;
  std::string ex_outdir, ex_source = "mu0", ex_network;
  ex->add_option("--n-vars", ex_params.n_vars);
  ex->add_option("--p-leaf", ex_params.p_leaf);
  ex->add_option("--q", ex_params.q);
  ex->add_option("--k-scale", ex_params.k_scale);
  ex->add_option("--formula-count", ex_params.formula_count);
  ex->add_option("--traj-count", ex_params.traj_count);
  ex->add_option("--source", ex_source, "mu0, sirs or network");
  ex->add_option("--network", ex_network);
  ex->add_option("-o,--output", ex_outdir, "output directory")->required();

  // ---- stability ----
  auto* st = app.add_subcommand("stability", "PC stability across training sets");
  std::vector<double> st_pleafs = {0.4, 0.45, 0.5};
  std::size_t st_per_pleaf = 2, st_nvars = 3, st_formula_count = 1000,
              st_traj_count = 10000, st_probe_count = 300;
  Eigen::Index st_dim = 13;
  std::string st_out;
  st->add_option("--p-leafs", st_pleafs);
  st->add_option("--per-p-leaf", st_per_pleaf, "training sets per p_leaf value");
  st->add_option("--n-vars", st_nvars);
  st->add_option("--formula-count", st_formula_count);
  st->add_option("--traj-count", st_traj_count);
  st->add_option("--probe-count", st_probe_count);
  st->add_option("--dim", st_dim);
  st->add_option("-o,--output", st_out)->required();

  // ---- ablate ----
  auto* ab = app.add_subcommand("ablate", "explanation quantiles across a parameter");
  std::string ab_param = "p_leaf", ab_out;
  std::vector<double> ab_values = {0.5};
  std::size_t ab_reps = 10, ab_nvars = 3, ab_formula_count = 1000,
              ab_traj_count = 10000;
  ab->add_option("--param", ab_param, "p_leaf, q, K or n");
  ab->add_option("--values", ab_values)->required();
  ab->add_option("--reps", ab_reps, "independent datasets per value");
  ab->add_option("--n-vars", ab_nvars);
  ab->add_option("--formula-count", ab_formula_count);
  ab->add_option("--traj-count", ab_traj_count);
  ab->add_option("-o,--output", ab_out)->required();

  // ---- regress ----
  auto* rg = app.add_subcommand("regress", "learning model checking experiments");
  RegressionConfig rg_cfg;
  std::string rg_target = "R", rg_source = "mu0", rg_network, rg_out;
  std::vector<long> rg_dims = {10, 500};
  rg->add_option("--target", rg_target, "rho, R or S");
  rg->add_option("--source", rg_source, "mu0, sirs or network");
  rg->add_option("--network", rg_network);
  rg->add_option("--n-vars", rg_cfg.n_vars);
  rg->add_option("--train-count", rg_cfg.train_count);
  rg->add_option("--test-count", rg_cfg.test_count);
  rg->add_option("--traj-count", rg_cfg.traj_count);
  rg->add_option("--dims", rg_dims);
  rg->add_option("--reps", rg_cfg.reps);
  rg->add_option("--lambda", rg_cfg.lambda);
  rg->add_option("-o,--output", rg_out)->required();

  // ---- export-conditioning ----
  auto* ec = app.add_subcommand("export-conditioning",
                                "truncate embeddings for external conditioning");
  std::string ec_embedding, ec_out;
  Eigen::Index ec_components = 250;
  ec->add_option("--embedding", ec_embedding)->required();
  ec->add_option("--components", ec_components);
  ec->add_option("-o,--output", ec_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    std::uint64_t master_seed = resolve_seed(seed, seed_given);
    RunManifest manifest;
    manifest.seed = master_seed;

    if (*sf) {
      FormulaDistParams p;
      p.n_vars = sf_nvars;
      p.p_leaf = sf_pleaf;
      p.t_max = sf_tmax;
      p.seed = master_seed;
      if (!sf_weights.empty()) {
        for (std::size_t i = 0; i < 6; ++i) p.op_weights[i] = sf_weights[i];
      }
      save_formula_file(sf_out, sample_formulae(p, sf_count));
      manifest.command = "sample-formulae";
      manifest.config = {{"n_vars", sf_nvars}, {"p_leaf", sf_pleaf},
                         {"t_max", sf_tmax},   {"count", sf_count},
                         {"op_weights", p.op_weights}};
      finalize_manifest(manifest, sf_out + ".manifest.json", {sf_out});
    } else if (*sm) {
      sm_params.seed = master_seed;
      save_trajectories_csv(sm_out, sample_mu0(sm_params, sm_count));
      manifest.command = "sample-mu0";
      manifest.config = {{"dim", sm_params.dim},       {"count", sm_count},
                         {"t_start", sm_params.t_start}, {"t_end", sm_params.t_end},
                         {"dt", sm_params.dt},         {"q", sm_params.flip_prob},
                         {"k_scale", sm_params.sd_tv}};
      finalize_manifest(manifest, sm_out + ".manifest.json", {sm_out});
    } else if (*ss) {
      ReactionNetwork net;
      if (!ss_network.empty()) {
        check_input(manifest, ss_network);
        net = load_network_json(ss_network);
      } else if (ss_preset == "sirs") {
        net = sirs_preset();
      } else if (ss_preset == "immigration") {
        net = immigration_preset();
      } else {
        throw CLI::ValidationError("simulate-ssa", "need --preset or --network");
      }
      auto trajs = simulate_ssa(net, ss_count, master_seed);
      if (ss_standardize) trajs = standardize(trajs).first;
      save_trajectories_csv(ss_out, trajs);
      manifest.command = "simulate-ssa";
      manifest.config = {{"preset", ss_preset},
                         {"network", ss_network},
                         {"count", ss_count},
                         {"standardize", ss_standardize},
                         {"species", net.species},
                         {"init", net.init},
                         {"horizon", net.horizon},
                         {"dt", net.dt}};
      auto rates = nlohmann::json::array();
      for (const auto& r : net.reactions) rates.push_back(r.rate);
      manifest.config["rates"] = rates;
      finalize_manifest(manifest, ss_out + ".manifest.json", {ss_out});
    } else if (*mo) {
      check_input(manifest, mo_formulae);
      check_input(manifest, mo_trajs);
      auto formulae = load_formula_file(mo_formulae);
      auto trajs = load_trajectories_csv(mo_trajs);
      RobustnessMode mode =
          mo_mode == "raw" ? RobustnessMode::Raw : RobustnessMode::Normalized;
      Eigen::MatrixXd rm(static_cast<Eigen::Index>(formulae.size()),
                         static_cast<Eigen::Index>(trajs.size()));
      for (std::size_t j = 0; j < formulae.size(); ++j) {
        for (std::size_t k = 0; k < trajs.size(); ++k) {
          rm(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
              robustness(*formulae[j], trajs[k], mo_t, mode);
        }
      }
      save_matrix_csv(mo_out, rm);
      manifest.command = "monitor";
      manifest.config = {{"mode", mo_mode}, {"t", mo_t}};
      finalize_manifest(manifest, mo_out + ".manifest.json", {mo_out});
    } else if (*ke) {
      check_input(manifest, ke_formulae);
      check_input(manifest, ke_trajs);
      auto formulae = load_formula_file(ke_formulae);
      auto trajs = load_trajectories_csv(ke_trajs);
      Eigen::MatrixXd rm = robustness_matrix(formulae, trajs);
      Eigen::MatrixXd K = gram(rm);
      if (ke_cosine) K = cosine_normalize(K);
      fs::create_directories(ke_outdir);
      std::string rob_path = ke_outdir + "/robustness.csv";
      std::string gram_path = ke_outdir + "/gram.csv";
      save_matrix_csv(rob_path, rm);
      save_matrix_csv(gram_path, K);
      manifest.command = "kernel";
      manifest.config = {{"formula_count", formulae.size()},
                         {"trajectory_count", trajs.size()},
                         {"cosine_normalize", ke_cosine}};
      finalize_manifest(manifest, ke_outdir + "/manifest.json", {rob_path, gram_path});
    } else if (*em) {
      check_input(manifest, em_gram);
      Eigen::MatrixXd K = load_matrix_csv(em_gram, false);
      KpcaModel model = fit_kpca(K, em_dim);
      model.provenance["gram"] = manifest.input_hashes[em_gram];
      fs::create_directories(em_outdir);
      std::string eig_path = em_outdir + "/eigenvalues.csv";
      std::string emb_path = em_outdir + "/embedding.csv";
      std::string model_path = em_outdir + "/model.json";
      save_matrix_csv(eig_path, model.eigenvalues);
      save_embedding_csv(emb_path, training_coordinates(model));
      save_kpca_model(model_path, model);
      std::cout << "X_" << em_dim << " = " << variance_explained(model, em_dim)
                << "\n";
      manifest.command = "embed";
      manifest.config = {{"dim", em_dim}};
      finalize_manifest(manifest, em_outdir + "/manifest.json",
                        {eig_path, emb_path, model_path});
    } else if (*pj) {
      check_input(manifest, pj_model);
      check_input(manifest, pj_formulae);
      check_input(manifest, pj_trajs);
      check_input(manifest, pj_train_rob);
      KpcaModel model = load_kpca_model(pj_model);
      auto it = model.provenance.find("train_robustness");
      if (it != model.provenance.end() &&
          it->second != manifest.input_hashes[pj_train_rob]) {
        throw std::runtime_error(
            "training robustness matrix does not match the model's centering "
            "statistics");
      }
      auto formulae = load_formula_file(pj_formulae);
      auto trajs = load_trajectories_csv(pj_trajs);
      Eigen::MatrixXd train_rm = load_matrix_csv(pj_train_rob, false);
      Eigen::MatrixXd test_rm = robustness_matrix(formulae, trajs);
      Eigen::MatrixXd cross = cross_kernel(test_rm, train_rm);
      save_embedding_csv(pj_out, project(model, cross));
      manifest.command = "project";
      manifest.config = {{"formula_count", formulae.size()}};
      finalize_manifest(manifest, pj_out + ".manifest.json", {pj_out});
    } else if (*ex) {
      ex_params.seed = master_seed;
      ex_params.source = parse_source(ex_source);
      if (ex_params.source == TrajectorySource::Network) {
        check_input(manifest, ex_network);
        ex_params.network = load_network_json(ex_network);
      }
      const std::size_t n = ex_params.source == TrajectorySource::Mu0
                                ? ex_params.n_vars
                                : (ex_params.source == TrajectorySource::Sirs
                                       ? 3
                                       : ex_params.network.species.size());
      TrainedEmbedding te = train_embedding(ex_params);
      ExplanationScores scores = explanation_scores(te, ex_params);

      fs::create_directories(ex_outdir);
      std::string report_path = ex_outdir + "/report.csv";
      {
        std::ofstream out(report_path);
        out << "statistic,pc,abs_r\n";
        out << "median_robustness,0," << format_double(scores.pc0) << "\n";
        for (std::size_t i = 0; i < scores.group2.size(); ++i) {
          out << "mean_kernel_similarity_x" << i << "," << (1 + i) << ","
              << format_double(scores.group2[i]) << "\n";
        }
        for (std::size_t i = 0; i < scores.group3.size(); ++i) {
          out << "zeroed_robustness_delta_x" << i << "," << (1 + n + i) << ","
              << format_double(scores.group3[i]) << "\n";
        }
      }
      // scatter data: single-variable formulae in the explained PC planes
      std::string scatter_path = ex_outdir + "/scatter.csv";
      {
        std::ofstream out(scatter_path);
        out << "formula_index,variable";
        for (Eigen::Index c = 0; c < te.coords.cols(); ++c) out << ",pc" << c;
        out << "\n";
        for (std::size_t j = 0; j < te.formulae.size(); ++j) {
          auto vars = distinct_vars(*te.formulae[j], n);
          if (vars.size() != 1) continue;
          out << j << "," << vars[0];
          for (Eigen::Index c = 0; c < te.coords.cols(); ++c) {
            out << "," << format_double(te.coords(static_cast<Eigen::Index>(j), c));
          }
          out << "\n";
        }
      }
      std::cout << "PC0 |r| = " << scores.pc0 << "\n";
      manifest.command = "explain";
      manifest.config = {{"n_vars", ex_params.n_vars},
                         {"p_leaf", ex_params.p_leaf},
                         {"q", ex_params.q},
                         {"k_scale", ex_params.k_scale},
                         {"formula_count", ex_params.formula_count},
                         {"traj_count", ex_params.traj_count},
                         {"source", ex_source},
                         {"probe_count_per_var", GroupExplainParams{}.per_var_count}};
      finalize_manifest(manifest, ex_outdir + "/manifest.json",
                        {report_path, scatter_path});
    } else if (*st) {
      // shared probe formulae, projected through every trained model;
      // the trajectory sample is shared too, so every model estimates the
      // same empirical kernel and only the formula training set varies
      FormulaDistParams probe_params;
      probe_params.n_vars = st_nvars;
      probe_params.seed = substream_seed(master_seed, "stability-probes", 0);
      auto probes = sample_formulae(probe_params, st_probe_count);
      Mu0Params traj_params;
      traj_params.dim = st_nvars;
      traj_params.seed = substream_seed(master_seed, "stability-trajs", 0);
      auto trajs = sample_mu0(traj_params, st_traj_count);
      Eigen::MatrixXd probe_rm = robustness_matrix(probes, trajs);

      std::vector<Eigen::MatrixXd> probe_coords;
      std::size_t dataset_index = 0;
      for (double pl : st_pleafs) {
        for (std::size_t rep = 0; rep < st_per_pleaf; ++rep, ++dataset_index) {
          FormulaDistParams fp;
          fp.n_vars = st_nvars;
          fp.p_leaf = pl;
          fp.seed = substream_seed(master_seed, "stability-dataset", dataset_index);
          auto fs = sample_formulae(fp, st_formula_count);
          Eigen::MatrixXd rm = robustness_matrix(fs, trajs);
          KpcaModel model = fit_kpca(gram(rm), st_dim);
          probe_coords.push_back(project(model, cross_kernel(probe_rm, rm)));
        }
      }
      std::ofstream out(st_out);
      out << "dataset_a,dataset_b,rank,abs_cosine\n";
      for (std::size_t a = 0; a < probe_coords.size(); ++a) {
        for (std::size_t b = a + 1; b < probe_coords.size(); ++b) {
          auto sims = match_axes(probe_coords[a], probe_coords[b], st_dim);
          for (std::size_t r = 0; r < sims.size(); ++r) {
            out << a << "," << b << "," << r << "," << format_double(sims[r]) << "\n";
          }
        }
      }
      out.close();
      manifest.command = "stability";
      manifest.config = {{"p_leafs", st_pleafs},
                         {"per_p_leaf", st_per_pleaf},
                         {"n_vars", st_nvars},
                         {"formula_count", st_formula_count},
                         {"traj_count", st_traj_count},
                         {"probe_count", st_probe_count},
                         {"dim", st_dim}};
      finalize_manifest(manifest, st_out + ".manifest.json", {st_out});
    } else if (*ab) {
      std::ofstream out(ab_out);
      out << "param,value,statistic,q01,q25,median,q75,q99\n";
      for (double value : ab_values) {
        std::vector<double> pc0s;
        std::vector<double> g2s, g3s;
        for (std::size_t rep = 0; rep < ab_reps; ++rep) {
          ExplanationPipelineParams pp;
          pp.n_vars = ab_nvars;
          pp.formula_count = ab_formula_count;
          pp.traj_count = ab_traj_count;
          if (ab_param == "p_leaf") {
            pp.p_leaf = value;
          } else if (ab_param == "q") {
            pp.q = value;
          } else if (ab_param == "K") {
            pp.k_scale = value;
          } else if (ab_param == "n") {
            pp.n_vars = static_cast<std::size_t>(value);
          } else {
            throw CLI::ValidationError("--param", "must be p_leaf, q, K or n");
          }
          pp.seed = substream_seed(master_seed, "ablate", rep);
          ExplanationScores s = run_explanation_pipeline(pp);
          pc0s.push_back(s.pc0);
          g2s.insert(g2s.end(), s.group2.begin(), s.group2.end());
          g3s.insert(g3s.end(), s.group3.begin(), s.group3.end());
        }
        out << ab_param << "," << format_double(value) << ",pc0,"
            << quantile_row(pc0s) << "\n";
        out << ab_param << "," << format_double(value) << ",group2,"
            << quantile_row(g2s) << "\n";
        out << ab_param << "," << format_double(value) << ",group3,"
            << quantile_row(g3s) << "\n";
        out.flush();  // settings are independent; keep partial tables on failure
      }
      out.close();
      manifest.command = "ablate";
      manifest.config = {{"param", ab_param}, {"values", ab_values},
                         {"reps", ab_reps},   {"n_vars", ab_nvars},
                         {"formula_count", ab_formula_count},
                         {"traj_count", ab_traj_count}};
      finalize_manifest(manifest, ab_out + ".manifest.json", {ab_out});
    } else if (*rg) {
      if (rg_target == "rho") {
        rg_cfg.target = RegressionTarget::Rho;
      } else if (rg_target == "R") {
        rg_cfg.target = RegressionTarget::ExpectedRobustness;
      } else if (rg_target == "S") {
        rg_cfg.target = RegressionTarget::SatProb;
      } else {
        throw CLI::ValidationError("--target", "must be rho, R or S");
      }
      rg_cfg.source = parse_source(rg_source);
      if (rg_cfg.source == TrajectorySource::Network) {
        check_input(manifest, rg_network);
        rg_cfg.network = load_network_json(rg_network);
      }
      rg_cfg.dims.assign(rg_dims.begin(), rg_dims.end());
      rg_cfg.seed = master_seed;
      auto reps = run_regression_experiment(rg_cfg);

      std::ofstream out(rg_out);
      out << "representation,metric,q01,q25,median,q75,q99\n";
      auto emit = [&](const std::string& name,
                      auto member) {
        std::vector<double> med_re, med_ae;
        std::vector<double> all_re, all_ae;
        for (const auto& rep : reps) {
          const ErrorReport& er = member(rep);
          all_re.insert(all_re.end(), er.rel_errors.begin(), er.rel_errors.end());
          all_ae.insert(all_ae.end(), er.abs_errors.begin(), er.abs_errors.end());
        }
        out << name << ",RE," << quantile_row(all_re) << "\n";
        out << name << ",AE," << quantile_row(all_ae) << "\n";
      };
      emit("kernel", [](const RegressionRepResult& r) -> const ErrorReport& {
        return r.kernel;
      });
      for (Eigen::Index d : rg_cfg.dims) {
        emit("stl2vec(" + std::to_string(d) + ")",
             [d](const RegressionRepResult& r) -> const ErrorReport& {
               return r.by_dim.at(d);
             });
      }
      out.close();
      manifest.command = "regress";
      manifest.config = {{"target", rg_target},
                         {"source", rg_source},
                         {"n_vars", rg_cfg.n_vars},
                         {"train_count", rg_cfg.train_count},
                         {"test_count", rg_cfg.test_count},
                         {"traj_count", rg_cfg.traj_count},
                         {"dims", rg_dims},
                         {"reps", rg_cfg.reps},
                         {"lambda", rg_cfg.lambda}};
      finalize_manifest(manifest, rg_out + ".manifest.json", {rg_out});
    } else if (*ec) {
      check_input(manifest, ec_embedding);
      Eigen::MatrixXd coords = load_embedding_csv(ec_embedding);
      if (ec_components > coords.cols()) {
        throw std::runtime_error("requested " + std::to_string(ec_components) +
                                 " components but the embedding has only " +
                                 std::to_string(coords.cols()));
      }
      save_embedding_csv(ec_out, coords.leftCols(ec_components));
      manifest.command = "export-conditioning";
      manifest.config = {{"components", ec_components}};
      finalize_manifest(manifest, ec_out + ".manifest.json", {ec_out});
    }
    return 0;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
