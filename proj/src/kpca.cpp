#include "stl2vec/kpca.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace stl2vec {

Eigen::MatrixXd center(const Eigen::MatrixXd& K) {
  if (K.rows() != K.cols()) throw std::invalid_argument("center: matrix not square");
  Eigen::VectorXd row_means = K.rowwise().mean();
  double grand = K.mean();
  Eigen::MatrixXd out = K;
  out.colwise() -= row_means;
  out.rowwise() -= row_means.transpose();
  out.array() += grand;
  return out;
}

KpcaModel fit_kpca(const Eigen::MatrixXd& K, Eigen::Index d) {
  if (K.rows() != K.cols()) throw std::invalid_argument("fit_kpca: matrix not square");
  const Eigen::Index n = K.rows();
  KpcaModel model;
  model.row_means = K.rowwise().mean();
  model.grand_mean = K.mean();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(center(K));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("fit_kpca: eigendecomposition failed");
  }
  // solver returns ascending order; flip to descending
  model.eigenvalues = es.eigenvalues().reverse();
  model.eigenvectors = es.eigenvectors().rowwise().reverse();

  double lambda_max = model.eigenvalues.size() > 0 ? model.eigenvalues[0] : 0.0;
  Eigen::Index positive = 0;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (model.eigenvalues[j] < 1e-10 * lambda_max) {
      model.eigenvalues[j] = 0.0;
    } else {
      ++positive;
    }
  }
  // sign convention: the largest-magnitude loading of each axis is positive
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index arg = 0;
    model.eigenvectors.col(j).cwiseAbs().maxCoeff(&arg);
    if (model.eigenvectors(arg, j) < 0.0) model.eigenvectors.col(j) *= -1.0;
  }
  if (d < 1 || d > positive) {
    throw std::domain_error("fit_kpca: retained dimension " + std::to_string(d) +
                            " outside positive spectrum (" + std::to_string(positive) +
                            " usable axes)");
  }
  model.d = d;
  return model;
}

Eigen::MatrixXd training_coordinates(const KpcaModel& model) {
  Eigen::MatrixXd coords(model.size(), model.d);
  for (Eigen::Index j = 0; j < model.d; ++j) {
    coords.col(j) = std::sqrt(model.eigenvalues[j]) * model.eigenvectors.col(j);
  }
  return coords;
}

Eigen::MatrixXd project(const KpcaModel& model, const Eigen::MatrixXd& cross_rows) {
  if (cross_rows.cols() != model.size()) {
    throw std::invalid_argument("project: cross-kernel width does not match model");
  }
  // center each row against the training statistics
  Eigen::MatrixXd centered = cross_rows;
  Eigen::VectorXd test_means = cross_rows.rowwise().mean();
  centered.colwise() -= test_means;
  centered.rowwise() -= model.row_means.transpose();
  centered.array() += model.grand_mean;

  Eigen::MatrixXd coords(cross_rows.rows(), model.d);
  for (Eigen::Index j = 0; j < model.d; ++j) {
    coords.col(j) = centered * model.eigenvectors.col(j) / std::sqrt(model.eigenvalues[j]);
  }
  return coords;
}

double variance_explained(const KpcaModel& model, Eigen::Index d) {
  if (d <= 0) return 0.0;
  double total = 0.0, top = 0.0;
  for (Eigen::Index j = 0; j < model.size(); ++j) {
    total += model.eigenvalues[j];
    if (j < d) top += model.eigenvalues[j];
  }
  if (!(total > 0.0)) throw std::domain_error("variance_explained: empty spectrum");
  return top / total;
}

void save_kpca_model(const std::string& path, const KpcaModel& model) {
  nlohmann::json j;
  j["eigenvalues"] = std::vector<double>(model.eigenvalues.data(),
                                         model.eigenvalues.data() + model.size());
  j["row_means"] = std::vector<double>(model.row_means.data(),
                                       model.row_means.data() + model.size());
  j["grand_mean"] = model.grand_mean;
  j["d"] = model.d;
  j["provenance"] = model.provenance;
  auto vecs = nlohmann::json::array();
  for (Eigen::Index c = 0; c < model.size(); ++c) {
    vecs.push_back(std::vector<double>(model.eigenvectors.col(c).data(),
                                       model.eigenvectors.col(c).data() + model.size()));
  }
  j["eigenvectors"] = std::move(vecs);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << j.dump() << "\n";
}

KpcaModel load_kpca_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  nlohmann::json j;
  in >> j;
  KpcaModel model;
  auto vals = j.at("eigenvalues").get<std::vector<double>>();
  auto means = j.at("row_means").get<std::vector<double>>();
  const Eigen::Index n = static_cast<Eigen::Index>(vals.size());
  model.eigenvalues = Eigen::Map<Eigen::VectorXd>(vals.data(), n);
  model.row_means = Eigen::Map<Eigen::VectorXd>(means.data(), n);
  model.grand_mean = j.at("grand_mean").get<double>();
  model.d = j.at("d").get<Eigen::Index>();
  model.provenance = j.value("provenance", std::map<std::string, std::string>{});
  model.eigenvectors.resize(n, n);
  const auto& vecs = j.at("eigenvectors");
  if (static_cast<Eigen::Index>(vecs.size()) != n) {
    throw std::runtime_error("corrupt model file: " + path);
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    auto col = vecs[c].get<std::vector<double>>();
    if (static_cast<Eigen::Index>(col.size()) != n) {
      throw std::runtime_error("corrupt model file: " + path);
    }
    model.eigenvectors.col(c) = Eigen::Map<Eigen::VectorXd>(col.data(), n);
  }
  return model;
}

}  // namespace stl2vec
