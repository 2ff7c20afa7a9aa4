#include "stl2vec/trajectory.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace stl2vec {

std::pair<std::vector<Trajectory>, AffineTransform> standardize(
    const std::vector<Trajectory>& trajs) {
  if (trajs.empty()) throw std::invalid_argument("standardize: empty trajectory set");
  Eigen::Index dim = trajs[0].dimension();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim);
  Eigen::VectorXd sumsq = Eigen::VectorXd::Zero(dim);
  double count = 0.0;
  for (const auto& tr : trajs) {
    if (tr.dimension() != dim) {
      throw std::invalid_argument("standardize: inconsistent dimensions");
    }
    sum += tr.values.colwise().sum();
    sumsq += tr.values.array().square().colwise().sum().matrix();
    count += static_cast<double>(tr.length());
  }
  AffineTransform tf;
  tf.shift = sum / count;
  tf.scale = ((sumsq / count).array() - tf.shift.array().square()).sqrt();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (!(tf.scale[j] > 0.0)) {
      throw std::domain_error("standardize: zero pooled variance in dimension " +
                              std::to_string(j));
    }
  }
  std::vector<Trajectory> out = trajs;
  for (auto& tr : out) {
    tr.values = (tr.values.rowwise() - tf.shift.transpose()).array().rowwise() /
                tf.scale.transpose().array();
  }
  return {std::move(out), std::move(tf)};
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void save_trajectories_csv(const std::string& path,
                           const std::vector<Trajectory>& trajs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write trajectory file: " + path);
  Eigen::Index dim = trajs.empty() ? 0 : trajs[0].dimension();
  out << "traj_id,t";
  for (Eigen::Index j = 0; j < dim; ++j) out << ",x" << j;
  out << "\n";
  for (std::size_t id = 0; id < trajs.size(); ++id) {
    const auto& tr = trajs[id];
    for (Eigen::Index i = 0; i < tr.length(); ++i) {
      out << id << "," << fmt_double(tr.t0 + static_cast<double>(i) * tr.dt);
      for (Eigen::Index j = 0; j < dim; ++j) out << "," << fmt_double(tr.values(i, j));
      out << "\n";
    }
  }
}

std::vector<Trajectory> load_trajectories_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trajectory file: " + path);
  std::size_t dim = 0;
  {
    std::size_t commas = 0;
    for (char c : line) commas += (c == ',');
    if (commas < 2) throw std::runtime_error("bad trajectory header in " + path);
    dim = commas - 1;
  }
  std::map<long, std::vector<std::pair<double, std::vector<double>>>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    long id = std::stol(cell);
    std::getline(ss, cell, ',');
    double t = std::stod(cell);
    std::vector<double> vals;
    vals.reserve(dim);
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() != dim) throw std::runtime_error("bad trajectory row in " + path);
    rows[id].push_back({t, std::move(vals)});
  }
  std::vector<Trajectory> out;
  out.reserve(rows.size());
  for (auto& [id, pts] : rows) {
    Trajectory tr;
    tr.t0 = pts.front().first;
    tr.dt = pts.size() > 1 ? pts[1].first - pts[0].first : 1.0;
    tr.values.resize(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        tr.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = pts[i].second[j];
      }
    }
    out.push_back(std::move(tr));
  }
  return out;
}

}  // namespace stl2vec
