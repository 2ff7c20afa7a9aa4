#include "stl2vec/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stl2vec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Grid offsets for a temporal interval [lo, hi] at step dt. The small slack
// absorbs representation error in lo/dt so that e.g. 0.3/0.1 lands on 3.
std::pair<std::size_t, std::size_t> window_offsets(double lo, double hi, double dt) {
  double a = std::ceil(lo / dt - 1e-9);
  double b = std::floor(hi / dt + 1e-9);
  return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
}

// Robustness of f at every grid index in [0, upto], computed bottom-up so
// each node's signal is evaluated once.
std::vector<double> eval_signal(const Formula& f, const Trajectory& traj,
                                std::size_t upto, RobustnessMode mode) {
  const std::size_t last = static_cast<std::size_t>(traj.length()) - 1;
  std::vector<double> out(upto + 1);

  switch (f.kind) {
    case FormulaKind::True: {
      double v = mode == RobustnessMode::Normalized ? 1.0 : kInf;
      std::fill(out.begin(), out.end(), v);
      return out;
    }
    case FormulaKind::Atom: {
      if (f.var_index >= static_cast<std::size_t>(traj.dimension())) {
        throw std::out_of_range("atom refers to variable x" +
                                std::to_string(f.var_index) + " but trajectory has " +
                                std::to_string(traj.dimension()) + " dimensions");
      }
      for (std::size_t u = 0; u <= upto; ++u) {
        double x = traj.values(static_cast<Eigen::Index>(u),
                               static_cast<Eigen::Index>(f.var_index));
        double v = f.relation == Relation::Geq ? x - f.threshold : f.threshold - x;
        out[u] = mode == RobustnessMode::Normalized ? std::tanh(v) : v;
      }
      return out;
    }
    case FormulaKind::Not: {
      out = eval_signal(*f.children[0], traj, upto, mode);
      for (double& v : out) v = -v;
      return out;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      out = eval_signal(*f.children[0], traj, upto, mode);
      std::vector<double> rhs = eval_signal(*f.children[1], traj, upto, mode);
      if (f.kind == FormulaKind::And) {
        for (std::size_t u = 0; u <= upto; ++u) out[u] = std::min(out[u], rhs[u]);
      } else {
        for (std::size_t u = 0; u <= upto; ++u) out[u] = std::max(out[u], rhs[u]);
      }
      return out;
    }
    case FormulaKind::Eventually:
    case FormulaKind::Always: {
      auto [ia, ib] = window_offsets(f.lo, f.hi, traj.dt);
      if (upto + ia > last) {
        throw std::domain_error("temporal window [" + std::to_string(f.lo) + ", " +
                                std::to_string(f.hi) +
                                "] lies entirely past the trajectory horizon");
      }
      std::size_t child_upto = std::min(upto + ib, last);
      std::vector<double> sub = eval_signal(*f.children[0], traj, child_upto, mode);
      bool is_max = f.kind == FormulaKind::Eventually;
      for (std::size_t u = 0; u <= upto; ++u) {
        std::size_t end = std::min(u + ib, last);
        double acc = sub[u + ia];
        for (std::size_t v = u + ia + 1; v <= end; ++v) {
          acc = is_max ? std::max(acc, sub[v]) : std::min(acc, sub[v]);
        }
        out[u] = acc;
      }
      return out;
    }
    case FormulaKind::Until: {
      auto [ia, ib] = window_offsets(f.lo, f.hi, traj.dt);
      if (upto + ia > last) {
        throw std::domain_error("temporal window [" + std::to_string(f.lo) + ", " +
                                std::to_string(f.hi) +
                                "] lies entirely past the trajectory horizon");
      }
      std::size_t child_upto = std::min(upto + ib, last);
      std::vector<double> lhs = eval_signal(*f.children[0], traj, child_upto, mode);
      std::vector<double> rhs = eval_signal(*f.children[1], traj, child_upto, mode);
      for (std::size_t u = 0; u <= upto; ++u) {
        std::size_t end = std::min(u + ib, last);
        double best = -kInf;
        double run_min = kInf;  // min of lhs over [u, v]
        for (std::size_t v = u; v <= end; ++v) {
          run_min = std::min(run_min, lhs[v]);
          if (v >= u + ia) best = std::max(best, std::min(rhs[v], run_min));
        }
        out[u] = best;
      }
      return out;
    }
  }
  throw std::logic_error("unreachable formula kind");
}

}  // namespace

double robustness(const Formula& f, const Trajectory& traj, std::size_t t,
                  RobustnessMode mode) {
  if (traj.length() == 0) throw std::domain_error("empty trajectory");
  if (t >= static_cast<std::size_t>(traj.length())) {
    throw std::out_of_range("evaluation index " + std::to_string(t) +
                            " past trajectory of length " +
                            std::to_string(traj.length()));
  }
  return eval_signal(f, traj, t, mode).back();
}

int satisfied(const Formula& f, const Trajectory& traj, std::size_t t) {
  return robustness(f, traj, t, RobustnessMode::Normalized) > 0.0 ? 1 : 0;
}

}  // namespace stl2vec
