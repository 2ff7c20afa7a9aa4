#include "stl2vec/formula_sampler.hpp"

#include <random>
#include <stdexcept>

#include "stl2vec/rng.hpp"

namespace stl2vec {

namespace {

struct Sampler {
  const FormulaDistParams& p;
  std::mt19937_64& rng;
  std::uniform_real_distribution<double> unit{0.0, 1.0};
  std::normal_distribution<double> threshold{0.0, 1.0};

  FormulaPtr atom() {
    std::size_t var = static_cast<std::size_t>(
        std::uniform_int_distribution<std::size_t>(0, p.n_vars - 1)(rng));
    Relation rel = unit(rng) < 0.5 ? Relation::Geq : Relation::Leq;
    return make_atom(var, rel, threshold(rng));
  }

  double bound() {
    return static_cast<double>(
        std::uniform_int_distribution<std::size_t>(1, p.t_max)(rng));
  }

  FormulaPtr op_node() {
    double total = 0.0;
    for (double w : p.op_weights) total += w;
    double pick = unit(rng) * total;
    std::size_t op = 0;
    for (; op + 1 < p.op_weights.size(); ++op) {
      if (pick < p.op_weights[op]) break;
      pick -= p.op_weights[op];
    }
    switch (op) {
      case 0: return make_not(child());
      case 1: return make_and(child(), child());
      case 2: return make_or(child(), child());
      case 3: return make_eventually(0.0, bound(), child());
      case 4: return make_always(0.0, bound(), child());
      default: return make_until(0.0, bound(), child(), child());
    }
  }

  FormulaPtr child() { return unit(rng) < p.p_leaf ? atom() : op_node(); }
};

}  // namespace

std::vector<FormulaPtr> sample_formulae(const FormulaDistParams& p,
                                        std::size_t count) {
  if (!(p.p_leaf > 0.0 && p.p_leaf <= 1.0)) {
    throw std::invalid_argument("p_leaf must be in (0, 1]");
  }
  if (p.t_max < 1 || p.n_vars < 1) {
    throw std::invalid_argument("t_max and n_vars must be positive");
  }
  double total_w = 0.0;
  for (double w : p.op_weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("negative operator weight");
    total_w += w;
  }
  if (!(total_w > 0.0)) throw std::invalid_argument("all operator weights zero");

  std::vector<FormulaPtr> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto rng = substream_engine(p.seed, "formula", i);
    Sampler s{p, rng};
    out.push_back(s.op_node());
  }
  return out;
}

}  // namespace stl2vec
