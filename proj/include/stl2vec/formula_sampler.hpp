#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stl2vec/formula.hpp"

namespace stl2vec {

/// Random syntax-tree growth. The root is always an operator; below it each
/// position becomes a leaf with probability p_leaf. Atoms use a uniform
/// variable and relation with threshold ~ N(0, 1); temporal intervals are
/// [0, b] with b uniform on {1, ..., t_max}.
struct FormulaDistParams {
  double p_leaf = 0.5;
  std::size_t t_max = 10;
  std::size_t n_vars = 1;
  // relative weights for {not, and, or, F, G, U}
  std::array<double, 6> op_weights = {2.0, 1.0, 1.0, 3.0, 3.0, 1.0};
  std::uint64_t seed = 0;
};

/// Formula i depends only on (seed, i).
std::vector<FormulaPtr> sample_formulae(const FormulaDistParams& p,
                                        std::size_t count);

}  // namespace stl2vec
