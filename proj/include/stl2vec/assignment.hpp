#pragma once

#include <vector>

namespace stl2vec {

/// Maximum-total-score assignment of rows to columns on a square score
/// matrix. Returns perm with perm[row] = column. Exhaustive search for
/// n <= 8, Hungarian algorithm above.
std::vector<std::size_t> assign_max(const std::vector<std::vector<double>>& score);

}  // namespace stl2vec
