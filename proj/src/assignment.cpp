#include "stl2vec/assignment.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace stl2vec {

namespace {

std::vector<std::size_t> assign_exhaustive(
    const std::vector<std::vector<double>>& score) {
  const std::size_t n = score.size();
  std::vector<std::size_t> perm(n), best(n);
  std::iota(perm.begin(), perm.end(), 0);
  best = perm;
  double best_total = -std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += score[i][perm[i]];
    if (total > best_total) {
      best_total = total;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Hungarian algorithm (shortest augmenting paths), minimizing cost.
std::vector<std::size_t> assign_hungarian(
    const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, n);  // match[col] = row
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> min_to(n + 1, kInf);
    std::vector<std::size_t> prev(n + 1, n);
    std::vector<bool> used(n + 1, false);
    std::size_t j0 = n;  // virtual column holding the unmatched row i
    match[j0] = i;
    do {
      used[j0] = true;
      std::size_t i0 = match[j0], j1 = n;
      double delta = kInf;
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        double cur = cost[i0][j] - u[i0] - v[j];
        if (cur < min_to[j]) {
          min_to[j] = cur;
          prev[j] = j0;
        }
        if (min_to[j] < delta) {
          delta = min_to[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_to[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != n);
    while (j0 != n) {
      std::size_t j1 = prev[j0];
      match[j0] = match[j1];
      j0 = j1;
    }
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (match[j] < n) perm[match[j]] = j;
  }
  return perm;
}

}  // namespace

std::vector<std::size_t> assign_max(const std::vector<std::vector<double>>& score) {
  const std::size_t n = score.size();
  if (n == 0) return {};
  for (const auto& row : score) {
    if (row.size() != n) throw std::invalid_argument("assign_max: matrix not square");
  }
  if (n <= 8) return assign_exhaustive(score);
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = -score[i][j];
  }
  return assign_hungarian(cost);
}

}  // namespace stl2vec
