#pragma once

#include <vector>

#include "stl2vec/formula.hpp"
#include "stl2vec/trajectory.hpp"

namespace stl2vec {

/// Normalized passes atomic predicate values through tanh, bounding the
/// quantitative semantics to (-1, 1) at the leaves.
enum class RobustnessMode { Raw, Normalized };

/// Quantitative semantics at grid index t. Temporal windows [a, b] map to
/// grid indices {t + ceil(a/dt), ..., t + floor(b/dt)}, clamped to the last
/// index; a window that starts past the horizon is an error.
/// Throws std::out_of_range (variable index) or std::domain_error (window).
double robustness(const Formula& f, const Trajectory& traj, std::size_t t,
                  RobustnessMode mode);
inline double robustness(const FormulaPtr& f, const Trajectory& traj,
                         std::size_t t, RobustnessMode mode) {
  return robustness(*f, traj, t, mode);
}

/// Boolean satisfaction: 1 iff normalized robustness at t is strictly
/// positive (robustness exactly 0 counts as unsatisfied).
int satisfied(const Formula& f, const Trajectory& traj, std::size_t t);

}  // namespace stl2vec
