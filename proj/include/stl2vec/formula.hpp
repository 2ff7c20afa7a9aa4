#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace stl2vec {

enum class FormulaKind { True, Atom, Not, And, Or, Eventually, Always, Until };

enum class Relation { Geq, Leq };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Immutable STL syntax tree node. Temporal operators carry an interval
/// [lo, hi) of rationals with 0 <= lo < hi, interpreted on the sample grid.
struct Formula {
  FormulaKind kind = FormulaKind::True;

  // Atom payload
  std::size_t var_index = 0;
  Relation relation = Relation::Geq;
  double threshold = 0.0;

  // Temporal interval
  double lo = 0.0;
  double hi = 0.0;

  std::vector<FormulaPtr> children;
};

FormulaPtr make_true();
FormulaPtr make_atom(std::size_t var_index, Relation rel, double threshold);
FormulaPtr make_not(FormulaPtr child);
FormulaPtr make_and(FormulaPtr left, FormulaPtr right);
FormulaPtr make_or(FormulaPtr left, FormulaPtr right);
FormulaPtr make_eventually(double lo, double hi, FormulaPtr child);
FormulaPtr make_always(double lo, double hi, FormulaPtr child);
FormulaPtr make_until(double lo, double hi, FormulaPtr left, FormulaPtr right);

/// Thrown when a temporal interval violates 0 <= a < b.
class IntervalError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::size_t node_count(const Formula& f);
inline std::size_t node_count(const FormulaPtr& f) { return node_count(*f); }

/// Largest variable index referenced, or -1 (as size_t max) if none.
std::size_t max_var_index(const Formula& f);
bool contains_var(const Formula& f, std::size_t var_index);

bool structurally_equal(const Formula& a, const Formula& b);

/// Renders in the concrete grammar; reparses to a structurally equal tree.
std::string format(const Formula& f);
inline std::string format(const FormulaPtr& f) { return format(*f); }

}  // namespace stl2vec
