#include "stl2vec/formula.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace stl2vec {

namespace {

void check_interval(double lo, double hi) {
  if (!(lo >= 0.0) || !(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw IntervalError("temporal interval must satisfy 0 <= a < b, got [" +
                        std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

FormulaPtr node(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

std::string num_to_string(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

FormulaPtr make_true() { return node({FormulaKind::True}); }

FormulaPtr make_atom(std::size_t var_index, Relation rel, double threshold) {
  Formula f;
  f.kind = FormulaKind::Atom;
  f.var_index = var_index;
  f.relation = rel;
  f.threshold = threshold;
  return node(std::move(f));
}

FormulaPtr make_not(FormulaPtr child) {
  Formula f;
  f.kind = FormulaKind::Not;
  f.children = {std::move(child)};
  return node(std::move(f));
}

FormulaPtr make_and(FormulaPtr left, FormulaPtr right) {
  Formula f;
  f.kind = FormulaKind::And;
  f.children = {std::move(left), std::move(right)};
  return node(std::move(f));
}

FormulaPtr make_or(FormulaPtr left, FormulaPtr right) {
  Formula f;
  f.kind = FormulaKind::Or;
  f.children = {std::move(left), std::move(right)};
  return node(std::move(f));
}

FormulaPtr make_eventually(double lo, double hi, FormulaPtr child) {
  check_interval(lo, hi);
  Formula f;
  f.kind = FormulaKind::Eventually;
  f.lo = lo;
  f.hi = hi;
  f.children = {std::move(child)};
  return node(std::move(f));
}

FormulaPtr make_always(double lo, double hi, FormulaPtr child) {
  check_interval(lo, hi);
  Formula f;
  f.kind = FormulaKind::Always;
  f.lo = lo;
  f.hi = hi;
  f.children = {std::move(child)};
  return node(std::move(f));
}

FormulaPtr make_until(double lo, double hi, FormulaPtr left, FormulaPtr right) {
  check_interval(lo, hi);
  Formula f;
  f.kind = FormulaKind::Until;
  f.lo = lo;
  f.hi = hi;
  f.children = {std::move(left), std::move(right)};
  return node(std::move(f));
}

std::size_t node_count(const Formula& f) {
  std::size_t n = 1;
  for (const auto& c : f.children) n += node_count(*c);
  return n;
}

std::size_t max_var_index(const Formula& f) {
  std::size_t best = static_cast<std::size_t>(-1);
  if (f.kind == FormulaKind::Atom) best = f.var_index;
  for (const auto& c : f.children) {
    std::size_t m = max_var_index(*c);
    if (m != static_cast<std::size_t>(-1) &&
        (best == static_cast<std::size_t>(-1) || m > best)) {
      best = m;
    }
  }
  return best;
}

bool contains_var(const Formula& f, std::size_t var_index) {
  if (f.kind == FormulaKind::Atom && f.var_index == var_index) return true;
  for (const auto& c : f.children) {
    if (contains_var(*c, var_index)) return true;
  }
  return false;
}

bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == FormulaKind::Atom) {
    if (a.var_index != b.var_index || a.relation != b.relation ||
        a.threshold != b.threshold) {
      return false;
    }
  }
  if (a.kind == FormulaKind::Eventually || a.kind == FormulaKind::Always ||
      a.kind == FormulaKind::Until) {
    if (a.lo != b.lo || a.hi != b.hi) return false;
  }
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

namespace {

std::string parenthesized(const Formula& f) {
  std::string s = format(f);
  if (!s.empty() && s.front() == '(') return s;
  return "(" + s + ")";
}

}  // namespace

std::string format(const Formula& f) {
  switch (f.kind) {
    case FormulaKind::True:
      return "true";
    case FormulaKind::Atom:
      return "x" + std::to_string(f.var_index) +
             (f.relation == Relation::Geq ? " >= " : " <= ") +
             num_to_string(f.threshold);
    case FormulaKind::Not:
      return "not " + format(*f.children[0]);
    case FormulaKind::And:
      return "(" + format(*f.children[0]) + " and " + format(*f.children[1]) +
             ")";
    case FormulaKind::Or:
      return "(" + format(*f.children[0]) + " or " + format(*f.children[1]) +
             ")";
    case FormulaKind::Eventually:
      return "F[" + num_to_string(f.lo) + "," + num_to_string(f.hi) + "] " +
             parenthesized(*f.children[0]);
    case FormulaKind::Always:
      return "G[" + num_to_string(f.lo) + "," + num_to_string(f.hi) + "] " +
             parenthesized(*f.children[0]);
    case FormulaKind::Until:
      return "(" + parenthesized(*f.children[0]) + " U[" + num_to_string(f.lo) +
             "," + num_to_string(f.hi) + "] " + parenthesized(*f.children[1]) +
             ")";
  }
  throw std::logic_error("unreachable formula kind");
}

}  // namespace stl2vec
