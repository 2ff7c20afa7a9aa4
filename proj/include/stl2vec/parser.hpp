#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "stl2vec/formula.hpp"

namespace stl2vec {

/// Syntax error; carries the byte offset and the token set that was expected.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string expected, std::string found)
      : std::runtime_error("parse error at byte " + std::to_string(offset) +
                           ": expected " + expected + ", found " + found),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Parses the concrete STL grammar. Throws ParseError on malformed input and
/// IntervalError when a temporal interval violates 0 <= a < b.
FormulaPtr parse(const std::string& text);

/// One formula per line; blank lines and lines starting with '#' are skipped.
std::vector<FormulaPtr> parse_formula_lines(const std::string& text);
std::vector<FormulaPtr> load_formula_file(const std::string& path);
void save_formula_file(const std::string& path,
                       const std::vector<FormulaPtr>& formulae);

}  // namespace stl2vec
