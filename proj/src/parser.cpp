#include "stl2vec/parser.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace stl2vec {

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  bool try_consume(const std::string& tok) {
    skip_ws();
    if (text.compare(pos, tok.size(), tok) == 0) {
      // multi-char keywords must not run into identifier characters
      if (tok.size() > 1 && std::isalpha(static_cast<unsigned char>(tok[0]))) {
        std::size_t end = pos + tok.size();
        if (end < text.size() &&
            std::isalnum(static_cast<unsigned char>(text[end]))) {
          return false;
        }
      }
      pos += tok.size();
      return true;
    }
    return false;
  }

  void expect(const std::string& tok, const std::string& expected_set) {
    if (!try_consume(tok)) fail(expected_set);
  }

  [[noreturn]] void fail(const std::string& expected_set) {
    skip_ws();
    std::string found = pos < text.size()
                            ? "'" + text.substr(pos, std::min<std::size_t>(8, text.size() - pos)) + "'"
                            : "end of input";
    throw ParseError(pos, expected_set, found);
  }

  double number() {
    skip_ws();
    double value = 0.0;
    auto res = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (res.ec != std::errc()) fail("number");
    pos = res.ptr - text.data();
    return value;
  }

  std::size_t uint_lit() {
    skip_ws();
    std::size_t value = 0;
    auto res = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (res.ec != std::errc()) fail("unsigned integer");
    pos = res.ptr - text.data();
    return value;
  }
};

struct Parser {
  Lexer lex;

  std::pair<double, double> interval() {
    lex.expect("[", "'['");
    double lo = lex.number();
    lex.expect(",", "','");
    double hi = lex.number();
    lex.expect("]", "']'");
    return {lo, hi};
  }

  FormulaPtr formula() {
    if (lex.try_consume("true")) return make_true();
    if (lex.try_consume("not")) return make_not(formula());
    if (lex.try_consume("F")) {
      auto [lo, hi] = interval();
      return make_eventually(lo, hi, formula());
    }
    if (lex.try_consume("G")) {
      auto [lo, hi] = interval();
      return make_always(lo, hi, formula());
    }
    if (lex.try_consume("(")) {
      FormulaPtr left = formula();
      if (lex.try_consume(")")) return left;  // plain grouping
      if (lex.try_consume("and")) {
        FormulaPtr right = formula();
        lex.expect(")", "')'");
        return make_and(std::move(left), std::move(right));
      }
      if (lex.try_consume("or")) {
        FormulaPtr right = formula();
        lex.expect(")", "')'");
        return make_or(std::move(left), std::move(right));
      }
      if (lex.try_consume("U")) {
        auto [lo, hi] = interval();
        FormulaPtr right = formula();
        lex.expect(")", "')'");
        return make_until(lo, hi, std::move(left), std::move(right));
      }
      lex.fail("'and', 'or', 'U' or ')'");
    }
    if (lex.try_consume("x")) {
      std::size_t var = lex.uint_lit();
      Relation rel;
      if (lex.try_consume(">=")) {
        rel = Relation::Geq;
      } else if (lex.try_consume("<=")) {
        rel = Relation::Leq;
      } else {
        lex.fail("'>=' or '<='");
      }
      return make_atom(var, rel, lex.number());
    }
    lex.fail("'true', 'not', 'F', 'G', '(' or atom");
  }
};

}  // namespace

FormulaPtr parse(const std::string& text) {
  Parser p{Lexer{text}};
  FormulaPtr f = p.formula();
  if (!p.lex.eof()) p.lex.fail("end of input");
  return f;
}

std::vector<FormulaPtr> parse_formula_lines(const std::string& text) {
  std::vector<FormulaPtr> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size() || line[i] == '#') continue;
    out.push_back(parse(line));
  }
  return out;
}

std::vector<FormulaPtr> load_formula_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open formula file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_formula_lines(buf.str());
}

void save_formula_file(const std::string& path,
                       const std::vector<FormulaPtr>& formulae) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write formula file: " + path);
  for (const auto& f : formulae) out << format(*f) << "\n";
}

}  // namespace stl2vec
