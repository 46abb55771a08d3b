#pragma once

#include <memory>
#include <string>

#include "besovlab/grid.hpp"

namespace besovlab {

/// Small arithmetic expressions over the variables {m, xi}: literals,
/// + - * / ^ (right-associative ^), unary minus, and the functions
/// exp, abs, pow, min, max.  Parse errors carry the column.
class Expr {
 public:
  struct Node;

  static Expr parse(const std::string& text);

  double eval(double m, double xi) const;
  double eval_m(double m) const { return eval(m, 0.0); }
  double eval_xi(double xi) const { return eval(0.0, xi); }

  /// Canonical text form; parse(print()) is an equivalent expression.
  std::string print() const;
  const std::string& source() const { return source_; }

 private:
  std::shared_ptr<const Node> root_;
  std::string source_;
};

/// config_error subtype carrying the 1-based column of the failure.
struct expr_parse_error : config_error {
  int column;
  expr_parse_error(const std::string& msg, int col)
      : config_error(msg + " (column " + std::to_string(col) + ")"),
        column(col) {}
};

}  // namespace besovlab
