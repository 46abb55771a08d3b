#include "besovlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace besovlab {

struct Expr::Node {
  enum class Kind { literal, var_m, var_xi, add, sub, mul, div, pow, neg,
                    fn_exp, fn_abs, fn_pow, fn_min, fn_max };
  Kind kind;
  double value = 0;
  std::vector<std::shared_ptr<const Node>> args;
};

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind k, std::vector<NodePtr> args = {}, double v = 0) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->value = v;
  n->args = std::move(args);
  return n;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ < text_.size())
      throw expr_parse_error("unexpected trailing input", col());
    return e;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  int col() const { return static_cast<int>(pos_) + 1; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(
                                      static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  NodePtr expr() {
    NodePtr left = term();
    for (;;) {
      if (eat('+'))
        left = make(Node::Kind::add, {left, term()});
      else if (eat('-'))
        left = make(Node::Kind::sub, {left, term()});
      else
        return left;
    }
  }

  NodePtr term() {
    NodePtr left = unary();
    for (;;) {
      if (eat('*'))
        left = make(Node::Kind::mul, {left, unary()});
      else if (eat('/'))
        left = make(Node::Kind::div, {left, unary()});
      else
        return left;
    }
  }

  NodePtr unary() {
    if (eat('-')) return make(Node::Kind::neg, {unary()});
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(Node::Kind::pow, {base, unary()});
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= text_.size())
      throw expr_parse_error("unexpected end of expression", col());
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) throw expr_parse_error("expected ')'", col());
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* start = text_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(start, &end);
      if (end == start) throw expr_parse_error("bad number", col());
      pos_ += end - start;
      return make(Node::Kind::literal, {}, v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isalnum(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      if (name == "m") return make(Node::Kind::var_m);
      if (name == "xi") return make(Node::Kind::var_xi);
      Node::Kind fn;
      int arity;
      if (name == "exp") fn = Node::Kind::fn_exp, arity = 1;
      else if (name == "abs") fn = Node::Kind::fn_abs, arity = 1;
      else if (name == "pow") fn = Node::Kind::fn_pow, arity = 2;
      else if (name == "min") fn = Node::Kind::fn_min, arity = 2;
      else if (name == "max") fn = Node::Kind::fn_max, arity = 2;
      else
        throw expr_parse_error("unknown identifier '" + name + "'",
                               static_cast<int>(start) + 1);
      if (!eat('('))
        throw expr_parse_error("expected '(' after '" + name + "'", col());
      std::vector<NodePtr> args;
      args.push_back(expr());
      for (int i = 1; i < arity; ++i) {
        if (!eat(','))
          throw expr_parse_error("expected ',' in '" + name + "'", col());
        args.push_back(expr());
      }
      if (!eat(')')) throw expr_parse_error("expected ')'", col());
      return make(fn, std::move(args));
    }
    throw expr_parse_error(std::string("unexpected character '") + c + "'",
                           col());
  }
};

double eval_node(const Node& n, double m, double xi) {
  auto arg = [&](int i) { return eval_node(*n.args[i], m, xi); };
  switch (n.kind) {
    case Node::Kind::literal: return n.value;
    case Node::Kind::var_m: return m;
    case Node::Kind::var_xi: return xi;
    case Node::Kind::add: return arg(0) + arg(1);
    case Node::Kind::sub: return arg(0) - arg(1);
    case Node::Kind::mul: return arg(0) * arg(1);
    case Node::Kind::div: {
      double d = arg(1);
      if (d == 0) throw numeric_error("expression: division by zero");
      return arg(0) / d;
    }
    case Node::Kind::pow:
    case Node::Kind::fn_pow: {
      double b = arg(0), e = arg(1);
      if (b == 0 && e < 0)
        throw numeric_error("expression: 0 raised to a negative power");
      if (b < 0 && e != std::floor(e))
        throw numeric_error("expression: negative base, fractional exponent");
      return std::pow(b, e);
    }
    case Node::Kind::neg: return -arg(0);
    case Node::Kind::fn_exp: return std::exp(arg(0));
    case Node::Kind::fn_abs: return std::abs(arg(0));
    case Node::Kind::fn_min: return std::min(arg(0), arg(1));
    case Node::Kind::fn_max: return std::max(arg(0), arg(1));
  }
  throw numeric_error("expression: corrupt node");
}

void print_node(const Node& n, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print_node(*n.args[0], out);
    out += op;
    print_node(*n.args[1], out);
    out += ')';
  };
  auto fn = [&](const char* name) {
    out += name;
    out += '(';
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      if (i) out += ',';
      print_node(*n.args[i], out);
    }
    out += ')';
  };
  switch (n.kind) {
    case Node::Kind::literal: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case Node::Kind::var_m: out += 'm'; return;
    case Node::Kind::var_xi: out += "xi"; return;
    case Node::Kind::add: binary("+"); return;
    case Node::Kind::sub: binary("-"); return;
    case Node::Kind::mul: binary("*"); return;
    case Node::Kind::div: binary("/"); return;
    case Node::Kind::pow: binary("^"); return;
    case Node::Kind::neg:
      out += "(-";
      print_node(*n.args[0], out);
      out += ')';
      return;
    case Node::Kind::fn_exp: fn("exp"); return;
    case Node::Kind::fn_abs: fn("abs"); return;
    case Node::Kind::fn_pow: fn("pow"); return;
    case Node::Kind::fn_min: fn("min"); return;
    case Node::Kind::fn_max: fn("max"); return;
  }
}

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.root_ = Parser(text).run();
  e.source_ = text;
  return e;
}

double Expr::eval(double m, double xi) const {
  if (!root_) throw usage_error("Expr: evaluating an empty expression");
  return eval_node(*root_, m, xi);
}

std::string Expr::print() const {
  if (!root_) return "";
  std::string out;
  print_node(*root_, out);
  return out;
}

}  // namespace besovlab
