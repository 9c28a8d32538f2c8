#include "orlicz_lab/expr.hpp"

#include <cctype>
#include <cmath>
#include <numbers>
#include <vector>

#include "orlicz_lab/errors.hpp"

namespace orlicz_lab {

struct Expr::Node {
  enum class Kind { constant, var_n, var_w, neg, add, sub, mul, div, pow, exp, log };
  Kind kind;
  double value = 0.0;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;

  double eval(double n, double w) const {
    switch (kind) {
      case Kind::constant: return value;
      case Kind::var_n: return n;
      case Kind::var_w: return w;
      case Kind::neg: return -a->eval(n, w);
      case Kind::add: return a->eval(n, w) + b->eval(n, w);
      case Kind::sub: return a->eval(n, w) - b->eval(n, w);
      case Kind::mul: return a->eval(n, w) * b->eval(n, w);
      case Kind::div: return a->eval(n, w) / b->eval(n, w);
      case Kind::pow: return std::pow(a->eval(n, w), b->eval(n, w));
      case Kind::exp: return std::exp(a->eval(n, w));
      case Kind::log: return std::log(a->eval(n, w));
    }
    return 0.0;
  }
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;
using Kind = Expr::Node::Kind;

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr, double v = 0.0) {
  auto node = std::make_shared<Expr::Node>();
  node->kind = k;
  node->a = std::move(a);
  node->b = std::move(b);
  node->value = v;
  return node;
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expression();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ArgumentError("expression '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make(Kind::add, lhs, term());
      } else if (accept('-')) {
        lhs = make(Kind::sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = make(Kind::mul, lhs, unary());
      } else if (accept('/')) {
        lhs = make(Kind::div, lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Kind::neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  // '^' binds tighter than unary minus on its left: -2^2 = -(2^2).
  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Kind::pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (accept('(')) {
      NodePtr e = expression();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string id = s_.substr(start, pos_ - start);
      if (id == "n") return make(Kind::var_n);
      if (id == "w") return make(Kind::var_w);
      if (id == "e") return make(Kind::constant, nullptr, nullptr, std::numbers::e);
      if (id == "pi") return make(Kind::constant, nullptr, nullptr, std::numbers::pi);
      if (id == "exp" || id == "log") {
        if (!accept('(')) fail("expected '(' after " + id);
        NodePtr arg = expression();
        if (!accept(')')) fail("expected ')'");
        return make(id == "exp" ? Kind::exp : Kind::log, arg);
      }
      pos_ = start;
      fail("unknown identifier '" + id + "'");
    }
    fail("unexpected character");
  }

  NodePtr number() {
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    return make(Kind::constant, nullptr, nullptr, v);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr Expr::parse(const std::string& source) {
  Expr e;
  e.source_ = source;
  e.root_ = Parser(source).parse();
  return e;
}

double Expr::operator()(double n, double w) const { return root_->eval(n, w); }

}  // namespace orlicz_lab
