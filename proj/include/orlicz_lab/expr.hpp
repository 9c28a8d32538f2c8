#pragma once

#include <memory>
#include <string>

namespace orlicz_lab {

/// A parsed arithmetic expression in the variables `n` and `w`.
///
/// Grammar: numbers, the constants `e` and `pi`, the variables `n` and `w`,
/// binary `+ - * /`, right-associative `^`, unary minus, parentheses, and the
/// functions `exp(.)` and `log(.)`. Anything else is rejected at parse time.
class Expr {
 public:
  struct Node;

  static Expr parse(const std::string& source);

  double operator()(double n, double w = 0.0) const;

  const std::string& source() const noexcept { return source_; }

 private:
  std::string source_;
  std::shared_ptr<const Node> root_;
};

}  // namespace orlicz_lab
