#pragma once

#include <string>
#include <vector>

#include "fracto/algebra.hpp"
#include "fracto/registry.hpp"

namespace fracto {

/// AST for the fracto-expression surface syntax:
///   expr := meet ( "v" meet )* ; meet := atom ( "^" atom )* ;
///   atom := frac | "(" expr ")" ; frac := INT "/" "{" ID ("," ID)* "}".
/// Join and meet nodes are flattened (at least two children each).
struct FractoExpr {
  enum class Kind { Frac, Join, Meet };
  Kind kind = Kind::Frac;
  int threshold = 0;                  // Frac
  std::vector<std::string> ids;       // Frac
  std::vector<FractoExpr> children;   // Join / Meet

  static FractoExpr frac(int threshold, std::vector<std::string> ids);
  static FractoExpr join_of(std::vector<FractoExpr> children);
  static FractoExpr meet_of(std::vector<FractoExpr> children);

  friend bool operator==(const FractoExpr& a, const FractoExpr& b);
};

FractoExpr parse_expr(const std::string& text);

std::string print_expr(const FractoExpr& e, bool unicode = false);

Fractoconvexity eval_expr(const FractoExpr& e, const Registry& reg);

}  // namespace fracto
