// Guard and probability expression trees.
//
// Nodes are immutable and shared, so networks copy cheaply and concurrent
// readers need no synchronization.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "tickmc/diagnostics.hpp"
#include "tickmc/rational.hpp"

namespace tickmc {

// Arithmetic over constants and rational literals; used for branch weights.
class ProbExpr {
 public:
  enum class Op { literal, const_ref, add, sub, mul, div };
  using Ptr = std::shared_ptr<const ProbExpr>;

  Op op = Op::literal;
  Rational literal{};    // op == literal
  std::string name;      // op == const_ref
  Ptr lhs, rhs;          // binary ops
  SourceSpan span;

  static Ptr lit(Rational value, SourceSpan span = {});
  static Ptr cref(std::string name, SourceSpan span = {});
  static Ptr binary(Op op, Ptr lhs, Ptr rhs, SourceSpan span = {});
};

// Boolean formulas over shared-variable atoms; used for transition guards.
class GuardExpr {
 public:
  enum class Op { truth, eq, ne, conj, disj, neg };
  using Ptr = std::shared_ptr<const GuardExpr>;

  Op op = Op::truth;
  std::string var, value;  // eq / ne atoms
  Ptr lhs, rhs;            // neg uses lhs only
  SourceSpan span;

  static Ptr truth(SourceSpan span = {});
  static Ptr atom(Op op, std::string var, std::string value, SourceSpan span = {});
  static Ptr negate(Ptr inner, SourceSpan span = {});
  static Ptr binary(Op op, Ptr lhs, Ptr rhs, SourceSpan span = {});
};

using Bindings = std::map<std::string, Rational>;
using Valuation = std::map<std::string, std::string>;

// Evaluates a weight expression under constant bindings.  Arithmetic is exact
// rational where representable and IEEE double beyond that.  Throws Error
// with kind unknown_identifier or division_by_zero.
double evaluate(const ProbExpr& expr, const Bindings& bindings);

// Exact variant; nullopt when any intermediate overflows 64-bit rationals.
std::optional<Rational> evaluate_exact(const ProbExpr& expr, const Bindings& bindings);

// Evaluates a guard against a shared-variable valuation (variable -> value).
// Throws Error{unknown_identifier} when the guard references a missing
// variable.
bool evaluate(const GuardExpr& expr, const Valuation& valuation);

void collect_constants(const ProbExpr& expr, std::set<std::string>& out);
void collect_atoms(const GuardExpr& expr,
                   std::set<std::pair<std::string, std::string>>& out);

// Canonical text with minimal parentheses; reparsing yields a structurally
// equal tree.
std::string to_string(const ProbExpr& expr);
std::string to_string(const GuardExpr& expr);

bool structurally_equal(const ProbExpr& a, const ProbExpr& b);
bool structurally_equal(const GuardExpr& a, const GuardExpr& b);

}  // namespace tickmc
