#include "tickmc/expr.hpp"

#include <cmath>

#include "tickmc/error.hpp"

namespace tickmc {

ProbExpr::Ptr ProbExpr::lit(Rational value, SourceSpan span) {
  auto node = std::make_shared<ProbExpr>();
  node->op = Op::literal;
  node->literal = value;
  node->span = std::move(span);
  return node;
}

ProbExpr::Ptr ProbExpr::cref(std::string name, SourceSpan span) {
  auto node = std::make_shared<ProbExpr>();
  node->op = Op::const_ref;
  node->name = std::move(name);
  node->span = std::move(span);
  return node;
}

ProbExpr::Ptr ProbExpr::binary(Op op, Ptr lhs, Ptr rhs, SourceSpan span) {
  auto node = std::make_shared<ProbExpr>();
  node->op = op;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  node->span = std::move(span);
  return node;
}

GuardExpr::Ptr GuardExpr::truth(SourceSpan span) {
  auto node = std::make_shared<GuardExpr>();
  node->op = Op::truth;
  node->span = std::move(span);
  return node;
}

GuardExpr::Ptr GuardExpr::atom(Op op, std::string var, std::string value, SourceSpan span) {
  auto node = std::make_shared<GuardExpr>();
  node->op = op;
  node->var = std::move(var);
  node->value = std::move(value);
  node->span = std::move(span);
  return node;
}

GuardExpr::Ptr GuardExpr::negate(Ptr inner, SourceSpan span) {
  auto node = std::make_shared<GuardExpr>();
  node->op = Op::neg;
  node->lhs = std::move(inner);
  node->span = std::move(span);
  return node;
}

GuardExpr::Ptr GuardExpr::binary(Op op, Ptr lhs, Ptr rhs, SourceSpan span) {
  auto node = std::make_shared<GuardExpr>();
  node->op = op;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  node->span = std::move(span);
  return node;
}

namespace {

// Carries the double value and, while representable, the exact rational.
struct EvalValue {
  double value = 0.0;
  std::optional<Rational> exact;
};

EvalValue eval_rec(const ProbExpr& expr, const Bindings& bindings) {
  switch (expr.op) {
    case ProbExpr::Op::literal:
      return {expr.literal.to_double(), expr.literal};
    case ProbExpr::Op::const_ref: {
      auto it = bindings.find(expr.name);
      if (it == bindings.end()) {
        throw Error(ErrorKind::unknown_identifier,
                    "unknown constant '" + expr.name + "' in weight expression");
      }
      return {it->second.to_double(), it->second};
    }
    default:
      break;
  }
  EvalValue a = eval_rec(*expr.lhs, bindings);
  EvalValue b = eval_rec(*expr.rhs, bindings);
  EvalValue out;
  std::optional<Rational> exact;
  switch (expr.op) {
    case ProbExpr::Op::add:
      out.value = a.value + b.value;
      if (a.exact && b.exact) exact = r_add(*a.exact, *b.exact);
      break;
    case ProbExpr::Op::sub:
      out.value = a.value - b.value;
      if (a.exact && b.exact) exact = r_sub(*a.exact, *b.exact);
      break;
    case ProbExpr::Op::mul:
      out.value = a.value * b.value;
      if (a.exact && b.exact) exact = r_mul(*a.exact, *b.exact);
      break;
    case ProbExpr::Op::div: {
      bool zero = b.exact ? b.exact->is_zero() : b.value == 0.0;
      if (zero) {
        throw Error(ErrorKind::division_by_zero, "division by zero in weight expression");
      }
      out.value = a.value / b.value;
      if (a.exact && b.exact) exact = r_div(*a.exact, *b.exact);
      break;
    }
    default:
      break;
  }
  out.exact = exact;
  // Prefer the exact value: it is what the double track approximates.
  if (out.exact) out.value = out.exact->to_double();
  return out;
}

}  // namespace

double evaluate(const ProbExpr& expr, const Bindings& bindings) {
  return eval_rec(expr, bindings).value;
}

std::optional<Rational> evaluate_exact(const ProbExpr& expr, const Bindings& bindings) {
  return eval_rec(expr, bindings).exact;
}

bool evaluate(const GuardExpr& expr, const Valuation& valuation) {
  switch (expr.op) {
    case GuardExpr::Op::truth:
      return true;
    case GuardExpr::Op::eq:
    case GuardExpr::Op::ne: {
      auto it = valuation.find(expr.var);
      if (it == valuation.end()) {
        throw Error(ErrorKind::unknown_identifier,
                    "unknown shared variable '" + expr.var + "' in guard");
      }
      bool eq = it->second == expr.value;
      return expr.op == GuardExpr::Op::eq ? eq : !eq;
    }
    case GuardExpr::Op::conj:
      return evaluate(*expr.lhs, valuation) && evaluate(*expr.rhs, valuation);
    case GuardExpr::Op::disj:
      return evaluate(*expr.lhs, valuation) || evaluate(*expr.rhs, valuation);
    case GuardExpr::Op::neg:
      return !evaluate(*expr.lhs, valuation);
  }
  return false;
}

void collect_constants(const ProbExpr& expr, std::set<std::string>& out) {
  switch (expr.op) {
    case ProbExpr::Op::literal:
      return;
    case ProbExpr::Op::const_ref:
      out.insert(expr.name);
      return;
    default:
      collect_constants(*expr.lhs, out);
      collect_constants(*expr.rhs, out);
  }
}

void collect_atoms(const GuardExpr& expr,
                   std::set<std::pair<std::string, std::string>>& out) {
  switch (expr.op) {
    case GuardExpr::Op::truth:
      return;
    case GuardExpr::Op::eq:
    case GuardExpr::Op::ne:
      out.insert({expr.var, expr.value});
      return;
    case GuardExpr::Op::neg:
      collect_atoms(*expr.lhs, out);
      return;
    default:
      collect_atoms(*expr.lhs, out);
      collect_atoms(*expr.rhs, out);
  }
}

namespace {

// Precedence: add/sub = 1, mul/div = 2, leaves = 3.
int prob_prec(ProbExpr::Op op) {
  switch (op) {
    case ProbExpr::Op::add:
    case ProbExpr::Op::sub:
      return 1;
    case ProbExpr::Op::mul:
    case ProbExpr::Op::div:
      return 2;
    default:
      return 3;
  }
}

void print_prob(const ProbExpr& expr, std::string& out) {
  switch (expr.op) {
    case ProbExpr::Op::literal:
      out += expr.literal.to_decimal_string();
      return;
    case ProbExpr::Op::const_ref:
      out += expr.name;
      return;
    default:
      break;
  }
  const char* sign = nullptr;
  switch (expr.op) {
    case ProbExpr::Op::add: sign = " + "; break;
    case ProbExpr::Op::sub: sign = " - "; break;
    case ProbExpr::Op::mul: sign = " * "; break;
    case ProbExpr::Op::div: sign = " / "; break;
    default: break;
  }
  int prec = prob_prec(expr.op);
  bool lparen = prob_prec(expr.lhs->op) < prec;
  // Right operands of the non-associative ops need parens at equal precedence.
  bool rparen = prob_prec(expr.rhs->op) < prec ||
                (prob_prec(expr.rhs->op) == prec &&
                 (expr.op == ProbExpr::Op::sub || expr.op == ProbExpr::Op::div));
  if (lparen) out += "(";
  print_prob(*expr.lhs, out);
  if (lparen) out += ")";
  out += sign;
  if (rparen) out += "(";
  print_prob(*expr.rhs, out);
  if (rparen) out += ")";
}

// Precedence: disj = 1, conj = 2, neg = 3, atoms = 4.
int guard_prec(GuardExpr::Op op) {
  switch (op) {
    case GuardExpr::Op::disj: return 1;
    case GuardExpr::Op::conj: return 2;
    case GuardExpr::Op::neg: return 3;
    default: return 4;
  }
}

void print_guard(const GuardExpr& expr, std::string& out) {
  switch (expr.op) {
    case GuardExpr::Op::truth:
      out += "true";
      return;
    case GuardExpr::Op::eq:
      out += expr.var + " == " + expr.value;
      return;
    case GuardExpr::Op::ne:
      out += expr.var + " != " + expr.value;
      return;
    case GuardExpr::Op::neg: {
      out += "not ";
      bool paren = guard_prec(expr.lhs->op) < guard_prec(GuardExpr::Op::neg);
      if (paren) out += "(";
      print_guard(*expr.lhs, out);
      if (paren) out += ")";
      return;
    }
    default:
      break;
  }
  const char* word = expr.op == GuardExpr::Op::conj ? " and " : " or ";
  int prec = guard_prec(expr.op);
  bool lparen = guard_prec(expr.lhs->op) < prec;
  bool rparen = guard_prec(expr.rhs->op) < prec;
  if (lparen) out += "(";
  print_guard(*expr.lhs, out);
  if (lparen) out += ")";
  out += word;
  if (rparen) out += "(";
  print_guard(*expr.rhs, out);
  if (rparen) out += ")";
}

}  // namespace

std::string to_string(const ProbExpr& expr) {
  std::string out;
  print_prob(expr, out);
  return out;
}

std::string to_string(const GuardExpr& expr) {
  std::string out;
  print_guard(expr, out);
  return out;
}

bool structurally_equal(const ProbExpr& a, const ProbExpr& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case ProbExpr::Op::literal:
      return a.literal == b.literal;
    case ProbExpr::Op::const_ref:
      return a.name == b.name;
    default:
      return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
  }
}

bool structurally_equal(const GuardExpr& a, const GuardExpr& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case GuardExpr::Op::truth:
      return true;
    case GuardExpr::Op::eq:
    case GuardExpr::Op::ne:
      return a.var == b.var && a.value == b.value;
    case GuardExpr::Op::neg:
      return structurally_equal(*a.lhs, *b.lhs);
    default:
      return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
  }
}

}  // namespace tickmc
