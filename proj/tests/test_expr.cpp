#include "doctest.h"

#include <limits>

#include "helpers.hpp"
#include "tickmc/error.hpp"
#include "tickmc/expr.hpp"
#include "tickmc/rational.hpp"

using namespace tickmc;
using testutil::rat;

TEST_CASE("rational construction normalizes") {
  auto r = Rational::make(2, 4);
  REQUIRE(r);
  CHECK(r->num == 1);
  CHECK(r->den == 2);

  r = Rational::make(1, -2);
  REQUIRE(r);
  CHECK(r->num == -1);
  CHECK(r->den == 2);

  r = Rational::make(0, 7);
  REQUIRE(r);
  CHECK(r->num == 0);
  CHECK(r->den == 1);
  CHECK(r->is_zero());

  CHECK_FALSE(Rational::make(1, 0));
}

TEST_CASE("rational decimal parsing") {
  auto r = Rational::parse_decimal("0.25");
  REQUIRE(r);
  CHECK(*r == rat(1, 4));

  r = Rational::parse_decimal("123");
  REQUIRE(r);
  CHECK(r->is_integer());
  CHECK(r->num == 123);

  r = Rational::parse_decimal("0.1");
  REQUIRE(r);
  CHECK(*r == rat(1, 10));

  r = Rational::parse_decimal("1.0");
  REQUIRE(r);
  CHECK(*r == rat(1));

  CHECK_FALSE(Rational::parse_decimal(""));
  CHECK_FALSE(Rational::parse_decimal("1.2.3"));
  CHECK_FALSE(Rational::parse_decimal("1e5"));
  CHECK_FALSE(Rational::parse_decimal("-1"));
  CHECK_FALSE(Rational::parse_decimal("."));
  CHECK_FALSE(Rational::parse_decimal("abc"));
  CHECK_FALSE(Rational::parse_decimal("99999999999999999999999999"));
}

TEST_CASE("rational arithmetic is exact and reports overflow") {
  auto sum = r_add(rat(1, 3), rat(1, 6));
  REQUIRE(sum);
  CHECK(*sum == rat(1, 2));

  auto prod = r_mul(rat(2, 3), rat(3, 4));
  REQUIRE(prod);
  CHECK(*prod == rat(1, 2));

  auto diff = r_sub(rat(1), rat(3, 10));
  REQUIRE(diff);
  CHECK(*diff == rat(7, 10));

  auto quot = r_div(rat(1), rat(10));
  REQUIRE(quot);
  CHECK(*quot == rat(1, 10));

  CHECK_FALSE(r_div(rat(1), rat(0)));

  // Denominators 2^40 and 3^25 cannot combine within 64 bits.
  const Rational big_a = rat(1, std::int64_t(1) << 40);
  const Rational big_b = rat(1, 847288609443);  // 3^25
  CHECK_FALSE(r_add(big_a, big_b));

  CHECK(r_less(rat(1, 3), rat(1, 2)));
  CHECK_FALSE(r_less(rat(1, 2), rat(1, 3)));
  CHECK_FALSE(r_less(rat(1, 2), rat(1, 2)));
}

TEST_CASE("rational decimal rendering") {
  CHECK(rat(1, 4).to_decimal_string() == "0.25");
  CHECK(rat(1, 10).to_decimal_string() == "0.1");
  CHECK(rat(1, 100).to_decimal_string() == "0.01");
  CHECK(rat(30).to_decimal_string() == "30");
  CHECK(rat(0).to_decimal_string() == "0");
  CHECK(rat(1, 3).to_decimal_string() == "1/3");  // not a 2-5 denominator
  CHECK(rat(99, 100).to_decimal_string() == "0.99");
}

TEST_CASE("probability expressions evaluate under bindings") {
  Bindings bindings{{"p", rat(3, 10)}, {"ratio", rat(10)}};

  const auto one_minus_p =
      ProbExpr::binary(ProbExpr::Op::sub, ProbExpr::lit(rat(1)), ProbExpr::cref("p"));
  CHECK(evaluate(*one_minus_p, bindings) == doctest::Approx(0.7).epsilon(1e-15));
  auto exact = evaluate_exact(*one_minus_p, bindings);
  REQUIRE(exact);
  CHECK(*exact == rat(7, 10));

  const auto inv =
      ProbExpr::binary(ProbExpr::Op::div, ProbExpr::lit(rat(1)), ProbExpr::cref("ratio"));
  CHECK(evaluate(*inv, bindings) == 0.1);

  const auto unknown = ProbExpr::cref("missing");
  CHECK_THROWS_AS(evaluate(*unknown, bindings), Error);
  try {
    evaluate(*unknown, bindings);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::unknown_identifier);
  }

  Bindings zero{{"z", rat(0)}};
  const auto div0 =
      ProbExpr::binary(ProbExpr::Op::div, ProbExpr::lit(rat(1)), ProbExpr::cref("z"));
  try {
    evaluate(*div0, zero);
    FAIL("division by zero not reported");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::division_by_zero);
  }
}

TEST_CASE("exact evaluation falls back on overflow but double evaluation continues") {
  Bindings bindings{{"tiny_a", rat(1, std::int64_t(1) << 40)},
                    {"tiny_b", rat(1, 847288609443)}};
  const auto sum =
      ProbExpr::binary(ProbExpr::Op::add, ProbExpr::cref("tiny_a"), ProbExpr::cref("tiny_b"));
  CHECK_FALSE(evaluate_exact(*sum, bindings));
  const double expected = 1.0 / double(std::int64_t(1) << 40) + 1.0 / 847288609443.0;
  CHECK(evaluate(*sum, bindings) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("guard evaluation") {
  Valuation vals{{"x", "a"}, {"y", "b"}};
  const auto eq = GuardExpr::atom(GuardExpr::Op::eq, "x", "a");
  const auto ne = GuardExpr::atom(GuardExpr::Op::ne, "y", "b");
  CHECK(evaluate(*eq, vals));
  CHECK_FALSE(evaluate(*ne, vals));
  CHECK(evaluate(*GuardExpr::binary(GuardExpr::Op::disj, eq, ne), vals));
  CHECK_FALSE(evaluate(*GuardExpr::binary(GuardExpr::Op::conj, eq, ne), vals));
  CHECK(evaluate(*GuardExpr::negate(ne), vals));
  CHECK(evaluate(*GuardExpr::truth(), vals));

  const auto missing = GuardExpr::atom(GuardExpr::Op::eq, "zz", "a");
  try {
    evaluate(*missing, vals);
    FAIL("unknown variable not reported");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::unknown_identifier);
  }
}

TEST_CASE("collectors") {
  const auto w = ProbExpr::binary(
      ProbExpr::Op::mul,
      ProbExpr::binary(ProbExpr::Op::sub, ProbExpr::lit(rat(1)), ProbExpr::cref("p")),
      ProbExpr::cref("q"));
  std::set<std::string> consts;
  collect_constants(*w, consts);
  CHECK(consts == std::set<std::string>{"p", "q"});

  const auto g = GuardExpr::binary(GuardExpr::Op::disj,
                                   GuardExpr::atom(GuardExpr::Op::eq, "x", "a"),
                                   GuardExpr::atom(GuardExpr::Op::ne, "y", "b"));
  std::set<std::pair<std::string, std::string>> atoms;
  collect_atoms(*g, atoms);
  CHECK(atoms == std::set<std::pair<std::string, std::string>>{{"x", "a"}, {"y", "b"}});
}

// Round-trips expression text through the model parser by embedding it in a
// one-transition machine.
static ProbExpr::Ptr reparse_weight(const std::string& text) {
  const std::string src = "const c : probability;\nconst d : probability;\nconst H : count;\n"
                          "horizon H;\nmachine M { initial A; state A; from A goto [" +
                          text + "] A; }\n";
  auto parsed = tickmc::parse_model(src, "<expr>");
  REQUIRE_MESSAGE(parsed.ok(), parsed.diagnostics.to_string());
  return parsed.network.machines.at(0).transitions.at(0).branches.at(0).weight;
}

static GuardExpr::Ptr reparse_guard(const std::string& text) {
  const std::string src = "domain D { a, b }\nvar x : D = a;\nvar y : D = a;\n"
                          "const H : count;\nhorizon H;\n"
                          "machine M { initial A; state A; from A when " +
                          text + " goto [1] A; }\n";
  auto parsed = tickmc::parse_model(src, "<guard>");
  REQUIRE_MESSAGE(parsed.ok(), parsed.diagnostics.to_string());
  return parsed.network.machines.at(0).transitions.at(0).guard;
}

TEST_CASE("expression text round-trips with minimal parentheses") {
  const auto add_mul = ProbExpr::binary(
      ProbExpr::Op::mul,
      ProbExpr::binary(ProbExpr::Op::add, ProbExpr::cref("c"), ProbExpr::cref("d")),
      ProbExpr::lit(rat(1, 2)));
  const std::string text = to_string(*add_mul);
  CHECK(text == "(c + d) * 0.5");
  CHECK(structurally_equal(*add_mul, *reparse_weight(text)));

  const auto chain = ProbExpr::binary(
      ProbExpr::Op::sub,
      ProbExpr::binary(ProbExpr::Op::sub, ProbExpr::lit(rat(1)), ProbExpr::cref("c")),
      ProbExpr::cref("d"));
  CHECK(to_string(*chain) == "1 - c - d");
  CHECK(structurally_equal(*chain, *reparse_weight(to_string(*chain))));

  // Right-nested subtraction needs the parentheses kept.
  const auto nested = ProbExpr::binary(
      ProbExpr::Op::sub, ProbExpr::lit(rat(1)),
      ProbExpr::binary(ProbExpr::Op::sub, ProbExpr::cref("c"), ProbExpr::cref("d")));
  CHECK(to_string(*nested) == "1 - (c - d)");
  CHECK(structurally_equal(*nested, *reparse_weight(to_string(*nested))));

  const auto inv = ProbExpr::binary(
      ProbExpr::Op::sub, ProbExpr::lit(rat(1)),
      ProbExpr::binary(ProbExpr::Op::div, ProbExpr::lit(rat(1)), ProbExpr::cref("c")));
  CHECK(to_string(*inv) == "1 - 1 / c");
  CHECK(structurally_equal(*inv, *reparse_weight(to_string(*inv))));
}

TEST_CASE("guard text round-trips with minimal parentheses") {
  const auto disj = GuardExpr::binary(GuardExpr::Op::disj,
                                      GuardExpr::atom(GuardExpr::Op::eq, "x", "a"),
                                      GuardExpr::atom(GuardExpr::Op::eq, "y", "b"));
  CHECK(to_string(*disj) == "x == a or y == b");
  CHECK(structurally_equal(*disj, *reparse_guard(to_string(*disj))));

  const auto conj_of_disj = GuardExpr::binary(
      GuardExpr::Op::conj, disj, GuardExpr::atom(GuardExpr::Op::ne, "x", "b"));
  CHECK(to_string(*conj_of_disj) == "(x == a or y == b) and x != b");
  CHECK(structurally_equal(*conj_of_disj, *reparse_guard(to_string(*conj_of_disj))));

  const auto negated = GuardExpr::negate(conj_of_disj);
  CHECK(structurally_equal(*negated, *reparse_guard(to_string(*negated))));

  CHECK(to_string(*GuardExpr::truth()) == "true");
}

TEST_CASE("structural equality discriminates") {
  const auto a = ProbExpr::binary(ProbExpr::Op::add, ProbExpr::cref("c"), ProbExpr::cref("d"));
  const auto b = ProbExpr::binary(ProbExpr::Op::add, ProbExpr::cref("d"), ProbExpr::cref("c"));
  CHECK_FALSE(structurally_equal(*a, *b));  // operand order is structural
  CHECK(structurally_equal(*a, *a));

  const auto g1 = GuardExpr::atom(GuardExpr::Op::eq, "x", "a");
  const auto g2 = GuardExpr::atom(GuardExpr::Op::ne, "x", "a");
  CHECK_FALSE(structurally_equal(*g1, *g2));
}
