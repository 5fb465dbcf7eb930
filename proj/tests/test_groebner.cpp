#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "random_systems.hpp"

using namespace lvl3;

namespace {

const std::vector<std::string> kNames{"x", "y", "z", "t"};

QPoly q(const std::string& text) { return parse_polynomial<Rational>(text, resolver_for(kNames)); }

std::vector<QPoly> qs(std::initializer_list<const char*> texts) {
  std::vector<QPoly> out;
  for (const auto* t : texts) out.push_back(q(t));
  return out;
}

TEST(PolynomialArithmetic, Basics) {
  EXPECT_EQ(q("(x+y)+(x-y)"), q("2*x"));
  EXPECT_EQ(q("(x+1)^2"), q("x^2 + 2*x + 1"));
  const ZPoly p = ZPoly::variable(0).pow(2) * ZPoly::variable(1);
  EXPECT_EQ(p.eval(std::vector<Integer>{3, 2}), 18);
}

TEST(Orders, CompareMonomials) {
  const auto grevlex = MonomialOrder::grevlex();
  const auto lex = MonomialOrder::lex();
  const Monomial x2 = Monomial::variable(0, 2), yz = Monomial::variable(1) * Monomial::variable(2);
  const Monomial x = Monomial::variable(0), y3 = Monomial::variable(1, 3);
  EXPECT_TRUE(lex.greater(x, y3));
  EXPECT_TRUE(grevlex.greater(y3, x));
  EXPECT_TRUE(grevlex.greater(x2, yz));
  EXPECT_EQ(grevlex.compare(x2, x2), 0);
  const auto block = MonomialOrder::block({true, false});
  EXPECT_TRUE(block.greater(x, y3));
  EXPECT_EQ(parse_order("lex").kind, OrderKind::Lex);
  EXPECT_THROW(parse_order("bogus"), std::invalid_argument);
}

TEST(Groebner, TrivialBases) {
  EXPECT_EQ(groebner(qs({"x"})), qs({"x"}));
  EXPECT_EQ(groebner(qs({"1"})), qs({"1"}));
  EXPECT_EQ(groebner(qs({"3*x + 6", "2*x + 4"})), qs({"x + 2"}));
  EXPECT_TRUE(groebner({}).empty());
}

TEST(Groebner, KnownBasis) {
  const auto g = groebner(qs({"x^2 - y", "x^3 - x"}));
  EXPECT_EQ(g, qs({"y^2 - y", "x*y - x", "x^2 - y"}));
}

TEST(Groebner, Membership) {
  EXPECT_TRUE(Ideal(qs({"x"})).contains(q("x^2")));
  EXPECT_FALSE(Ideal(qs({"x", "y"})).contains(q("1")));
  EXPECT_TRUE(Ideal(qs({"x", "1 - x"})).is_unit());
  EXPECT_TRUE(Ideal().is_zero());
}

TEST(Groebner, SPolynomialsReduceToZeroOnRandomIdeals) {
  gen::Rng r(13);
  for (int n = 0; n < 25; ++n) {
    std::vector<QPoly> gens;
    const int k = r.uniform(1, 3);
    for (int i = 0; i < k; ++i) gens.push_back(QPoly::convert(gen::random_poly(r, 3, 3, 3, 3)));
    for (const auto& ord : {MonomialOrder::grevlex(), MonomialOrder::lex()}) {
      const auto g = groebner(gens, ord);
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j)
          EXPECT_TRUE(oracle::remainder(s_polynomial(g[i], g[j], ord), g, ord).is_zero());
      for (const auto& p : gens) EXPECT_TRUE(oracle::remainder(p, g, ord).is_zero());
    }
  }
}

TEST(Groebner, NormalFormMatchesDivisionOracleOnBasis) {
  const auto ord = MonomialOrder::grevlex();
  const auto g = groebner(qs({"x^2 - y", "x*y - z"}), ord);
  for (const auto& p : qs({"x^3", "x*y*z + 1", "y^3 - z^2 + x"})) EXPECT_EQ(normal_form(p, g, ord), oracle::remainder(p, g, ord));
}

TEST(Groebner, BudgetExceeded) {
  GroebnerBudget b;
  b.max_basis = 1;
  EXPECT_THROW(groebner(qs({"x^2 - y", "x^3 - x"}), {}, b), BudgetExceeded);
}

TEST(Ideal, InvariantUnderPermutationAndOrder) {
  gen::Rng r(17);
  for (int n = 0; n < 15; ++n) {
    std::vector<QPoly> gens;
    for (int i = 0; i < 2; ++i) gens.push_back(QPoly::convert(gen::random_poly(r, 3, 2, 3, 2)));
    std::vector<QPoly> perm(gens.rbegin(), gens.rend());
    const Ideal a(gens), b(perm), c(gens, MonomialOrder::lex());
    EXPECT_TRUE(a.same_ideal(b));
    EXPECT_TRUE(a.same_ideal(c));
    const QPoly member = gens[0] * QPoly::convert(gen::random_poly(r, 3, 2, 2, 2)) + gens[1];
    EXPECT_TRUE(a.contains(member) && b.contains(member) && c.contains(member));
  }
}

TEST(Elimination, Examples) {
  const Ideal twisted(qs({"y - x^2", "z - x^3"}));
  const Ideal e = eliminate(twisted, {0});
  EXPECT_TRUE(e.contains(q("z^2 - y^3")));
  EXPECT_FALSE(e.contains(q("z - y")));
  for (const auto& p : e.basis()) EXPECT_FALSE(p.uses(0));
  EXPECT_TRUE(eliminate(twisted, {}).same_ideal(twisted));
  EXPECT_TRUE(eliminate(Ideal(qs({"x"})), {0}).is_zero());
}

TEST(Intersection, Examples) {
  const Ideal i(qs({"x^2 - y"}));
  EXPECT_TRUE(ideal_intersect(i, i).same_ideal(i));
  EXPECT_TRUE(ideal_intersect(i, Ideal(qs({"1"}))).same_ideal(i));
  const Ideal xy = ideal_intersect(Ideal(qs({"x"})), Ideal(qs({"y"})));
  EXPECT_TRUE(xy.contains(q("x*y")));
  EXPECT_FALSE(xy.contains(q("x")));
  EXPECT_TRUE(Ideal(qs({"x*y"})).contains(xy));
}

TEST(Printing, LeadingTermFirst) {
  const auto ord = MonomialOrder::grevlex();
  EXPECT_EQ(to_string(q("y - x^2 + 3"), ord, names_from(kNames)), "-x^2 + y + 3");
  EXPECT_EQ(leading_coefficient(q("y - x^2"), ord), -1);
}

}  // namespace
