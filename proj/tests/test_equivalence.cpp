#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_systems.hpp"

using namespace lvl3;

namespace {

TEST(Equivalence, FibonacciPresentationsAreEqual) {
  const auto f = fixture::load("fibonacci");
  const auto r = decide_equal(f.polys.at("fib"), "F", f.polys.at("triple"), "T1");
  EXPECT_EQ(r.verdict, Decision::Equal);
  EXPECT_FALSE(r.invariant.empty());
}

TEST(Equivalence, PerturbedPairHasMinimalWitness) {
  const auto f = fixture::load("fibonacci");
  const auto r = decide_equal(f.polys.at("fib"), "F", f.polys.at("perturbed"), "F");
  ASSERT_EQ(r.verdict, Decision::NotEqual);
  EXPECT_EQ(r.witness, Word{"a"});
}

TEST(Equivalence, SelfIsEqual) {
  const auto f = fixture::load("factorial");
  EXPECT_EQ(decide_equal(f.polys.at("UV"), "U", f.polys.at("UV"), "U").verdict, Decision::Equal);
}

TEST(Equivalence, FactorialPresentations) {
  const auto f = fixture::load("factorial");
  // UV and UV_literal agree on words of length 1 and first differ at ab.
  const auto r = decide_equal(f.polys.at("UV"), "U", f.polys.at("UV_literal"), "U");
  ASSERT_EQ(r.verdict, Decision::NotEqual);
  EXPECT_EQ(r.witness, (Word{"a", "b"}));
}

TEST(Equivalence, DisjointUnionRenames) {
  const auto f = fixture::load("fibonacci");
  const auto u = disjoint_union(f.polys.at("fib"), f.polys.at("fib"));
  EXPECT_EQ(u.indices.letters(), (Word{"1.F", "1.G", "2.F", "2.G"}));
  for (std::size_t n = 0; n < 6; ++n) {
    auto v = eval_polynomial_vector(u, Word(n, "a"));
    EXPECT_EQ(v[0], v[2]);
    EXPECT_EQ(v[0], oracle::fibonacci(n));
  }
}

TEST(Zeroness, ConstantSystemInvariant) {
  PolynomialSystem s;
  s.indices = Alphabet{"X", "Y"};
  s.input = Alphabet{"a"};
  s.base = {3, 5};
  s.rules[{"X", "a"}] = ZPoly::variable(0);
  s.rules[{"Y", "a"}] = ZPoly::variable(1);
  const auto c = zariski_closure(s);
  EXPECT_TRUE(c.ideal.same_ideal(Ideal({QPoly::variable(0) - QPoly(3), QPoly::variable(1) - QPoly(5)})));
}

TEST(Zeroness, BudgetExceededIsReported) {
  const auto f = fixture::load("fibonacci");
  EquivalenceOptions o;
  o.max_generators = 1;
  EXPECT_THROW(decide_equal(f.polys.at("fib"), "F", f.polys.at("triple"), "T1", o), BudgetExceeded);
}

TEST(Closure, FibonacciCassini) {
  // F_{n+1} F_{n-1} - F_n^2 = ±1 gives (F^2 - FG - G^2)^2 = 1 on the reachable set.
  const auto f = fixture::load("fibonacci");
  ClosureOptions o;
  o.degree = 4;
  const auto c = zariski_closure(f.polys.at("fib"), o);
  EXPECT_TRUE(c.ideal.contains(QPoly::convert(parse_polynomial<Integer>("(F^2 - F*G - G^2)^2 - 1", resolver_for({"F", "G"})))));
  EXPECT_FALSE(c.ideal.contains(QPoly::convert(parse_polynomial<Integer>("F^2 - F*G - G^2 - 1", resolver_for({"F", "G"})))));
}

TEST(Closure, GeneratorsVanishOnReachableSet) {
  const auto f = fixture::load("factorial");
  const auto& s = f.polys.at("fc");
  const auto c = zariski_closure(s);
  for (std::size_t n = 0; n < 8; ++n) {
    const auto v = rational_point(eval_polynomial_vector(s, Word(n, "n")));
    for (const auto& g : c.ideal.basis()) EXPECT_EQ(g.eval(v), 0);
  }
}

TEST(Fractions, Presentations) {
  // left = (F2 - F) / (One - Zero) = F, right = (F2 - Zero) / (Two - Zero) = F, off = F - G.
  const char* text = R"(
poly p {
  input: a
  ring: Z
  F(eps) = 1; G(eps) = 0; F2(eps) = 2
  One(eps) = 1; Two(eps) = 2; Zero(eps) = 0
  F(a w) = F + G
  G(a w) = F
  F2(a w) = 2*F + 2*G
  One(a w) = One; Two(a w) = Two; Zero(a w) = Zero
}
frac left {
  system: p
  num: F2 - F
  den: One - Zero
}
frac right {
  system: p
  num: F2 - Zero
  den: Two - Zero
}
frac off {
  system: p
  num: F - G
  den: One - Zero
}
)";
  const auto f = parse_system_file(text);
  const auto l = f.fraction("left"), r = f.fraction("right"), o = f.fraction("off");
  for (std::size_t n = 0; n < 6; ++n) EXPECT_EQ(l.value(Word(n, "a")), r.value(Word(n, "a")));
  EXPECT_EQ(decide_equal_fractions(l, r).verdict, Decision::Equal);
  const auto res = decide_equal_fractions(l, o);
  ASSERT_EQ(res.verdict, Decision::NotEqual);
  EXPECT_EQ(res.witness, Word{"a"});
}

TEST(Soundness, RandomPairsAgainstBruteForce) {
  gen::Rng r(101);
  for (int n = 0; n < 20; ++n) {
    const auto a = gen::random_polynomial_system(r, 2, 2, 1, 2, 2);
    PolynomialSystem b = r.coin() ? a : gen::random_polynomial_system(r, 2, 2, 1, 2, 2);
    b.input = a.input;
    for (const auto& i : b.indices)
      for (const auto& x : b.input)
        if (!b.rules.count({i, x})) b.rules[{i, x}] = ZPoly::variable(b.indices.index_of(i));
    const auto res = decide_equal(a, a.indices[0], b, b.indices[0]);
    std::optional<Word> first;
    for (const auto& w : oracle::words_up_to(a.input.letters(), 6))
      if (oracle::polynomial(a, w)[0] != oracle::polynomial(b, w)[0]) {
        first = w;
        break;
      }
    if (res.verdict == Decision::Equal) {
      EXPECT_FALSE(first.has_value());
    } else {
      ASSERT_TRUE(first.has_value());
      EXPECT_EQ(res.witness, *first);
    }
  }
}

}  // namespace
