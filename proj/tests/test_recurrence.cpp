#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_systems.hpp"

using namespace lvl3;

namespace {

TEST(Catenative, AgreesWithRecursiveOracle) {
  gen::Rng r(21);
  for (int n = 0; n < 60; ++n) {
    const auto s = gen::random_catenative(r, 4, 3, 3, 3);
    s.validate();
    for (const auto& w : oracle::words_up_to(s.input.letters(), 4))
      for (const auto& i : s.indices) EXPECT_EQ(eval_catenative(s, i, w), oracle::catenative(s, i, w));
  }
}

TEST(Catenative, EmptyWordGivesBase) {
  const auto f = fixture::load("factorial");
  const auto& s = f.cats.at("words");
  EXPECT_EQ(join(eval_catenative(s, "u", {})), "b");
  EXPECT_EQ(join(eval_catenative(s, "v", {})), "ab");
}

TEST(Catenative, PrefixWords) {
  const auto file = fixture::load("factorial");
  const auto& s = file.cats.at("words");
  std::string u = "b";
  for (std::size_t n = 1; n <= 10; ++n) {
    u += std::string(n, 'a') + "b";
    EXPECT_EQ(join(eval_catenative(s, "u", Word(n, "n"))), u);
    EXPECT_EQ(join(eval_catenative(s, "v", Word(n, "n"))), std::string(n + 1, 'a') + "b");
  }
}

TEST(Catenative, UnknownIndexOrLetterThrows) {
  const auto file = fixture::load("factorial");
  const auto& s = file.cats.at("words");
  EXPECT_THROW(eval_catenative(s, "zz", {}), std::domain_error);
  EXPECT_THROW(eval_catenative(s, "u", Word{"q"}), std::domain_error);
}

TEST(Compositional, NpownImages) {
  const auto f = fixture::load("npown");
  const auto& s = f.comps.at("Hsys").system;
  for (std::size_t q = 0; q <= 8; ++q) {
    const Word cq(q, "c");
    const auto h = eval_compositional(s, "H", cq);
    EXPECT_EQ(join(h.image("x")), "x");
    EXPECT_EQ(join(h.image("y")), std::string(q, 'x') + "y");
    Word bcq{"b"};
    bcq.insert(bcq.end(), cq.begin(), cq.end());
    const auto g = eval_compositional(s, "H", bcq);
    EXPECT_EQ(join(g.image("x")), std::string(q, 'x'));
    EXPECT_EQ(join(g.image("y")), "x");
  }
}

TEST(Compositional, AgreesWithRunLengthOracle) {
  const auto file = fixture::load("npown");
  const auto& s = file.comps.at("Hsys").system;
  for (std::size_t p = 0; p <= 2; ++p)
    for (std::size_t q = 0; q <= 3; ++q) {
      const std::string w = std::string(p, 'a') + "b" + std::string(q, 'c');
      const auto h = eval_compositional(s, "H", oracle::letters(w));
      const auto o = oracle::unfold_h(w);
      EXPECT_EQ(join(h.image("x")), oracle::expand(o.x)) << w;
      EXPECT_EQ(join(h.image("y")), oracle::expand(o.y)) << w;
      // H(a^p b c^q)(x) = x^(q^(2^p))
      EXPECT_EQ(Integer(h.image("x").size()), oracle::pow(q, 1ul << p)) << w;
    }
}

TEST(Compositional, EmptyWordGivesBaseMorphism) {
  const auto file = fixture::load("npown");
  const auto& d = file.comps.at("Hsys");
  EXPECT_EQ(eval_compositional(d.system, "K", {}), d.system.base.at("K"));
  EXPECT_EQ(join(eval_level3(d.system, "H", {}, Homomorphism::identity(d.system.working), "x")), "x");
}

TEST(Regular, StrictSystemsMatchCatenativeValues) {
  gen::Rng r(4);
  for (int n = 0; n < 40; ++n) {
    const auto cat = gen::random_catenative(r, 3, 2, 2, 3);
    const auto reg = RegularSystem::from_catenative(cat);
    reg.validate();
    EXPECT_TRUE(is_strict(reg));
    for (const auto& w : oracle::words_up_to(cat.input.letters(), 4))
      for (const auto& i : cat.indices) {
        auto o = eval_regular(reg, i, w, default_fuel);
        ASSERT_FALSE(o.exhausted);
        EXPECT_EQ(o.value, oracle::catenative(cat, i, w));
      }
  }
}

RegularSystem looping() {
  RegularSystem s;
  s.indices = Alphabet{"f"};
  s.input = Alphabet{"a"};
  s.output = Alphabet{"b"};
  s.classifier = Classifier::trivial(s.input);
  s.base["f"] = Word{"b"};
  s.rules[{"f", "a", "all"}] = {RegularFactor{"f", Word{"a"}}};
  return s;
}

TEST(Regular, ShiftLoopExhaustsFuel) {
  const auto s = looping();
  s.validate();
  EXPECT_FALSE(is_strict(s));
  for (std::size_t fuel : {1u, 10u, 1000u}) {
    auto o = eval_regular(s, "f", Word{"a"}, fuel);
    EXPECT_TRUE(o.exhausted);
    EXPECT_EQ(o.steps, fuel);
  }
  EXPECT_EQ(eval_regular(s, "f", {}, 0).value, Word{"b"});
}

TEST(Regular, ClassSelectsRule) {
  // Parity of the tail length selects between two rules.
  RegularSystem s;
  s.indices = Alphabet{"f"};
  s.input = Alphabet{"a"};
  s.output = Alphabet{"e", "o"};
  s.classifier = Classifier{Alphabet{"even", "odd"}, "even", {{{"even", "a"}, "odd"}, {{"odd", "a"}, "even"}}};
  s.base["f"] = {};
  s.rules[{"f", "a", "even"}] = {RegularFactor{"f", {}}, RegularFactor{"f", {}}};
  s.rules[{"f", "a", "odd"}] = {RegularFactor{"f", {}}};
  s.base["f"] = Word{"e"};
  s.validate();
  EXPECT_EQ(eval_regular(s, "f", Word(1, "a"), 100).value.size(), 2u);
  EXPECT_EQ(eval_regular(s, "f", Word(2, "a"), 100).value.size(), 2u);
  EXPECT_EQ(eval_regular(s, "f", Word(3, "a"), 100).value.size(), 4u);
}

TEST(Regular, ValidateRejectsIncompleteClassifier) {
  auto s = looping();
  s.classifier.next.clear();
  EXPECT_THROW(s.validate(), std::domain_error);
}

TEST(Polynomial, FactorialSystem) {
  const auto file = fixture::load("factorial");
  const auto& s = file.polys.at("fc");
  for (std::size_t n = 0; n <= 15; ++n) EXPECT_EQ(eval_polynomial(s, "FC", Word(n, "n")), oracle::factorial(n + 1));
}

TEST(Polynomial, AgreesWithRecursiveOracle) {
  gen::Rng r(8);
  for (int n = 0; n < 40; ++n) {
    const auto s = gen::random_polynomial_system(r, 3, 2, 2, 3, 3);
    s.validate();
    for (const auto& w : oracle::words_up_to(s.input.letters(), 4)) EXPECT_EQ(eval_polynomial_vector(s, w), oracle::polynomial(s, w));
  }
}

TEST(Polynomial, NaturalsRejectNegativeCoefficients) {
  PolynomialSystem s;
  s.indices = Alphabet{"F"};
  s.input = Alphabet{"a"};
  s.base = {1};
  s.rules[{"F", "a"}] = ZPoly::variable(0) * ZPoly(-1);
  EXPECT_THROW(s.validate(), std::domain_error);
  s.ring = Ring::Integers;
  EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(eval_polynomial(s, "F", Word(3, "a")), -1);
}

}  // namespace
