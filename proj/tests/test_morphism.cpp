#include <gtest/gtest.h>

#include "oracles.hpp"
#include "random_systems.hpp"

using namespace lvl3;

namespace {

const Alphabet xy{"x", "y"};

Homomorphism hom(std::vector<std::string> images) {
  std::vector<Word> w;
  for (const auto& s : images) w.push_back(oracle::letters(s));
  return Homomorphism::endo(xy, w);
}

TEST(Homomorphism, Apply) {
  const auto h = hom({"xy", ""});
  EXPECT_EQ(join(h.apply(oracle::letters("xyx"))), "xyxy");
  EXPECT_EQ(Homomorphism::identity(xy).apply(oracle::letters("yx")), oracle::letters("yx"));
  EXPECT_THROW(h.apply(Word{"z"}), std::domain_error);
}

TEST(Homomorphism, ConstructionChecks) {
  EXPECT_THROW(Homomorphism(xy, xy, {{"x", Word{"x"}}}), std::domain_error);
  EXPECT_THROW(Homomorphism(xy, xy, {{"x", Word{"z"}}, {"y", Word{}}}), std::domain_error);
  EXPECT_THROW(Homomorphism(xy, xy, {{"x", Word{}}, {"y", Word{}}, {"z", Word{}}}), std::domain_error);
}

TEST(Homomorphism, ComposeAppliesFirstArgumentFirst) {
  const auto f = hom({"xy", "y"});
  const auto g = hom({"y", "x"});
  const auto fg = compose(f, g);
  EXPECT_EQ(join(fg.image("x")), "yx");
  EXPECT_EQ(compose(Homomorphism::identity(xy), g), g);
  EXPECT_EQ(compose(f, Homomorphism::identity(xy)), f);
  gen::Rng r(3);
  for (int n = 0; n < 50; ++n) {
    const auto a = hom({join(gen::random_word(r, xy, 0, 3)), join(gen::random_word(r, xy, 0, 3))});
    const auto b = hom({join(gen::random_word(r, xy, 0, 3)), join(gen::random_word(r, xy, 0, 3))});
    const Word w = gen::random_word(r, xy, 0, 5);
    EXPECT_EQ(compose(a, b).apply(w), b.apply(a.apply(w)));
  }
}

TEST(Homomorphism, ComposeChecksAlphabets) {
  const Homomorphism f(Alphabet{"x"}, Alphabet{"z"}, {{"x", Word{"z"}}});
  EXPECT_THROW(compose(f, hom({"x", "y"})), std::domain_error);
}

TEST(HDT0L, EvaluationOrder) {
  HDT0LSystem s = HDT0LSystem::dt0l(Alphabet{"a", "b"}, xy, {{"a", hom({"xy", "y"})}, {"b", hom({"y", "x"})}}, "x");
  EXPECT_EQ(eval(s, {}), Word{"x"});
  EXPECT_EQ(join(eval(s, Word{"a"})), "xy");
  EXPECT_EQ(join(eval(s, Word{"a", "b"})), "yx");
  EXPECT_EQ(join(eval(s, Word{"b", "a"})), "y");
}

TEST(HDT0L, AgreesWithLetterByLetterOracle) {
  gen::Rng r(11);
  for (int n = 0; n < 40; ++n) {
    const HDT0LSystem s = gen::random_hdt0l(r, 3, 2, 2, 3);
    for (const auto& w : oracle::words_up_to(s.input.letters(), 4)) EXPECT_EQ(eval(s, w), oracle::hdt0l(s, w));
  }
}

TEST(HDT0L, ValidateRejectsMissingTable) {
  HDT0LSystem s{Alphabet{"a"}, xy, {}, Homomorphism::identity(xy), "x"};
  EXPECT_THROW(s.validate(), std::domain_error);
  s.tables.emplace("a", hom({"x", "y"}));
  s.seed = "z";
  EXPECT_THROW(s.validate(), std::domain_error);
}

TEST(Parikh, CountsAndIncidence) {
  EXPECT_EQ(parikh(oracle::letters("xxy"), xy), (std::vector<Integer>{2, 1}));
  EXPECT_EQ(incidence(Homomorphism::identity(xy)), Matrix::identity(2));
  const auto h = hom({"xyx", "yy"});
  const Matrix m = incidence(h);
  EXPECT_EQ(m(0, 0), 2);
  EXPECT_EQ(m(0, 1), 1);
  EXPECT_EQ(m(1, 1), 2);
}

TEST(LinearRepresentation, Evaluation) {
  LinearRepresentation r{Alphabet{"c"}, 2, Matrix(1, 2, {1, 0}), {{"c", Matrix(2, 2, {1, 1, 1, 0})}}, Matrix(2, 1, {1, 1})};
  EXPECT_EQ(linear_eval(r, {}), 1);
  for (std::size_t n = 0; n < 20; ++n) EXPECT_EQ(linear_eval(r, Word(n, "c")), oracle::fibonacci(n + 1));
  r.final = Matrix(2, 1);
  EXPECT_EQ(linear_eval(r, Word(5, "c")), 0);
}

TEST(LinearRepresentation, AgreesWithOracle) {
  gen::Rng r(5);
  for (int n = 0; n < 30; ++n) {
    const auto rep = gen::random_linrep(r, Alphabet{"a", "b"}, 3, -2, 2);
    for (const auto& w : oracle::words_up_to(rep.input.letters(), 4)) EXPECT_EQ(linear_eval(rep, w), oracle::series(rep, w));
  }
}

}  // namespace
