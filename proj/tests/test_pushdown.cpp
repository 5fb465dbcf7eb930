#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "random_systems.hpp"

using namespace lvl3;
using fixture::parse;

namespace {

TEST(Store, TopsymsOfNestedStore) {
  EXPECT_EQ(join(topsyms(parse(fixture::kOmega))), "A_1A_2A_3");
}

TEST(Store, TopsymsStopsAtEmptyStore) {
  EXPECT_TRUE(topsyms(Store(3)).empty());
  EXPECT_EQ(topsyms(parse_store("A1[]", 3)), (Word{"A1"}));
}

TEST(Store, PopAtEveryLevel) {
  const Store w = parse(fixture::kOmega);
  EXPECT_EQ(serialize_compact(pop(1, w)), "B_1[B_2[B_3D_3]]");
  EXPECT_EQ(serialize_compact(pop(2, w)), "A_1[B_2[D_3C_3]]B_1[B_2[B_3D_3]]");
  EXPECT_EQ(serialize_compact(pop(3, w)), "A_1[A_2[C_3]B_2[D_3C_3]]B_1[B_2[B_3D_3]]");
}

TEST(Store, PushDuplicatesInnerStore) {
  const Store w = parse(fixture::kOmega);
  const Word ab{"A", "B"};
  EXPECT_EQ(serialize_compact(push(1, ab, w)), "A[A_2[A_3C_3]B_2[D_3C_3]]B[A_2[A_3C_3]B_2[D_3C_3]]B_1[B_2[B_3D_3]]");
  EXPECT_EQ(serialize_compact(push(2, ab, w)), "A_1[A[A_3C_3]B[A_3C_3]B_2[D_3C_3]]B_1[B_2[B_3D_3]]");
  EXPECT_EQ(serialize_compact(push(3, ab, w)), "A_1[A_2[ABC_3]B_2[D_3C_3]]B_1[B_2[B_3D_3]]");
}

TEST(Store, OperationsOnEmptyStoreAreIdentity) {
  const Store e(2);
  EXPECT_EQ(pop(1, e), e);
  EXPECT_EQ(push(2, Word{"a"}, e), e);
}

TEST(Store, OperationLevelOutOfRangeThrows) {
  const Store w = parse(fixture::kOmega);
  EXPECT_THROW(pop(4, w), std::domain_error);
  EXPECT_THROW(pop(0, w), std::domain_error);
  EXPECT_THROW(push(1, Word{}, w), std::domain_error);
}

TEST(Store, HatWord) {
  EXPECT_EQ(render_hat_word(hat_word(parse(fixture::kOmega))), "A_1xA_2xA_3C_3x̄B_2xD_3C_3x̄x̄B_1xB_2xB_3D_3x̄x̄");
  EXPECT_TRUE(hat_word(Store(2)).empty());
}

TEST(Store, SerializeFormats) {
  const Store s = parse_store("A[] B[C[d e]]", 3);
  EXPECT_EQ(serialize(s), "A[] B[C[d e]]");
  EXPECT_EQ(serialize(s, {true, true}), "A B[C[d e]]");
  EXPECT_EQ(serialize_compact(s), "A[]B[C[de]]");
}

TEST(Store, ParseErrorsCarryOffsets) {
  EXPECT_THROW(parse_store("A[B", 2), StoreParseError);
  EXPECT_THROW(parse_store("A[B[c]]", 2), StoreParseError);
  try {
    parse_store("A]", 1);
    FAIL();
  } catch (const StoreParseError& e) {
    EXPECT_EQ(e.position(), 1u);
  }
}

TEST(Store, RandomRoundTrip) {
  gen::Rng r(7);
  const std::vector<Symbol> syms{"A", "B1", "c'", "d_2", "E"};
  for (int n = 0; n < 200; ++n) {
    const int level = r.uniform(1, 4);
    const Store s = gen::random_store(r, level, syms, 3);
    EXPECT_EQ(parse_store(serialize(s), level), s) << serialize(s);
    EXPECT_EQ(parse_store(serialize(s, {true, true}), level), s);
    const Alphabet a(Word(syms.begin(), syms.end()));
    EXPECT_EQ(parse_store(serialize_compact(s), level, &a), s);
  }
}

TEST(Graded, Verdicts) {
  const auto g = fixture::gamma3();
  const auto u = fixture::undeterminates3();
  EXPECT_TRUE(is_graded(parse("A_1[A_2[A_3Omega_3]B_2[D_3C_3]]Omega_1"), g, u));
  EXPECT_FALSE(is_graded(parse("A_1[A_1[A_3]]"), g, u));
  EXPECT_TRUE(is_graded(parse("A_2[A_3B_3Omega_3]Omega_2", 2), g, u));
  EXPECT_TRUE(is_graded(parse("A_3B_3Omega_3", 1), g, u));
  EXPECT_FALSE(is_graded(parse("A_1[Omega_2[A_3Omega_3]]"), g, u));
  EXPECT_FALSE(is_graded(parse("A_1[A_2[A_3Omega_2]]"), g, u));
  EXPECT_TRUE(is_graded(parse("A_1[A_2B_2]"), g, u));
}

TEST(Graded, ReportNamesViolation) {
  auto r = is_graded(parse("A_1[Omega_2[A_3Omega_3]]"), fixture::gamma3(), fixture::undeterminates3());
  EXPECT_NE(r.violation.find("Omega_2"), std::string::npos);
  EXPECT_FALSE(is_graded(parse_store("X_1", 1), fixture::gamma3()));
}

TEST(Graded, OverlappingLevelsRejected) { EXPECT_THROW(GradedAlphabet({Word{"a"}, Word{"a"}}), std::invalid_argument); }

Bindings example_bindings() {
  return {{"Omega_1", parse("B_1[B_2[Omega_3]]")},
          {"Omega_2", parse("C_2[A_3B_3Omega'_3]", 2)},
          {"Omega_3", parse("C_3C_3C_3Omega_3", 1)}};
}

TEST(Substitution, Term) {
  const Store t = parse("A_1[A_2[A_3Omega_3]B_2[D_3C_3]]Omega_1");
  EXPECT_EQ(serialize_compact(substitute(t, example_bindings())),
            "A_1[A_2[A_3C_3C_3C_3Omega_3]B_2[D_3C_3]]B_1[B_2[Omega_3]]");
}

TEST(Substitution, VariableWord) {
  const VariableWord w{{"p", parse("A_1[A_2[A_3Omega_3]B_2[D_3C_3]]Omega_1"), "q"}, {"q", parse("A_1[Omega_2]"), "p"}};
  EXPECT_EQ(to_string(substitute(w, example_bindings()), {false, false}),
            "(p,A_1[A_2[A_3C_3C_3C_3Omega_3]B_2[D_3C_3]]B_1[B_2[Omega_3]],q)(q,A_1[C_2[A_3B_3Omega'_3]],p)");
}

TEST(Substitution, EmptyBindingsKeepTerm) {
  const Store t = parse(fixture::kOmega);
  EXPECT_EQ(substitute(t, {}), t);
}

TEST(Substitution, LevelMismatchThrows) {
  const Store t = parse("A_1[Omega_2]");
  EXPECT_THROW(substitute(t, {{"Omega_2", parse("A_1")}}), std::domain_error);
}

}  // namespace
