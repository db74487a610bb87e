#include <gtest/gtest.h>

#include <vector>

#include <woldgraph/index.hpp>

using namespace wold;

namespace {

std::vector<ExtNat> grid_values() { return {0, 1, 2, 3, INF}; }

std::vector<StarIndex> grid() {
  std::vector<StarIndex> out;
  for (auto a : grid_values())
    for (auto b : grid_values())
      for (auto c : grid_values())
        for (auto d : grid_values()) out.push_back({a, b, c, d});
  return out;
}

}  // namespace

TEST(ExtNat, OrderPutsInfAboveEveryFiniteValue) {
  EXPECT_LT(ExtNat(0), ExtNat(1));
  EXPECT_LT(ExtNat(1'000'000'000'000ULL), INF);
  EXPECT_EQ(INF, ExtNat::inf());
  EXPECT_FALSE(INF < INF);
}

TEST(ExtNat, ParseAcceptsDecimalAndInf) {
  EXPECT_EQ(ExtNat::parse("17"), ExtNat(17));
  EXPECT_EQ(ExtNat::parse("INF"), INF);
  EXPECT_THROW(ExtNat::parse("-1"), std::invalid_argument);
  EXPECT_THROW(ExtNat::parse("1.5"), std::invalid_argument);
  EXPECT_THROW(ExtNat::parse("99999999999999999999999"), std::out_of_range);
}

TEST(ExtNat, AbsDiffExamples) {
  EXPECT_EQ(extnat_absdiff(INF, INF), ExtNat(0));
  EXPECT_EQ(extnat_absdiff(5, 3), ExtNat(2));
  EXPECT_EQ(extnat_absdiff(INF, 3), INF);
  EXPECT_EQ(extnat_absdiff(3, INF), INF);
}

TEST(ExtNat, AbsDiffIsCommutativeAndVanishesOnDiagonal) {
  for (auto a : grid_values()) {
    EXPECT_EQ(extnat_absdiff(a, a), ExtNat(0));
    for (auto b : grid_values()) EXPECT_EQ(extnat_absdiff(a, b), extnat_absdiff(b, a));
  }
}

TEST(IndexSubtract, Examples) {
  const StarIndex n{7, INF, 1, INF};
  EXPECT_EQ(index_subtract(n, n), (StarIndex{0, 0, 0, 0}));
  EXPECT_EQ(index_subtract({0, 0, 3, 0}, {0, 0, 5, 0}), (StarIndex{0, 0, 2, 0}));
  EXPECT_EQ(index_subtract({0, 2, INF, 0}, {0, 2, INF, 0}), (StarIndex{0, 0, 0, 0}));
}

TEST(IndexSubtract, IsSymmetricOnGrid) {
  const auto g = grid();
  for (const auto& a : g)
    for (const auto& b : g) ASSERT_EQ(index_subtract(a, b), index_subtract(b, a));
}

TEST(StarEquivalent, Examples) {
  EXPECT_TRUE(star_equivalent({0, 0, 3, 0}, {0, 0, 5, 0}, true));
  EXPECT_FALSE(star_equivalent({0, 0, INF, 0}, {0, 0, 3, 0}, true));
  EXPECT_TRUE(star_equivalent({4, 1, 2, 0}, {4, 1, 2, 0}, true));
}

TEST(StarEquivalent, RequiresEqualSpectra) { EXPECT_FALSE(star_equivalent({1, 0, 0, 0}, {1, 0, 0, 0}, false)); }

TEST(StarEquivalent, UnitaryPartOnOneSideOnlyIsNotEquivalent) {
  EXPECT_FALSE(star_equivalent({0, 0, 3, 0}, {2, 0, 3, 0}, true));
  EXPECT_FALSE(star_equivalent({0, 0, 3, 0}, {INF, 0, 3, 0}, true));
}

TEST(StarEquivalent, ShiftPartOnOneSideOnlyIsNotEquivalent) {
  EXPECT_FALSE(star_equivalent({0, 0, 0, 0}, {0, 0, 3, 0}, true));
  EXPECT_FALSE(star_equivalent({2, 0, 0, 0}, {2, 0, 1, 0}, true));
}

TEST(StarEquivalent, FiniteDefectDifferenceIsAllowedInEpsPlus) {
  EXPECT_TRUE(star_equivalent({0, 1, 3, 0}, {0, 3, 1, 0}, true));
  EXPECT_FALSE(star_equivalent({0, INF, 3, 0}, {0, 3, 3, 0}, true));
  EXPECT_FALSE(star_equivalent({0, 0, 3, 1}, {0, 0, 3, 2}, true));
}

TEST(StarEquivalent, IsAnEquivalenceRelationOnGrid) {
  const auto g = grid();
  for (const auto& a : g) ASSERT_TRUE(star_equivalent(a, a, true)) << a;
  for (const auto& a : g)
    for (const auto& b : g) ASSERT_EQ(star_equivalent(a, b, true), star_equivalent(b, a, true)) << a << " " << b;
  for (const auto& a : g)
    for (const auto& b : g) {
      if (!star_equivalent(a, b, true)) continue;
      for (const auto& c : g)
        if (star_equivalent(b, c, true)) ASSERT_TRUE(star_equivalent(a, c, true)) << a << " " << b << " " << c;
    }
}

TEST(ClassifySingle, PureCases) {
  const auto c = AlgebraExpr::tensor(AlgebraExpr::scalar_unit(), AlgebraExpr::continuous_functions("spec"));
  EXPECT_EQ(classify_single({2, 5, 0, 1}, "spec"), c);
  EXPECT_EQ(classify_single({0, 5, 3, 1}, "spec"), AlgebraExpr::toeplitz());
  EXPECT_EQ(classify_single({0, 5, INF, 1}, "spec"),
            AlgebraExpr::tensor(AlgebraExpr::scalar_unit(), AlgebraExpr::matrix_alg(2)));
}

TEST(ClassifySingle, MixedIndexIsDirectSum) {
  const auto got = classify_single({7, INF, 1, INF}, "T");
  const auto want = normalize(AlgebraExpr::direct_sum(
      {AlgebraExpr::tensor(AlgebraExpr::scalar_unit(), AlgebraExpr::continuous_functions("T")), AlgebraExpr::toeplitz()}));
  EXPECT_EQ(got, want);
  EXPECT_EQ(got.kind(), AlgebraExpr::Kind::DirectSum);
  EXPECT_EQ(got.pretty(), "(ScalarUnit ⊗ C(T)) ⊕ Toeplitz");
}

TEST(ClassifySingle, DependsOnlyOnUnitaryPresenceAndShiftClass) {
  auto shift_class = [](ExtNat e) { return e.is_zero() ? 0 : (e.is_inf() ? 2 : 1); };
  const auto g = grid();
  for (const auto& a : g)
    for (const auto& b : g) {
      const bool same_class = shift_class(a.eps_minus) == shift_class(b.eps_minus) &&
                              (a.eps_minus.is_zero() || a.eps0.is_zero() == b.eps0.is_zero());
      ASSERT_EQ(classify_single(a, "s") == classify_single(b, "s"), same_class) << a << " " << b;
    }
}

TEST(ClassifySingle, AgreesOnStarEquivalentIndices) {
  const auto g = grid();
  for (const auto& a : g)
    for (const auto& b : g)
      if (star_equivalent(a, b, true)) ASSERT_EQ(classify_single(a, "s"), classify_single(b, "s")) << a << " " << b;
}
