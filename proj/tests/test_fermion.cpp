#include "compact/fermion.hpp"

#include <gtest/gtest.h>

using namespace compact;

TEST(Fermion, ApplyStringSignsFollowOccupationsBelow) {
  // a_2^+ on |011> (orbitals 0 and 1 occupied): two occupied below, sign +1.
  const Ladder create2[] = {{2, true}};
  auto r = apply_string(create2, 0b011);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->det, 0b111u);
  EXPECT_EQ(r->sign, 1);
  // a_1^+ on |101>: one occupied below, sign -1.
  const Ladder create1[] = {{1, true}};
  r = apply_string(create1, 0b101);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->sign, -1);
  // Pauli exclusion.
  EXPECT_FALSE(apply_string(create1, 0b010));
  const Ladder destroy0[] = {{0, false}};
  EXPECT_FALSE(apply_string(destroy0, 0b110));
}

TEST(Fermion, ExcitationStringOrder) {
  const std::vector<int> c{4, 5}, d{0, 1};
  const auto ops = excitation_string(c, d);
  ASSERT_EQ(ops.size(), 4u);
  EXPECT_EQ(ops[0], (Ladder{4, true}));
  EXPECT_EQ(ops[1], (Ladder{5, true}));
  EXPECT_EQ(ops[2], (Ladder{1, false}));
  EXPECT_EQ(ops[3], (Ladder{0, false}));
}

TEST(Fermion, ExciteThenDeexciteRestoresReference) {
  const Determinant ref = 0b000111;
  const std::vector<int> c{3, 5}, d{0, 2};
  const auto up = excite(ref, c, d);
  ASSERT_TRUE(up);
  const auto down = apply_string(FermionOperator::string(excitation_string(c, d)).adjoint().terms().begin()->first, up->det);
  ASSERT_TRUE(down);
  EXPECT_EQ(down->det, ref);
  EXPECT_EQ(up->sign * down->sign, 1);
}

TEST(Fermion, CanonicalAnticommutators) {
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      const auto ap = FermionOperator::string({{p, false}});
      const auto aqd = FermionOperator::string({{q, true}});
      const auto anti = (ap * aqd + aqd * ap).normal_ordered();
      if (p == q) {
        ASSERT_EQ(anti.terms().size(), 1u);
        EXPECT_TRUE(anti.terms().begin()->first.empty());
        EXPECT_DOUBLE_EQ(anti.terms().begin()->second, 1.0);
      } else {
        EXPECT_TRUE(anti.is_zero());
      }
      const auto apq = FermionOperator::string({{p, false}}) * FermionOperator::string({{q, false}});
      const auto aqp = FermionOperator::string({{q, false}}) * FermionOperator::string({{p, false}});
      EXPECT_TRUE((apq + aqp).is_zero());
    }
  }
}

TEST(Fermion, AntihermitianGeneratorIsAntiHermitian) {
  const std::vector<int> c{4, 7}, d{1, 2};
  const auto k = FermionOperator::antihermitian(c, d);
  EXPECT_TRUE((k + k.adjoint()).is_zero());
  EXPECT_FALSE(k.is_zero());
}

TEST(Fermion, CommutatorOfDisjointDoublesVanishes) {
  const auto t1 = FermionOperator::antihermitian(std::vector<int>{4, 5}, std::vector<int>{0, 1});
  const auto t2 = FermionOperator::antihermitian(std::vector<int>{6, 7}, std::vector<int>{2, 3});
  EXPECT_TRUE(commutator(t1, t2).is_zero());
}
