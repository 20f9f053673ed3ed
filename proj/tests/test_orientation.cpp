#include <gtest/gtest.h>

#include "hot/orientation.hpp"
#include "hot/counting.hpp"
#include "oracles.hpp"

using namespace hot;

TEST(InducedFaceSign, EdgeAssignsPlusToHead) {
  const OrientedSet edge{{0, 1}, Sign::plus};  // 0 -> 1
  EXPECT_EQ(induced_face_sign(edge, 1), (OrientedSet{{0}, Sign::minus}));
  EXPECT_EQ(induced_face_sign(edge, 0), (OrientedSet{{1}, Sign::plus}));
}

TEST(InducedFaceSign, PlusTripleIsTheCycle012) {
  const OrientedSet tri{{0, 1, 2}, Sign::plus};
  EXPECT_EQ(induced_face_sign(tri, 0), (OrientedSet{{1, 2}, Sign::plus}));   // 1 -> 2
  EXPECT_EQ(induced_face_sign(tri, 1), (OrientedSet{{0, 2}, Sign::minus}));  // 2 -> 0
  EXPECT_EQ(induced_face_sign(tri, 2), (OrientedSet{{0, 1}, Sign::plus}));   // 0 -> 1
}

TEST(InducedFaceSign, AlternatesOnFourSet) {
  for (Sign s : {Sign::plus, Sign::minus}) {
    const OrientedSet four{{0, 1, 2, 3}, s};
    EXPECT_EQ(induced_face_sign(four, 0).sign, s);
    EXPECT_EQ(induced_face_sign(four, 1).sign, -s);
    EXPECT_EQ(induced_face_sign(four, 2).sign, s);
    EXPECT_EQ(induced_face_sign(four, 3).sign, -s);
  }
}

TEST(InducedFaceSign, RejectsSingleton) {
  EXPECT_THROW(induced_face_sign(OrientedSet{{4}, Sign::plus}, 0), argument_error);
}

// Dropping vertices i < j in either order must reach the shared (k-2)-set
// with opposite signs: the faces of any oriented set are compatible.
TEST(InducedFaceSign, TwoStepPathsDisagree) {
  for (std::size_t k = 3; k <= 9; ++k) {
    std::vector<Vertex> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = static_cast<Vertex>(3 * i + 1);
    for (Sign s : {Sign::plus, Sign::minus}) {
      const OrientedSet set{KSubset(v), s};
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
          const OrientedSet via_i = induced_face_sign(induced_face_sign(set, i), j - 1);
          const OrientedSet via_j = induced_face_sign(induced_face_sign(set, j), i);
          ASSERT_EQ(via_i.subset, via_j.subset);
          ASSERT_EQ(via_i.sign, -via_j.sign);
          ASSERT_TRUE(compatible(induced_face_sign(set, i), induced_face_sign(set, j)));
        }
    }
  }
}

TEST(Compatible, Examples) {
  EXPECT_TRUE(compatible({{0, 1}, Sign::plus}, {{1, 2}, Sign::plus}));
  EXPECT_FALSE(compatible({{0, 1}, Sign::plus}, {{0, 2}, Sign::plus}));
  // d = 3: {0,1,2}+ induces + on {0,1} (drop index 2); {0,1,3}- induces - (drop index 2)
  EXPECT_TRUE(compatible({{0, 1, 2}, Sign::plus}, {{0, 1, 3}, Sign::minus}));
  EXPECT_FALSE(compatible({{0, 1, 2}, Sign::plus}, {{0, 1, 3}, Sign::plus}));
}

TEST(Compatible, RejectsBadIntersection) {
  EXPECT_THROW(compatible({{0, 1, 2}, Sign::plus}, {{0, 3, 4}, Sign::plus}), argument_error);
  EXPECT_THROW(compatible({{0, 1}, Sign::plus}, {{0, 1}, Sign::minus}), argument_error);
  EXPECT_THROW(compatible({{0, 1}, Sign::plus}, {{0, 1, 2}, Sign::minus}), argument_error);
}

TEST(IsDirected, FourFacePatterns) {
  EXPECT_TRUE(is_directed({Sign::plus, Sign::minus, Sign::plus, Sign::minus}));
  EXPECT_TRUE(is_directed({Sign::minus, Sign::plus, Sign::minus, Sign::plus}));
  EXPECT_FALSE(is_directed({Sign::plus, Sign::plus, Sign::plus, Sign::plus}));
}

// Reading face signs through the triangle notation: +1 on {x<y<z} is the
// cycle xyz, -1 is xzy. For {a,b,c,d} = {0,1,2,3}.
TEST(IsDirected, TetrahedronPatternsMatchCyclicNotation) {
  auto cycle = [](const KSubset& f, Sign s) {
    return s == Sign::plus ? std::vector<Vertex>{f[0], f[1], f[2]} : std::vector<Vertex>{f[0], f[2], f[1]};
  };
  const KSubset abcd{0, 1, 2, 3};
  // (+,-,+,-): bcd, adc, abd, acb
  const SimplexFaceSigns second{Sign::plus, Sign::minus, Sign::plus, Sign::minus};
  EXPECT_EQ(cycle(abcd.without(0), second[0]), (std::vector<Vertex>{1, 2, 3}));
  EXPECT_EQ(cycle(abcd.without(1), second[1]), (std::vector<Vertex>{0, 3, 2}));
  EXPECT_EQ(cycle(abcd.without(2), second[2]), (std::vector<Vertex>{0, 1, 3}));
  EXPECT_EQ(cycle(abcd.without(3), second[3]), (std::vector<Vertex>{0, 2, 1}));
  // (-,+,-,+): bdc, acd, adb, abc
  const SimplexFaceSigns first{Sign::minus, Sign::plus, Sign::minus, Sign::plus};
  EXPECT_EQ(cycle(abcd.without(0), first[0]), (std::vector<Vertex>{1, 3, 2}));
  EXPECT_EQ(cycle(abcd.without(1), first[1]), (std::vector<Vertex>{0, 2, 3}));
  EXPECT_EQ(cycle(abcd.without(2), first[2]), (std::vector<Vertex>{0, 3, 1}));
  EXPECT_EQ(cycle(abcd.without(3), first[3]), (std::vector<Vertex>{0, 1, 2}));
}

TEST(CompatiblePairs, Examples) {
  EXPECT_EQ(compatible_pairs({Sign::plus, Sign::minus, Sign::plus, Sign::minus}), 6u);
  EXPECT_EQ(compatible_pairs({Sign::plus, Sign::plus, Sign::plus, Sign::plus}), 2u);
  for (std::uint64_t m = 0; m < 8; ++m) {
    const auto c = compatible_pairs(SimplexFaceSigns(m, 3));
    EXPECT_TRUE(c == 1 || c == 3);
  }
}

// Closed form C(p,2)+C(q,2) against compatible() on all face pairs, for
// every pattern with d in [2, 8].
TEST(CompatiblePairs, ClosedFormMatchesPairwiseDefinition) {
  for (std::uint32_t d = 2; d <= 8; ++d) {
    const std::size_t k = d + 1;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      const auto faces = oracle::pattern(mask, k);
      const std::uint64_t brute = oracle::pairwise_compatible_count(faces);
      const SimplexFaceSigns f(faces);
      ASSERT_EQ(compatible_pairs(f), brute) << "d=" << d << " mask=" << mask;
      ASSERT_EQ(is_directed(f), brute == face_pairs(d)) << "d=" << d << " mask=" << mask;
    }
  }
}

TEST(CompatiblePairs, MinimumAndMaximumPerOrder) {
  for (std::uint32_t d = 2; d <= 8; ++d) {
    const std::size_t k = d + 1;
    std::uint64_t lo = UINT64_MAX, hi = 0, at_max = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      const auto c = compatible_pairs(SimplexFaceSigns(mask, k));
      lo = std::min(lo, c);
      hi = std::max(hi, c);
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask)
      at_max += compatible_pairs(SimplexFaceSigns(mask, k)) == hi;
    EXPECT_EQ(lo, s_of_d(d));
    EXPECT_EQ(hi, face_pairs(d));
    EXPECT_EQ(at_max, 2u);
  }
}

TEST(Sign, Algebra) {
  EXPECT_EQ(-(-Sign::plus), Sign::plus);
  EXPECT_EQ(Sign::minus * Sign::minus, Sign::plus);
  EXPECT_EQ(permutation_sign(std::vector<int>{0, 2, 1}), Sign::minus);
  EXPECT_EQ(permutation_sign(std::vector<int>{2, 0, 1}), Sign::plus);
}
