#include <gtest/gtest.h>

#include "hot/constructions.hpp"
#include "hot/counting.hpp"
#include "hot/hot1.hpp"
#include "oracles.hpp"

using namespace hot;

namespace {

// A 2-tournament on n vertices with edge bits taken from `mask` in colex order.
Tournament tournament2_from_mask(std::uint32_t n, std::uint64_t mask) {
  TournamentBuilder b(2, n);
  for (std::uint64_t r = 0; r < b.num_signs(); ++r) b.set_sign_at(r, from_bit(mask >> r & 1));
  return b.seal();
}

// Edge u -> v in a builder.
void direct(TournamentBuilder& b, Vertex u, Vertex v) {
  if (u < v)
    b.set_sign({u, v}, Sign::plus);
  else
    b.set_sign({v, u}, Sign::minus);
}

}  // namespace

TEST(RandomTournament, DeterministicBytes) {
  EXPECT_EQ(hot1::encode(random_tournament(2, 4, Seed{9})), hot1::encode(random_tournament(2, 4, Seed{9})));
  EXPECT_NE(random_tournament(3, 20, Seed{1}), random_tournament(3, 20, Seed{2}));
  EXPECT_THROW(random_tournament(5, 4, Seed{0}), argument_error);
}

TEST(RandomTournament, SignsAreBalanced) {
  const Tournament t = random_tournament(4, 40, Seed{123});
  std::uint64_t plus = 0;
  for (std::uint64_t r = 0; r < t.num_signs(); ++r) plus += t.bit(r);
  const double frac = static_cast<double>(plus) / static_cast<double>(t.num_signs());
  EXPECT_NEAR(frac, 0.5, 0.01);  // 91390 bits, SE ~ 0.0017
}

TEST(Classify4Set, Examples) {
  TournamentBuilder b(2, 4);
  // t = 0, x,y,z = 1,2,3 with 1->2->3->1
  direct(b, 0, 1);
  direct(b, 0, 2);
  direct(b, 0, 3);
  direct(b, 1, 2);
  direct(b, 2, 3);
  direct(b, 3, 1);
  EXPECT_EQ(classify_4set(b.seal(), {0, 1, 2, 3}), FourSetType::TypeI);

  TournamentBuilder c(2, 4);
  direct(c, 1, 0);
  direct(c, 2, 0);
  direct(c, 3, 0);
  direct(c, 1, 2);
  direct(c, 2, 3);
  direct(c, 3, 1);
  EXPECT_EQ(classify_4set(c.seal(), {0, 1, 2, 3}), FourSetType::TypeII);

  const Tournament transitive = TournamentBuilder(2, 4).seal();
  EXPECT_EQ(classify_4set(transitive, {0, 1, 2, 3}), FourSetType::Other);
  EXPECT_THROW(classify_4set(transitive, {0, 1, 2}), argument_error);
  EXPECT_THROW(classify_4set(TournamentBuilder(3, 4).seal(), {0, 1, 2, 3}), argument_error);
}

TEST(Classify4Set, EightOfEachAmongAllSixtyFour) {
  int type1 = 0, type2 = 0;
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    const auto c = classify_4set(tournament2_from_mask(4, mask), {0, 1, 2, 3});
    type1 += c == FourSetType::TypeI;
    type2 += c == FourSetType::TypeII;
  }
  EXPECT_EQ(type1, 8);
  EXPECT_EQ(type2, 8);
}

TEST(MinorityInduce, TripleRules) {
  TournamentBuilder cyc(2, 3);
  direct(cyc, 0, 1);
  direct(cyc, 1, 2);
  direct(cyc, 2, 0);
  EXPECT_EQ(minority_induce_3(cyc.seal()).get_sign({0, 1, 2}), Sign::plus);

  TournamentBuilder tr(2, 3);
  direct(tr, 0, 1);
  direct(tr, 1, 2);
  direct(tr, 0, 2);
  EXPECT_EQ(minority_induce_3(tr.seal()).get_sign({0, 1, 2}), Sign::minus);

  EXPECT_THROW(minority_induce_3(TournamentBuilder(3, 4).seal()), argument_error);
}

// The rule is labeling-invariant: for every one of the 8 edge patterns on a
// triple, the induced cycle is the same read through any relabeling.
TEST(MinorityInduce, RuleCommutesWithRelabeling) {
  const std::vector<std::vector<Vertex>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    const Tournament t2 = tournament2_from_mask(3, mask);
    const Tournament t3 = minority_induce_3(t2);
    for (const auto& p : perms)
      ASSERT_EQ(minority_induce_3(t2.relabeled(p)), t3.relabeled(p)) << "mask " << mask;
  }
}

TEST(MinorityInduce, DirectedExactlyOnTypeIAndII) {
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    const Tournament t2 = tournament2_from_mask(4, mask);
    const bool directed = minority_induce_3(t2).is_directed_simplex({0, 1, 2, 3});
    EXPECT_EQ(directed, classify_4set(t2, {0, 1, 2, 3}) != FourSetType::Other) << "mask " << mask;
  }
}

TEST(MinorityInduce, CensusEqualsTypeCountExhaustiveOnFive) {
  for (std::uint64_t mask = 0; mask < (1u << 10); ++mask) {
    const Tournament t2 = tournament2_from_mask(5, mask);
    std::uint64_t types = 0;
    for (const auto& s : oracle::colex_enumeration(4, 5)) types += classify_4set(t2, KSubset(s)) != FourSetType::Other;
    ASSERT_EQ(count_directed(minority_induce_3(t2)).directed, types) << "mask " << mask;
  }
}

TEST(MinorityInduce, CensusEqualsTypeCountOnRandom) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Tournament t2 = random_tournament(2, 12, Seed{seed});
    std::uint64_t types = 0;
    for (const auto& s : oracle::colex_enumeration(4, 12)) types += classify_4set(t2, KSubset(s)) != FourSetType::Other;
    EXPECT_EQ(count_directed(minority_induce_3(t2)).directed, types);
  }
}

TEST(ProductTournament, BaseCase) {
  ProductSpec spec{2, 1, Sign::plus, Sign::plus};
  const Tournament t = product_tournament(spec);
  EXPECT_EQ(t.n(), 3u);
  // The single triangle is the reference simplex itself.
  EXPECT_TRUE(t.is_directed_simplex({0, 1, 2}));
  EXPECT_EQ(t.get_sign({1, 2}), Sign::plus);   // face without 0: base * (-1)^0
  EXPECT_EQ(t.get_sign({0, 2}), Sign::minus);  // face without 1
  EXPECT_EQ(t.get_sign({0, 1}), Sign::plus);
}

TEST(ProductTournament, SizeChecks) {
  EXPECT_EQ((ProductSpec{3, 3}).vertex_count(), 64u);
  EXPECT_THROW((ProductSpec{2, 40}).vertex_count(), size_error);
  EXPECT_THROW((ProductSpec{1, 2}).vertex_count(), argument_error);
}

TEST(ProductPredicate, HandExamples) {
  const ProductSpec spec{2, 2};
  // digit vectors (a1, a2) -> vertex 3*a1 + a2
  EXPECT_TRUE(product_directed_predicate(spec, KSubset{0, 4, 8}));      // (0,0),(1,1),(2,2)
  EXPECT_TRUE(product_directed_predicate(spec, KSubset{0, 4, 7}));      // (0,0),(1,1),(2,1)
  EXPECT_FALSE(product_directed_predicate(spec, KSubset{0, 1, 5}));     // (0,0),(0,1),(1,2)
  EXPECT_TRUE(product_directed_predicate(spec, KSubset{0, 1, 2}));      // (0,0),(0,1),(0,2)
  EXPECT_THROW(product_directed_predicate(spec, KSubset{0, 1}), argument_error);
}

TEST(ProductPredicate, MatchesGeneratedTournamentExhaustively) {
  struct Size {
    std::uint32_t d, m;
  };
  for (const Size sz : {Size{2, 1}, Size{2, 2}, Size{2, 3}, Size{3, 1}, Size{3, 2}}) {
    for (Sign base : {Sign::plus, Sign::minus})
      for (Sign tie : {Sign::plus, Sign::minus}) {
        const ProductSpec spec{sz.d, sz.m, base, tie};
        const Tournament t = product_tournament(spec);
        const DigitTable digits(spec);
        for (const auto& s : oracle::colex_enumeration(sz.d + 1, t.n()))
          ASSERT_EQ(product_directed_predicate(spec, digits, s), t.is_directed_simplex(KSubset(s)))
              << "d=" << sz.d << " m=" << sz.m << " simplex " << KSubset(s).str();
      }
  }
}

TEST(ProductTournament, DirectedFractionD2M5) {
  const Tournament t = product_tournament({2, 5});
  const double frac = to_double(count_directed(t).fraction());
  EXPECT_NEAR(frac, to_double(product_finite_fraction(2, 5)), 0.01);
}

// The d=3, m=3 census against an independent enumeration of the closed-form
// predicate: 1996/13237 ~ 0.1508 (the i.i.d. series at m=3 is 4491/32768 ~ 0.1371).
TEST(ProductTournament, CensusD3M3MatchesPredicateEnumeration) {
  const ProductSpec spec{3, 3};
  const DigitTable digits(spec);
  std::uint64_t predicted = 0;
  for (const auto& s : oracle::colex_enumeration(4, 64)) predicted += product_directed_predicate(spec, digits, s);
  const Census c = count_directed(product_tournament(spec));
  EXPECT_EQ(c.directed, predicted);
  EXPECT_EQ(c.directed, 95808u);
  EXPECT_EQ(c.total, 635376u);
}

TEST(ProductTournament, TiesNeverTouchDirectedCensus) {
  for (std::uint32_t d = 3; d <= 4; ++d) {
    const Census a = count_directed(product_tournament({d, 2, Sign::plus, Sign::plus}));
    const Census b = count_directed(product_tournament({d, 2, Sign::plus, Sign::minus}));
    EXPECT_EQ(a.directed, b.directed);
    EXPECT_GT(product_tied_sets({d, 2}), 0u);
  }
  EXPECT_EQ(product_tied_sets({2, 4}), 0u);
}

TEST(RotationalTournament, CyclicTriangleCounts) {
  EXPECT_EQ(count_directed(rotational_tournament(3)).directed, 1u);
  EXPECT_EQ(count_directed(rotational_tournament(5)).directed, 5u);
  EXPECT_EQ(count_directed(rotational_tournament(7)).directed, 14u);
  EXPECT_THROW(rotational_tournament(6), argument_error);
  EXPECT_THROW(rotational_tournament(1), argument_error);
}

TEST(RotationalTournament, IsRegular) {
  for (std::uint32_t n = 3; n <= 31; n += 2) {
    const Tournament t = rotational_tournament(n);
    for (Vertex u = 0; u < n; ++u) {
      std::uint32_t out = 0;
      for (Vertex v = 0; v < n; ++v)
        if (v != u) out += beats(t, u, v);
      ASSERT_EQ(out, (n - 1) / 2);
    }
  }
}
