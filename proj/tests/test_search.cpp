#include <gtest/gtest.h>

#include <filesystem>

#include "hot/constructions.hpp"
#include "hot/counting.hpp"
#include "hot/search.hpp"
#include "oracles.hpp"

using namespace hot;

namespace {

SearchSpec spec(std::uint32_t d, std::uint32_t n, SearchStrategy s = SearchStrategy::branch_and_bound,
                bool fix = true) {
  SearchSpec sp;
  sp.d = d;
  sp.n = n;
  sp.strategy = s;
  sp.fix_first_sign = fix;
  return sp;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hot_search_" + name);
}

}  // namespace

TEST(Search, DTwoMatchesExactFormula) {
  for (std::uint32_t n = 4; n <= 7; ++n) {
    const SearchOutcome o = search_max_directed(spec(2, n));
    EXPECT_TRUE(o.complete);
    EXPECT_EQ(BigInt(o.max_count), exact_formula_d2(n)) << n;
    EXPECT_EQ(count_directed(o.witness).directed, o.max_count);
  }
}

TEST(Search, DThreeAgainstBruteForce) {
  const std::uint64_t oracle5 = oracle::brute_force_max(3, 5);
  const std::uint64_t oracle6 = oracle::brute_force_max(3, 6);
  EXPECT_EQ(oracle5, 2u);
  EXPECT_EQ(oracle6, 6u);
  for (auto strategy : {SearchStrategy::exhaustive, SearchStrategy::branch_and_bound}) {
    EXPECT_EQ(search_max_directed(spec(3, 5, strategy)).max_count, oracle5);
    const SearchOutcome o6 = search_max_directed(spec(3, 6, strategy));
    EXPECT_EQ(o6.max_count, oracle6);
    EXPECT_LE(BigInt(o6.max_count), exact_upper_bound(3, 6));
  }
}

TEST(Search, StrategiesAgreeIncludingWitness) {
  struct Size {
    std::uint32_t d, n;
  };
  for (const Size s : {Size{2, 5}, Size{2, 6}, Size{3, 4}, Size{3, 5}, Size{3, 6}, Size{4, 6}}) {
    const SearchOutcome ex = search_max_directed(spec(s.d, s.n, SearchStrategy::exhaustive));
    const SearchOutcome bb = search_max_directed(spec(s.d, s.n, SearchStrategy::branch_and_bound));
    EXPECT_EQ(ex.max_count, bb.max_count);
    EXPECT_EQ(ex.witness, bb.witness);
    EXPECT_LE(bb.assignments_explored, ex.assignments_explored);
  }
}

TEST(Search, ExhaustiveCoversHalfTheSpace) {
  const SearchOutcome o = search_max_directed(spec(2, 6, SearchStrategy::exhaustive));
  EXPECT_EQ(o.assignments_explored, std::uint64_t{1} << 14);
  const SearchOutcome full = search_max_directed(spec(2, 5, SearchStrategy::exhaustive, false));
  EXPECT_EQ(full.assignments_explored, std::uint64_t{1} << 10);
}

TEST(Search, FixingFirstSignLosesNothing) {
  for (std::uint32_t n = 3; n <= 5; ++n) {
    const SearchOutcome fixed = search_max_directed(spec(2, n, SearchStrategy::exhaustive, true));
    const SearchOutcome free = search_max_directed(spec(2, n, SearchStrategy::exhaustive, false));
    EXPECT_EQ(fixed.max_count, free.max_count);
    EXPECT_EQ(fixed.witness, free.witness);
  }
}

TEST(Search, WitnessIsSmallestMaximizer) {
  // d=2, n=4: scan all 64 assignments in lexicographic order (rank 0 first).
  const SearchPlan plan(2, 4);
  std::uint64_t best = 0;
  std::optional<std::uint64_t> first;
  std::vector<std::uint64_t> order;
  for (std::uint64_t code = 0; code < 64; ++code) {
    std::uint64_t a = 0;  // bit r of the assignment is bit (5 - r) of code
    for (int r = 0; r < 6; ++r) a |= ((code >> (5 - r)) & 1) << r;
    const auto x = count_directed(plan.tournament(a)).directed.convert_to<std::uint64_t>();
    if (x > best) {
      best = x;
      first = a;
    }
  }
  const SearchOutcome o = search_max_directed(spec(2, 4));
  EXPECT_EQ(o.max_count, best);
  EXPECT_EQ(o.witness, plan.tournament(*first));
}

TEST(Search, ThreadCountDoesNotChangeResult) {
  for (auto strategy : {SearchStrategy::exhaustive, SearchStrategy::branch_and_bound}) {
    const SearchOutcome one = search_max_directed(spec(3, 6, strategy));
    for (unsigned k : {2u, 4u}) {
      SearchControl c;
      c.threads = k;
      const SearchOutcome many = search_max_directed(spec(3, 6, strategy), c);
      EXPECT_EQ(many.max_count, one.max_count);
      EXPECT_EQ(many.witness, one.witness);
    }
  }
}

TEST(Search, RefusesOversizedSpace) {
  EXPECT_THROW(search_max_directed(spec(3, 8)), size_error);  // C(8,3) = 56 > 40
}

TEST(AdmissibleBound, EmptyAndFullPrefix) {
  const SearchPlan plan(3, 6);
  EXPECT_EQ(admissible_bound(plan, 0, 0), binomial(6, 4));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Tournament t = random_tournament(3, 6, Seed{seed});
    const std::uint64_t a = t.words()[0];
    EXPECT_EQ(BigInt(admissible_bound(plan, a, plan.sign_bits())), count_directed(t).directed);
  }
}

TEST(AdmissibleBound, NeverBelowBestCompletion) {
  const SearchPlan plan(2, 5);
  const std::uint64_t bits = plan.sign_bits();
  for (std::uint64_t len = 0; len <= bits; len += 3) {
    for (std::uint64_t prefix = 0; prefix < (std::uint64_t{1} << len); prefix += 5) {
      std::uint64_t best = 0;
      for (std::uint64_t rest = 0; rest < (std::uint64_t{1} << (bits - len)); ++rest) {
        const std::uint64_t a = prefix | (rest << len);
        best = std::max(best, admissible_bound(plan, a, bits));
      }
      ASSERT_GE(admissible_bound(plan, prefix, len), best);
    }
  }
}

TEST(Checkpoint, InterruptAndResumeMatchesUninterrupted) {
  const auto path = temp_file("resume.hots");
  for (auto strategy : {SearchStrategy::exhaustive, SearchStrategy::branch_and_bound}) {
    const SearchOutcome straight = search_max_directed(spec(2, 7, strategy));
    SearchControl c;
    c.checkpoint_path = path;
    // about half of the 2^20 exhaustive leaves; pruning visits far fewer, so stop after the first batch
    c.stop_after = strategy == SearchStrategy::exhaustive ? std::uint64_t{1} << 19 : 1;
    const SearchOutcome partial = search_max_directed(spec(2, 7, strategy), c);
    EXPECT_FALSE(partial.complete);
    EXPECT_LT(partial.shards_done, partial.shards_total);
    const SearchCheckpoint saved = load_checkpoint(path);
    EXPECT_FALSE(saved.complete());

    SearchControl resume;
    resume.checkpoint_path = path;
    const SearchOutcome finished = search_max_directed(spec(2, 7, strategy), resume, saved);
    EXPECT_TRUE(finished.complete);
    EXPECT_EQ(finished.max_count, straight.max_count);
    EXPECT_EQ(finished.witness, straight.witness);
    if (strategy == SearchStrategy::exhaustive) {
      EXPECT_EQ(finished.assignments_explored, straight.assignments_explored);
    }

    // resuming a finished checkpoint returns immediately
    const SearchOutcome again = search_max_directed(spec(2, 7, strategy), {}, load_checkpoint(path));
    EXPECT_TRUE(again.complete);
    EXPECT_EQ(again.max_count, straight.max_count);
    EXPECT_EQ(again.assignments_explored, finished.assignments_explored);
  }
  std::filesystem::remove(path);
}

TEST(Checkpoint, PeriodicWrites) {
  const auto path = temp_file("periodic.hots");
  SearchSpec s = spec(2, 6, SearchStrategy::exhaustive);
  s.checkpoint_interval = 1000;
  SearchControl c;
  c.checkpoint_path = path;
  const SearchOutcome o = search_max_directed(s, c);
  const SearchCheckpoint saved = load_checkpoint(path);
  EXPECT_TRUE(saved.complete());
  EXPECT_EQ(static_cast<std::uint64_t>(saved.incumbent), o.max_count);
  std::filesystem::remove(path);
}

TEST(Checkpoint, RejectsCorruptOrMismatched) {
  SearchCheckpoint c;
  c.d = 2;
  c.n = 5;
  c.shard_bits = 8;
  c.total_shards = 256;
  c.next_shard = 10;
  c.incumbent = 3;
  c.witness = 0x155;
  auto bytes = encode_checkpoint(c);
  const SearchCheckpoint back = decode_checkpoint(bytes);
  EXPECT_EQ(back.incumbent, 3);
  EXPECT_EQ(back.witness, 0x155u);
  EXPECT_EQ(back.next_shard, 10u);

  auto bad_magic = bytes;
  bad_magic[1] = 'X';
  EXPECT_THROW(decode_checkpoint(bad_magic), format_error);
  auto bad_version = bytes;
  bad_version[4] = 9;
  EXPECT_THROW(decode_checkpoint(bad_version), format_error);
  auto truncated = bytes;
  truncated.resize(truncated.size() - 3);
  EXPECT_THROW(decode_checkpoint(truncated), format_error);
  // a checkpoint for another (d, n) cannot resume this search
  EXPECT_THROW(search_max_directed(spec(2, 6, SearchStrategy::exhaustive), {}, back), format_error);
}
