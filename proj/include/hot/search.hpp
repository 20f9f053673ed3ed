#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hot/errors.hpp"
#include "hot/hot1.hpp"
#include "hot/orientation.hpp"
#include "hot/parallel.hpp"
#include "hot/subset.hpp"
#include "hot/tournament.hpp"

namespace hot {

enum class SearchStrategy : std::uint8_t { exhaustive = 0, branch_and_bound = 1 };

inline const char* to_string(SearchStrategy s) {
  return s == SearchStrategy::exhaustive ? "exhaustive" : "branch_and_bound";
}

inline constexpr std::uint64_t max_search_signs = 40;

struct SearchSpec {
  std::uint32_t d = 2;
  std::uint32_t n = 4;
  SearchStrategy strategy = SearchStrategy::branch_and_bound;
  bool fix_first_sign = true;
  // Complete assignments between checkpoint writes; 0 writes only on
  // interruption and completion.
  std::uint64_t checkpoint_interval = 0;
};

struct SearchControl {
  unsigned threads = 1;
  // Interrupt once this many complete assignments have been evaluated in this
  // call (checked between shard batches).
  std::uint64_t stop_after = UINT64_MAX;
  std::optional<std::filesystem::path> checkpoint_path;
};

struct SearchOutcome {
  std::uint64_t max_count = 0;
  Tournament witness;
  std::uint64_t assignments_explored = 0;
  bool complete = false;
  std::uint64_t shards_done = 0;
  std::uint64_t shards_total = 0;
};

/// Precomputed simplex/face incidence for one (d, n). Sign bits are assigned
/// in colex order; a simplex is complete once its largest face (the one
/// without its smallest vertex) has been assigned.
class SearchPlan {
 public:
  SearchPlan(std::uint32_t d, std::uint32_t n) : d_(d), n_(n) {
    Tournament::check_shape(d, n);
    bits_ = binomial(n, d);
    if (bits_ > max_search_signs)
      throw size_error("search space 2^" + std::to_string(bits_) + " exceeds 2^" +
                       std::to_string(max_search_signs) + " (C(" + std::to_string(n) + "," +
                       std::to_string(d) + ") = " + std::to_string(bits_) + " sign bits)");
    simplices_ = binomial(n, d + 1);
    completes_begin_.assign(bits_ + 1, 0);
    // Bucket simplices by the rank of their completing face.
    std::vector<std::vector<std::uint64_t>> bucket(bits_);
    if (n >= d + 1) {
      std::vector<Vertex> s(d + 1);
      for (std::uint32_t i = 0; i <= d; ++i) s[i] = i;
      do {
        std::vector<std::uint64_t> ranks(d + 1);
        for (std::uint32_t i = 0; i <= d; ++i) {
          std::vector<Vertex> face;
          for (std::uint32_t j = 0; j <= d; ++j)
            if (j != i) face.push_back(s[j]);
          ranks[i] = colex_rank(face);
        }
        auto& b = bucket[ranks[0]];
        b.insert(b.end(), ranks.begin(), ranks.end());
      } while (next_colex(s, n));
    }
    for (std::uint64_t r = 0; r < bits_; ++r) {
      completes_begin_[r] = face_ranks_.size();
      face_ranks_.insert(face_ranks_.end(), bucket[r].begin(), bucket[r].end());
    }
    completes_begin_[bits_] = face_ranks_.size();
  }

  std::uint32_t d() const { return d_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t sign_bits() const { return bits_; }
  std::uint64_t simplices() const { return simplices_; }

  /// Simplices completed when bit `rank` is assigned.
  std::uint64_t completed_at(std::uint64_t rank) const {
    return (completes_begin_[rank + 1] - completes_begin_[rank]) / (d_ + 1);
  }

  /// Directed simplices among those completed at `rank`, under `assignment`.
  std::uint64_t directed_at(std::uint64_t rank, std::uint64_t assignment) const {
    const std::size_t k = d_ + 1;
    std::uint64_t hits = 0;
    for (std::size_t e = completes_begin_[rank]; e < completes_begin_[rank + 1]; e += k) {
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < k; ++i) mask |= ((assignment >> face_ranks_[e + i]) & 1) << i;
      hits += is_directed_mask(mask, k);
    }
    return hits;
  }

  Tournament tournament(std::uint64_t assignment) const {
    return Tournament::from_words(d_, n_, {bits_ == 64 ? assignment : assignment & ((std::uint64_t{1} << bits_) - 1)});
  }

 private:
  std::uint32_t d_;
  std::uint32_t n_;
  std::uint64_t bits_ = 0;
  std::uint64_t simplices_ = 0;
  std::vector<std::size_t> completes_begin_;
  std::vector<std::uint64_t> face_ranks_;
};

/// Optimistic value of a partial assignment fixing ranks [0, prefix_len):
/// exact directed count among complete simplices plus every incomplete one.
inline std::uint64_t admissible_bound(const SearchPlan& plan, std::uint64_t prefix, std::uint64_t prefix_len) {
  if (prefix_len > plan.sign_bits()) throw range_error("prefix longer than the sign array");
  std::uint64_t fixed = 0, completed = 0;
  for (std::uint64_t r = 0; r < prefix_len; ++r) {
    fixed += plan.directed_at(r, prefix);
    completed += plan.completed_at(r);
  }
  return fixed + (plan.simplices() - completed);
}

// ---- checkpoints -------------------------------------------------------------

struct SearchCheckpoint {
  static constexpr std::uint32_t version = 1;

  std::uint32_t d = 0;
  std::uint32_t n = 0;
  SearchStrategy strategy = SearchStrategy::exhaustive;
  bool fix_first_sign = true;
  std::uint8_t shard_bits = 0;
  std::uint64_t next_shard = 0;
  std::uint64_t total_shards = 0;
  std::int64_t incumbent = -1;  // -1 until a complete assignment was seen
  std::uint64_t witness = 0;
  std::uint64_t explored = 0;

  bool complete() const { return next_shard >= total_shards; }
};

namespace detail {

inline void put_le(std::vector<std::uint8_t>& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline std::uint64_t get_le(std::span<const std::uint8_t> in, std::size_t& pos, int bytes) {
  if (pos + static_cast<std::size_t>(bytes) > in.size()) throw format_error("HOTS checkpoint truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t{in[pos + i]} << (8 * i);
  pos += static_cast<std::size_t>(bytes);
  return v;
}

}  // namespace detail

/// "HOTS" | u32 version | u8 d | u32 n | u8 strategy | u8 fix_first | u8 shard_bits |
/// u64 next_shard | u64 total_shards | i64 incumbent | u64 explored |
/// u32 witness length | witness as a HOT1 file (empty when incumbent = -1)
inline std::vector<std::uint8_t> encode_checkpoint(const SearchCheckpoint& c) {
  std::vector<std::uint8_t> out{'H', 'O', 'T', 'S'};
  detail::put_le(out, SearchCheckpoint::version, 4);
  detail::put_le(out, c.d, 1);
  detail::put_le(out, c.n, 4);
  detail::put_le(out, static_cast<std::uint8_t>(c.strategy), 1);
  detail::put_le(out, c.fix_first_sign, 1);
  detail::put_le(out, c.shard_bits, 1);
  detail::put_le(out, c.next_shard, 8);
  detail::put_le(out, c.total_shards, 8);
  detail::put_le(out, static_cast<std::uint64_t>(c.incumbent), 8);
  detail::put_le(out, c.explored, 8);
  std::vector<std::uint8_t> witness;
  if (c.incumbent >= 0) witness = hot1::encode(SearchPlan(c.d, c.n).tournament(c.witness));
  detail::put_le(out, witness.size(), 4);
  out.insert(out.end(), witness.begin(), witness.end());
  return out;
}

inline SearchCheckpoint decode_checkpoint(std::span<const std::uint8_t> in) {
  if (in.size() < 4 || std::memcmp(in.data(), "HOTS", 4) != 0) throw format_error("HOTS checkpoint: bad magic");
  std::size_t pos = 4;
  const auto version = detail::get_le(in, pos, 4);
  if (version != SearchCheckpoint::version)
    throw format_error("HOTS checkpoint: unsupported version " + std::to_string(version));
  SearchCheckpoint c;
  c.d = static_cast<std::uint32_t>(detail::get_le(in, pos, 1));
  c.n = static_cast<std::uint32_t>(detail::get_le(in, pos, 4));
  const auto strategy = detail::get_le(in, pos, 1);
  if (strategy > 1) throw format_error("HOTS checkpoint: unknown strategy");
  c.strategy = static_cast<SearchStrategy>(strategy);
  c.fix_first_sign = detail::get_le(in, pos, 1) != 0;
  c.shard_bits = static_cast<std::uint8_t>(detail::get_le(in, pos, 1));
  c.next_shard = detail::get_le(in, pos, 8);
  c.total_shards = detail::get_le(in, pos, 8);
  c.incumbent = static_cast<std::int64_t>(detail::get_le(in, pos, 8));
  c.explored = detail::get_le(in, pos, 8);
  const auto wlen = detail::get_le(in, pos, 4);
  if (pos + wlen != in.size()) throw format_error("HOTS checkpoint: length mismatch");
  if (c.next_shard > c.total_shards) throw format_error("HOTS checkpoint: frontier past the end");
  if (c.incumbent >= 0) {
    Tournament w;
    try {
      w = hot1::decode(in.subspan(pos, wlen));
    } catch (const std::exception& e) {
      throw format_error(std::string("HOTS checkpoint: bad witness: ") + e.what());
    }
    if (w.d() != c.d || w.n() != c.n || w.words().size() != 1)
      throw format_error("HOTS checkpoint: witness shape mismatch");
    c.witness = w.words()[0];
  } else if (wlen != 0) {
    throw format_error("HOTS checkpoint: witness without incumbent");
  }
  return c;
}

inline void save_checkpoint(const std::filesystem::path& path, const SearchCheckpoint& c) {
  hot1::write_bytes_atomic(path, encode_checkpoint(c));
}

inline SearchCheckpoint load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(hot1::read_bytes(path));
}

// ---- the search ------------------------------------------------------------

namespace detail {

inline constexpr std::uint32_t default_shard_bits = 8;

struct ShardResult {
  std::int64_t best = -1;
  std::uint64_t witness = 0;
  std::uint64_t leaves = 0;
};

// Depth-first search over one shard, 0 before 1 at every rank, so the first
// strictly-better leaf found is the lexicographically smallest maximizer.
class ShardSearch {
 public:
  ShardSearch(const SearchPlan& plan, bool prune, std::int64_t committed, std::atomic<std::int64_t>& shared)
      : plan_(plan), prune_(prune), committed_(committed), shared_(shared) {
    suffix_incomplete_.assign(plan.sign_bits() + 1, 0);
    for (std::uint64_t r = plan.sign_bits(); r-- > 0;)
      suffix_incomplete_[r] = suffix_incomplete_[r + 1] + plan.completed_at(r);
  }

  ShardResult run(std::uint64_t prefix, std::uint64_t prefix_len) {
    result_ = {};
    std::uint64_t fixed = 0;
    for (std::uint64_t r = 0; r < prefix_len; ++r) fixed += plan_.directed_at(r, prefix);
    descend(prefix, prefix_len, fixed);
    return result_;
  }

 private:
  void descend(std::uint64_t assignment, std::uint64_t depth, std::uint64_t fixed) {
    if (depth == plan_.sign_bits()) {
      ++result_.leaves;
      if (static_cast<std::int64_t>(fixed) > result_.best) {
        result_.best = static_cast<std::int64_t>(fixed);
        result_.witness = assignment;
        if (prune_) raise_shared(result_.best);
      }
      return;
    }
    if (prune_) {
      const auto bound = static_cast<std::int64_t>(fixed + suffix_incomplete_[depth]);
      if (bound <= std::max(result_.best, committed_) || bound < shared_.load(std::memory_order_relaxed)) return;
    }
    for (std::uint64_t bit = 0; bit < 2; ++bit) {
      const std::uint64_t next = assignment | (bit << depth);
      descend(next, depth + 1, fixed + plan_.directed_at(depth, next));
    }
  }

  void raise_shared(std::int64_t v) {
    std::int64_t cur = shared_.load(std::memory_order_relaxed);
    while (v > cur && !shared_.compare_exchange_weak(cur, v, std::memory_order_relaxed)) {
    }
  }

  const SearchPlan& plan_;
  bool prune_;
  std::int64_t committed_;
  std::atomic<std::int64_t>& shared_;
  std::vector<std::uint64_t> suffix_incomplete_;
  ShardResult result_;
};

}  // namespace detail

/// Shard layout for a spec: the first free sign bits (after the optional
/// fixed bit 0) enumerate shards in lexicographic order.
struct ShardLayout {
  std::uint64_t first_free = 0;
  std::uint32_t shard_bits = 0;
  std::uint64_t total_shards = 1;

  ShardLayout(const SearchPlan& plan, bool fix_first) {
    first_free = (fix_first && plan.sign_bits() > 0) ? 1 : 0;
    shard_bits = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(detail::default_shard_bits, plan.sign_bits() - first_free));
    total_shards = std::uint64_t{1} << shard_bits;
  }

  // Assignment prefix for shard s; bit 0 stays 0 when fixed.
  std::uint64_t prefix(std::uint64_t s) const {
    std::uint64_t a = 0;
    for (std::uint32_t i = 0; i < shard_bits; ++i)
      a |= ((s >> (shard_bits - 1 - i)) & 1) << (first_free + i);
    return a;
  }
  std::uint64_t prefix_len() const { return first_free + shard_bits; }
};

/// Exact maximum of the directed-simplex count over every d-tournament on n
/// vertices. Fixing bit 0 to minus halves the space without changing the
/// result: the global flip preserves counts and maps any maximizer with bit
/// 0 set to a lexicographically smaller one.
inline SearchOutcome search_max_directed(const SearchSpec& spec, const SearchControl& control = {},
                                         const std::optional<SearchCheckpoint>& resume = std::nullopt) {
  const SearchPlan plan(spec.d, spec.n);
  const ShardLayout layout(plan, spec.fix_first_sign);

  SearchCheckpoint state;
  state.d = spec.d;
  state.n = spec.n;
  state.strategy = spec.strategy;
  state.fix_first_sign = spec.fix_first_sign;
  state.shard_bits = static_cast<std::uint8_t>(layout.shard_bits);
  state.total_shards = layout.total_shards;
  if (resume) {
    const SearchCheckpoint& r = *resume;
    if (r.d != spec.d || r.n != spec.n || r.strategy != spec.strategy || r.fix_first_sign != spec.fix_first_sign ||
        r.shard_bits != layout.shard_bits || r.total_shards != layout.total_shards)
      throw format_error("HOTS checkpoint does not match the requested search");
    state = r;
  }

  const bool prune = spec.strategy == SearchStrategy::branch_and_bound;
  const unsigned threads = std::max(1u, control.threads);
  std::uint64_t explored_now = 0, since_write = 0;
  bool interrupted = false;

  auto write = [&] {
    if (control.checkpoint_path) save_checkpoint(*control.checkpoint_path, state);
    since_write = 0;
  };

  while (state.next_shard < state.total_shards) {
    if (explored_now >= control.stop_after) {
      interrupted = true;
      break;
    }
    const std::uint64_t batch = std::min<std::uint64_t>(threads, state.total_shards - state.next_shard);
    std::atomic<std::int64_t> shared{state.incumbent};
    const std::int64_t committed = state.incumbent;
    const std::uint64_t first = state.next_shard;
    auto results = run_partitioned(batch, threads, [&](std::uint64_t b, std::uint64_t e) {
      std::vector<detail::ShardResult> out;
      detail::ShardSearch worker(plan, prune, committed, shared);
      for (std::uint64_t s = b; s < e; ++s) out.push_back(worker.run(layout.prefix(first + s), layout.prefix_len()));
      return out;
    });
    // Shards merge in index order; ties keep the earlier (smaller) witness.
    for (const auto& part : results)
      for (const auto& r : part) {
        if (r.best > state.incumbent) {
          state.incumbent = r.best;
          state.witness = r.witness;
        }
        state.explored += r.leaves;
        explored_now += r.leaves;
        since_write += r.leaves;
      }
    state.next_shard += batch;
    if (spec.checkpoint_interval != 0 && since_write >= spec.checkpoint_interval) write();
  }
  write();

  SearchOutcome out;
  out.max_count = state.incumbent < 0 ? 0 : static_cast<std::uint64_t>(state.incumbent);
  out.witness = plan.tournament(state.witness);
  out.assignments_explored = state.explored;
  out.complete = !interrupted && state.complete();
  out.shards_done = state.next_shard;
  out.shards_total = state.total_shards;
  return out;
}

}  // namespace hot
