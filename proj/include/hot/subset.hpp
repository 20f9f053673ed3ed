#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hot/binomial.hpp"
#include "hot/errors.hpp"

namespace hot {

using Vertex = std::uint32_t;

/// A strictly increasing, non-empty sequence of vertex ids.
class KSubset {
 public:
  KSubset() = default;

  explicit KSubset(std::vector<Vertex> vertices) : v_(std::move(vertices)) { validate(); }
  KSubset(std::initializer_list<Vertex> vertices) : v_(vertices) { validate(); }

  /// Sorts and validates; duplicates are still rejected.
  static KSubset from_unsorted(std::vector<Vertex> vertices) {
    std::sort(vertices.begin(), vertices.end());
    return KSubset(std::move(vertices));
  }

  std::size_t size() const { return v_.size(); }
  Vertex operator[](std::size_t i) const { return v_[i]; }
  Vertex front() const { return v_.front(); }
  Vertex back() const { return v_.back(); }
  std::span<const Vertex> vertices() const { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  /// The subset with its i-th smallest vertex removed.
  KSubset without(std::size_t i) const {
    if (i >= v_.size()) throw range_error("omit index out of range");
    std::vector<Vertex> out;
    out.reserve(v_.size() - 1);
    for (std::size_t j = 0; j < v_.size(); ++j)
      if (j != i) out.push_back(v_[j]);
    KSubset r;
    r.v_ = std::move(out);
    return r;
  }

  bool contains(Vertex x) const { return std::binary_search(v_.begin(), v_.end(), x); }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v_[i]);
    }
    return s + "}";
  }

  friend bool operator==(const KSubset&, const KSubset&) = default;

 private:
  void validate() const {
    if (v_.empty()) throw argument_error("subset must be non-empty");
    for (std::size_t i = 1; i < v_.size(); ++i)
      if (v_[i - 1] >= v_[i])
        throw argument_error("subset must be strictly increasing without duplicates");
  }

  std::vector<Vertex> v_;
};

/// Colexicographic rank: sum over positions i (1-based) of C(v_i, i).
/// Independent of the ground-set size.
inline std::uint64_t colex_rank(std::span<const Vertex> sorted) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) r += binomial(sorted[i], i + 1);
  return r;
}

inline std::uint64_t colex_rank(const KSubset& s) { return colex_rank(s.vertices()); }

inline std::uint64_t colex_rank(std::span<const Vertex> sorted, const BinomialTable& c) {
  std::uint64_t r = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    r += c(sorted[i], static_cast<std::uint32_t>(i + 1));
  return r;
}

/// Writes the k-subset of rank `rank` into out[0..k). Greedy from the top
/// position: the largest v with C(v, i) <= remaining.
inline void colex_unrank_into(std::uint64_t rank, std::uint32_t k, std::uint32_t n,
                              std::span<Vertex> out) {
  std::uint32_t hi = n;  // exclusive upper bound for the current position
  for (std::uint32_t pos = k; pos >= 1; --pos) {
    // binary search for largest v in [pos-1, hi) with C(v, pos) <= rank
    std::uint32_t lo = pos - 1, top = hi - 1;
    while (lo < top) {
      const std::uint32_t mid = lo + (top - lo + 1) / 2;
      if (binomial(mid, pos) <= rank)
        lo = mid;
      else
        top = mid - 1;
    }
    out[pos - 1] = lo;
    rank -= binomial(lo, pos);
    hi = lo;
  }
}

inline KSubset colex_unrank(std::uint64_t rank, std::uint32_t k, std::uint32_t n) {
  if (k == 0 || k > n) throw argument_error("colex_unrank needs 1 <= k <= n");
  if (rank >= binomial(n, k))
    throw range_error("rank " + std::to_string(rank) + " out of range for C(" +
                      std::to_string(n) + "," + std::to_string(k) + ")");
  std::vector<Vertex> v(k);
  colex_unrank_into(rank, k, n, v);
  return KSubset(std::move(v));
}

/// Advances a sorted k-subset of [0, n) to its colex successor.
/// Returns false after the last subset.
inline bool next_colex(std::span<Vertex> s, std::uint32_t n) {
  const std::size_t k = s.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex limit = (i + 1 < k) ? s[i + 1] : n;
    if (s[i] + 1 < limit) {
      ++s[i];
      for (std::size_t j = 0; j < i; ++j) s[j] = static_cast<Vertex>(j);
      return true;
    }
  }
  return false;
}

}  // namespace hot
