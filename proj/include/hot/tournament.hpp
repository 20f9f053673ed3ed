#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hot/binomial.hpp"
#include "hot/errors.hpp"
#include "hot/orientation.hpp"
#include "hot/subset.hpp"

namespace hot {

/// A d-tournament: one orientation sign per d-subset of [0, n), stored as a
/// bit array indexed by colex rank (bit 1 = plus). Immutable; cheap to copy.
class Tournament {
 public:
  Tournament() = default;

  /// Adopts a packed sign array. Pad bits past C(n, d) must be zero.
  static Tournament from_words(std::uint32_t d, std::uint32_t n, std::vector<std::uint64_t> words) {
    check_shape(d, n);
    const std::uint64_t bits = binomial(n, d);
    if (words.size() != (bits + 63) / 64) throw argument_error("sign array has wrong length");
    if (bits % 64 != 0 && (words.back() >> (bits % 64)) != 0)
      throw argument_error("sign array has non-zero pad bits");
    Tournament t;
    t.d_ = d;
    t.n_ = n;
    t.bits_ = bits;
    t.words_ = std::make_shared<const std::vector<std::uint64_t>>(std::move(words));
    t.binom_ = std::make_shared<const BinomialTable>(n, d + 1);
    return t;
  }

  std::uint32_t d() const { return d_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t num_signs() const { return bits_; }
  std::span<const std::uint64_t> words() const { return *words_; }
  const BinomialTable& binom() const { return *binom_; }

  bool bit(std::uint64_t rank) const { return ((*words_)[rank >> 6] >> (rank & 63)) & 1; }
  Sign sign_at(std::uint64_t rank) const { return from_bit(bit(rank)); }

  Sign get_sign(const KSubset& s) const {
    check_member(s, d_);
    return sign_at(colex_rank(s.vertices(), *binom_));
  }

  OrientedSet oriented(const KSubset& s) const { return {s, get_sign(s)}; }

  /// Plus-mask of the d+1 face signs of a sorted (d+1)-set (no validation).
  std::uint64_t face_mask(std::span<const Vertex> simplex) const {
    const BinomialTable& c = *binom_;
    const std::size_t k = simplex.size();
    // face i rank = sum_{j<i} C(s_j, j+1) + sum_{j>i} C(s_j, j)
    std::uint64_t suffix = 0;
    for (std::size_t j = 1; j < k; ++j) suffix += c(simplex[j], static_cast<std::uint32_t>(j));
    std::uint64_t prefix = 0, mask = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (bit(prefix + suffix)) mask |= std::uint64_t{1} << i;
      prefix += c(simplex[i], static_cast<std::uint32_t>(i + 1));
      if (i + 1 < k) suffix -= c(simplex[i + 1], static_cast<std::uint32_t>(i + 1));
    }
    return mask;
  }

  SimplexFaceSigns simplex_face_signs(const KSubset& simplex) const {
    check_member(simplex, d_ + 1);
    return SimplexFaceSigns(face_mask(simplex.vertices()), d_ + 1);
  }

  bool is_directed_simplex(const KSubset& simplex) const {
    return is_directed(simplex_face_signs(simplex));
  }

  /// Every sign negated.
  Tournament flipped() const {
    std::vector<std::uint64_t> w(*words_);
    for (auto& x : w) x = ~x;
    if (bits_ % 64 != 0) w.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
    return from_words(d_, n_, std::move(w));
  }

  /// The isomorphic copy obtained by renaming vertex v to perm[v]; each
  /// orientation is transported along the renaming.
  Tournament relabeled(std::span<const Vertex> perm) const;

  friend bool operator==(const Tournament& a, const Tournament& b) {
    return a.d_ == b.d_ && a.n_ == b.n_ && *a.words_ == *b.words_;
  }

  static void check_shape(std::uint32_t d, std::uint32_t n) {
    if (d < 2) throw argument_error("tournament order d must be at least 2");
    if (d > n) throw argument_error("tournament needs d <= n (d=" + std::to_string(d) +
                                    ", n=" + std::to_string(n) + ")");
    if (d + 1 > SimplexFaceSigns::max_faces) throw argument_error("order d too large");
  }

 private:
  void check_member(const KSubset& s, std::size_t want) const {
    if (s.size() != want)
      throw argument_error("expected a " + std::to_string(want) + "-subset, got " + s.str());
    if (s.back() >= n_) throw argument_error("vertex out of range in " + s.str());
  }

  std::uint32_t d_ = 0;
  std::uint32_t n_ = 0;
  std::uint64_t bits_ = 0;
  std::shared_ptr<const std::vector<std::uint64_t>> words_;
  std::shared_ptr<const BinomialTable> binom_;
};

/// Single-owner mutable sign array. Unset signs default to plus.
class TournamentBuilder {
 public:
  TournamentBuilder(std::uint32_t d, std::uint32_t n) : d_(d), n_(n) {
    Tournament::check_shape(d, n);
    bits_ = binomial(n, d);
    words_.assign((bits_ + 63) / 64, ~std::uint64_t{0});
    if (bits_ % 64 != 0) words_.back() = (std::uint64_t{1} << (bits_ % 64)) - 1;
    binom_ = BinomialTable(n, d);
  }

  std::uint32_t d() const { return d_; }
  std::uint32_t n() const { return n_; }
  std::uint64_t num_signs() const { return bits_; }

  void set_sign_at(std::uint64_t rank, Sign s) {
    require_open();
    if (rank >= bits_) throw range_error("sign rank out of range");
    const std::uint64_t m = std::uint64_t{1} << (rank & 63);
    if (to_bit(s))
      words_[rank >> 6] |= m;
    else
      words_[rank >> 6] &= ~m;
  }

  Sign sign_at(std::uint64_t rank) const {
    if (rank >= bits_) throw range_error("sign rank out of range");
    return from_bit((words_[rank >> 6] >> (rank & 63)) & 1);
  }

  void set_sign(const KSubset& s, Sign sign) { set_sign_at(rank_of(s), sign); }
  Sign get_sign(const KSubset& s) const { return sign_at(rank_of(s)); }

  /// Direct access for generators that fill whole 64-bit words.
  std::span<std::uint64_t> words() {
    require_open();
    return words_;
  }

  Tournament seal() {
    require_open();
    sealed_ = true;
    if (bits_ % 64 != 0) words_.back() &= (std::uint64_t{1} << (bits_ % 64)) - 1;
    return Tournament::from_words(d_, n_, std::move(words_));
  }

  bool sealed() const { return sealed_; }

 private:
  std::uint64_t rank_of(const KSubset& s) const {
    if (s.size() != d_)
      throw argument_error("expected a " + std::to_string(d_) + "-subset, got " + s.str());
    if (s.back() >= n_) throw argument_error("vertex out of range in " + s.str());
    return colex_rank(s.vertices(), binom_);
  }

  void require_open() const {
    if (sealed_) throw std::logic_error("tournament builder already sealed");
  }

  std::uint32_t d_;
  std::uint32_t n_;
  std::uint64_t bits_ = 0;
  std::vector<std::uint64_t> words_;
  BinomialTable binom_;
  bool sealed_ = false;
};

inline Tournament Tournament::relabeled(std::span<const Vertex> perm) const {
  if (perm.size() != n_) throw argument_error("permutation has wrong length");
  std::vector<bool> seen(n_, false);
  for (Vertex v : perm) {
    if (v >= n_ || seen[v]) throw argument_error("not a permutation");
    seen[v] = true;
  }
  TournamentBuilder b(d_, n_);
  std::vector<Vertex> s(d_), image(d_);
  for (std::uint32_t i = 0; i < d_; ++i) s[i] = i;
  std::uint64_t rank = 0;
  do {
    for (std::uint32_t i = 0; i < d_; ++i) image[i] = perm[s[i]];
    // the ordering (perm[s_0], ..., perm[s_{d-1}]) carries the source sign
    const Sign sorted_sign = sign_at(rank) * permutation_sign(image);
    b.set_sign(KSubset::from_unsorted(image), sorted_sign);
    ++rank;
  } while (next_colex(s, n_));
  return b.seal();
}

}  // namespace hot
