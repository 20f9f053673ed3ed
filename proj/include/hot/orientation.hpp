#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "hot/errors.hpp"
#include "hot/subset.hpp"

namespace hot {

/// +1 is the orientation class of the sorted ordering of a set, -1 the other class.
enum class Sign : std::int8_t { minus = -1, plus = 1 };

constexpr Sign operator-(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }
constexpr Sign operator*(Sign a, Sign b) { return a == b ? Sign::plus : Sign::minus; }
constexpr Sign parity_sign(std::size_t i) { return (i & 1) ? Sign::minus : Sign::plus; }
constexpr int to_int(Sign s) { return static_cast<int>(s); }
constexpr bool to_bit(Sign s) { return s == Sign::plus; }
constexpr Sign from_bit(bool b) { return b ? Sign::plus : Sign::minus; }

/// Sign of the permutation that sorts `seq` (entries distinct).
template <typename T>
Sign permutation_sign(std::vector<T> seq) {
  // Cycle-sort with swap counting; O(k^2) is fine for k <= a few dozen.
  std::size_t swaps = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[j] < seq[i]) ++swaps;
  return parity_sign(swaps);
}

/// A sorted subset together with one of its two orientation classes.
/// On an edge {a<b}, +1 means a->b; on a triple {a<b<c}, +1 is the cycle a->b->c->a.
struct OrientedSet {
  KSubset subset;
  Sign sign = Sign::plus;

  friend bool operator==(const OrientedSet&, const OrientedSet&) = default;
};

/// Orientation induced on the face that drops the omit_index-th smallest vertex.
inline OrientedSet induced_face_sign(const OrientedSet& set, std::size_t omit_index) {
  if (set.subset.size() < 2) throw argument_error("face induction needs at least 2 vertices");
  if (omit_index >= set.subset.size()) throw range_error("omit index out of range");
  return {set.subset.without(omit_index), set.sign * parity_sign(omit_index)};
}

/// Two oriented d-sets sharing d-1 vertices are compatible iff they induce
/// opposite orientations on the shared (d-1)-set.
inline bool compatible(const OrientedSet& a, const OrientedSet& b) {
  const std::size_t d = a.subset.size();
  if (b.subset.size() != d) throw argument_error("compatible: sets differ in size");
  if (d < 2) throw argument_error("compatible: sets need at least 2 vertices");
  std::size_t ia = d, ib = d, shared = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (b.subset.contains(a.subset[i]))
      ++shared;
    else
      ia = i;
  }
  for (std::size_t i = 0; i < d; ++i)
    if (!a.subset.contains(b.subset[i])) ib = i;
  if (shared != d - 1)
    throw argument_error("compatible: sets must share exactly d-1 vertices (" +
                         a.subset.str() + ", " + b.subset.str() + ")");
  return induced_face_sign(a, ia).sign != induced_face_sign(b, ib).sign;
}

/// Face orientation signs of one (d+1)-set; entry i belongs to the face that
/// omits the i-th smallest vertex. Packed one bit per face (1 = plus).
class SimplexFaceSigns {
 public:
  static constexpr std::size_t max_faces = 64;

  SimplexFaceSigns(std::uint64_t plus_mask, std::size_t faces) : mask_(plus_mask), size_(faces) {
    if (faces == 0 || faces > max_faces) throw argument_error("face count out of range");
    if (faces < 64) mask_ &= (std::uint64_t{1} << faces) - 1;
  }

  SimplexFaceSigns(std::initializer_list<Sign> signs) : SimplexFaceSigns(std::vector<Sign>(signs)) {}

  explicit SimplexFaceSigns(const std::vector<Sign>& signs) : size_(signs.size()) {
    if (size_ == 0 || size_ > max_faces) throw argument_error("face count out of range");
    for (std::size_t i = 0; i < size_; ++i)
      if (signs[i] == Sign::plus) mask_ |= std::uint64_t{1} << i;
  }

  std::size_t size() const { return size_; }
  Sign operator[](std::size_t i) const { return from_bit((mask_ >> i) & 1); }
  std::uint64_t mask() const { return mask_; }

  friend bool operator==(const SimplexFaceSigns&, const SimplexFaceSigns&) = default;

 private:
  std::uint64_t mask_ = 0;
  std::size_t size_ = 0;
};

namespace detail {

constexpr std::uint64_t low_mask(std::size_t k) {
  return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
}

// Bits set at odd positions: multiplying f_i by (-1)^i flips those bits.
constexpr std::uint64_t odd_positions = 0xAAAAAAAAAAAAAAAAull;

}  // namespace detail

/// g_i = f_i * (-1)^i as a plus-mask. Face pair (i, j) is compatible iff g_i == g_j.
constexpr std::uint64_t alternating_mask(std::uint64_t plus_mask, std::size_t faces) {
  return (plus_mask ^ detail::odd_positions) & detail::low_mask(faces);
}

constexpr bool is_directed_mask(std::uint64_t plus_mask, std::size_t faces) {
  const std::uint64_t g = alternating_mask(plus_mask, faces);
  return g == 0 || g == detail::low_mask(faces);
}

constexpr std::uint64_t compatible_pairs_mask(std::uint64_t plus_mask, std::size_t faces) {
  const std::uint64_t p = static_cast<std::uint64_t>(std::popcount(alternating_mask(plus_mask, faces)));
  const std::uint64_t q = faces - p;
  return p * (p - (p > 0)) / 2 + q * (q - (q > 0)) / 2;
}

inline bool is_directed(const SimplexFaceSigns& f) { return is_directed_mask(f.mask(), f.size()); }

/// Number of compatible unordered face pairs: C(p,2) + C(q,2) where p, q
/// count the two values of the alternating vector g.
inline std::uint64_t compatible_pairs(const SimplexFaceSigns& f) {
  return compatible_pairs_mask(f.mask(), f.size());
}

}  // namespace hot
