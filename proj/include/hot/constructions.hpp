#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hot/errors.hpp"
#include "hot/orientation.hpp"
#include "hot/rng.hpp"
#include "hot/subset.hpp"
#include "hot/tournament.hpp"

namespace hot {

/// Each sign is a fair coin that depends only on (seed, rank): word w of the
/// sign array is the w-th output of a counter-based stream.
inline Tournament random_tournament(std::uint32_t d, std::uint32_t n, Seed seed) {
  TournamentBuilder b(d, n);
  const CounterRng rng(seed.value);
  auto words = b.words();
  for (std::size_t w = 0; w < words.size(); ++w) words[w] = rng.at(w);
  return b.seal();
}

/// In a 2-tournament: does u beat v?
inline bool beats(const Tournament& t2, Vertex u, Vertex v) {
  const BinomialTable& c = t2.binom();
  if (u < v) return t2.bit(c(u, 1) + c(v, 2));
  return !t2.bit(c(v, 1) + c(u, 2));
}

enum class FourSetType { TypeI, TypeII, Other };

inline const char* to_string(FourSetType t) {
  switch (t) {
    case FourSetType::TypeI: return "TypeI";
    case FourSetType::TypeII: return "TypeII";
    default: return "Other";
  }
}

namespace detail {

inline void require_order(const Tournament& t, std::uint32_t d, const char* what) {
  if (t.d() != d)
    throw argument_error(std::string(what) + " needs a " + std::to_string(d) + "-tournament, got order " +
                         std::to_string(t.d()));
}

inline bool is_cyclic_triple(const Tournament& t2, Vertex a, Vertex b, Vertex c) {
  const bool ab = beats(t2, a, b), bc = beats(t2, b, c), ca = beats(t2, c, a);
  return ab == bc && bc == ca;
}

}  // namespace detail

/// TypeI: one vertex beats the other three and they form a cyclic triangle.
/// TypeII: one vertex loses to the other three and they form a cyclic triangle.
inline FourSetType classify_4set(const Tournament& t2, const KSubset& four) {
  detail::require_order(t2, 2, "classify_4set");
  if (four.size() != 4) throw argument_error("classify_4set needs a 4-subset, got " + four.str());
  if (four.back() >= t2.n()) throw argument_error("vertex out of range in " + four.str());
  for (std::size_t i = 0; i < 4; ++i) {
    std::array<Vertex, 3> rest{};
    std::size_t r = 0;
    for (std::size_t j = 0; j < 4; ++j)
      if (j != i) rest[r++] = four[j];
    if (!detail::is_cyclic_triple(t2, rest[0], rest[1], rest[2])) continue;
    int wins = 0;
    for (Vertex x : rest) wins += beats(t2, four[i], x);
    if (wins == 3) return FourSetType::TypeI;
    if (wins == 0) return FourSetType::TypeII;
  }
  return FourSetType::Other;
}

/// Orientation the minority rule gives the triple {a<b<c}: a cyclic triple
/// keeps its cycle; a transitive one with source s, middle m and sink k gets
/// the cycle s->k->m->s through its minority edge.
inline Sign minority_triple_sign(const Tournament& t2, Vertex a, Vertex b, Vertex c) {
  const bool ab = beats(t2, a, b), bc = beats(t2, b, c), ca = beats(t2, c, a);
  if (ab && bc && ca) return Sign::plus;     // a->b->c->a
  if (!ab && !bc && !ca) return Sign::minus;  // a->c->b->a
  const std::array<Vertex, 3> v{a, b, c};
  Vertex source = 0, sink = 0, middle = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const int wins = beats(t2, v[i], v[(i + 1) % 3]) + beats(t2, v[i], v[(i + 2) % 3]);
    if (wins == 2) source = v[i];
    else if (wins == 0) sink = v[i];
    else middle = v[i];
  }
  return permutation_sign(std::vector<Vertex>{source, sink, middle});
}

inline Tournament minority_induce_3(const Tournament& t2) {
  detail::require_order(t2, 2, "minority_induce_3");
  if (t2.n() < 3) throw argument_error("minority_induce_3 needs at least 3 vertices");
  TournamentBuilder b(3, t2.n());
  std::vector<Vertex> s{0, 1, 2};
  std::uint64_t rank = 0;
  do {
    b.set_sign_at(rank++, minority_triple_sign(t2, s[0], s[1], s[2]));
  } while (next_colex(s, t2.n()));
  return b.seal();
}

/// Parameters of the digit-product construction on (d+1)^m vertices.
/// base_sign orients the reference directed simplex on {0..d}; tie_sign
/// orients d-sets that have no all-distinct coordinate.
struct ProductSpec {
  std::uint32_t d = 2;
  std::uint32_t m = 1;
  Sign base_sign = Sign::plus;
  Sign tie_sign = Sign::plus;

  std::uint32_t vertex_count() const {
    if (d < 2) throw argument_error("product construction needs d >= 2");
    if (m < 1) throw argument_error("product construction needs m >= 1");
    std::uint64_t n = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      n *= d + 1;
      if (n > (std::uint64_t{1} << 31)) throw size_error("(d+1)^m overflows the vertex id range");
    }
    return static_cast<std::uint32_t>(n);
  }
};

/// Base-(d+1) digits of every vertex, most significant first.
class DigitTable {
 public:
  explicit DigitTable(const ProductSpec& spec) : m_(spec.m) {
    const std::uint32_t n = spec.vertex_count();
    digits_.resize(static_cast<std::size_t>(n) * m_);
    for (std::uint32_t v = 0; v < n; ++v) {
      std::uint32_t x = v;
      for (std::uint32_t k = m_; k-- > 0;) {
        digits_[static_cast<std::size_t>(v) * m_ + k] = static_cast<std::uint8_t>(x % (spec.d + 1));
        x /= spec.d + 1;
      }
    }
  }

  std::uint8_t operator()(Vertex v, std::uint32_t coordinate) const {
    return digits_[static_cast<std::size_t>(v) * m_ + coordinate];
  }

 private:
  std::uint32_t m_;
  std::vector<std::uint8_t> digits_;
};

namespace detail {

inline std::uint32_t distinct_digit_count(const DigitTable& digits, std::span<const Vertex> vs, std::uint32_t k) {
  std::uint64_t seen = 0;
  for (Vertex v : vs) seen |= std::uint64_t{1} << digits(v, k);
  return static_cast<std::uint32_t>(std::popcount(seen));
}

// Sign of a sorted d-set; `found` is false when no coordinate is all-distinct.
inline Sign product_face_sign(const ProductSpec& spec, const DigitTable& digits, std::span<const Vertex> face,
                              bool& found) {
  const std::uint32_t d = spec.d;
  for (std::uint32_t k = 0; k < spec.m; ++k) {
    if (distinct_digit_count(digits, face, k) != d) continue;
    found = true;
    std::vector<std::uint32_t> values(d);
    std::uint64_t seen = 0;
    for (std::uint32_t i = 0; i < d; ++i) {
      values[i] = digits(face[i], k);
      seen |= std::uint64_t{1} << values[i];
    }
    // the one value of {0..d} the face misses; D's face without it has sign base * (-1)^t
    const std::uint32_t missing = static_cast<std::uint32_t>(std::countr_one(seen));
    return spec.base_sign * parity_sign(missing) * permutation_sign(values);
  }
  found = false;
  return spec.tie_sign;
}

}  // namespace detail

/// The (d+1)^m-vertex d-tournament: each d-set copies the orientation that the
/// reference simplex gives its digit values at the first coordinate where
/// those values are all distinct.
inline Tournament product_tournament(const ProductSpec& spec) {
  const std::uint32_t n = spec.vertex_count();
  const DigitTable digits(spec);
  TournamentBuilder b(spec.d, n);
  std::vector<Vertex> s(spec.d);
  for (std::uint32_t i = 0; i < spec.d; ++i) s[i] = i;
  std::uint64_t rank = 0;
  bool found = false;
  do {
    b.set_sign_at(rank++, detail::product_face_sign(spec, digits, s, found));
  } while (next_colex(s, n));
  return b.seal();
}

/// Number of d-sets of the product construction with no all-distinct coordinate.
inline std::uint64_t product_tied_sets(const ProductSpec& spec) {
  const std::uint32_t n = spec.vertex_count();
  const DigitTable digits(spec);
  std::vector<Vertex> s(spec.d);
  for (std::uint32_t i = 0; i < spec.d; ++i) s[i] = i;
  std::uint64_t tied = 0;
  bool found = false;
  do {
    (void)detail::product_face_sign(spec, digits, s, found);
    tied += !found;
  } while (next_colex(s, n));
  return tied;
}

/// Closed-form directedness in the product construction: some coordinate has
/// d+1 distinct values and every earlier coordinate has at most d-1.
inline bool product_directed_predicate(const ProductSpec& spec, const DigitTable& digits,
                                       std::span<const Vertex> simplex) {
  for (std::uint32_t k = 0; k < spec.m; ++k) {
    const std::uint32_t distinct = detail::distinct_digit_count(digits, simplex, k);
    if (distinct == spec.d + 1) return true;
    if (distinct > spec.d - 1) return false;
  }
  return false;
}

inline bool product_directed_predicate(const ProductSpec& spec, const KSubset& simplex) {
  if (simplex.size() != spec.d + 1) throw argument_error("product predicate needs d+1 vertices");
  if (simplex.back() >= spec.vertex_count()) throw argument_error("vertex out of range");
  return product_directed_predicate(spec, DigitTable(spec), simplex.vertices());
}

/// Odd n: i -> j iff (j - i) mod n lies in [1, (n-1)/2].
inline Tournament rotational_tournament(std::uint32_t n) {
  if (n < 3 || n % 2 == 0) throw argument_error("rotational tournament needs odd n >= 3");
  TournamentBuilder b(2, n);
  std::vector<Vertex> s{0, 1};
  std::uint64_t rank = 0;
  do {
    const std::uint32_t gap = s[1] - s[0];  // s0 -> s1 iff gap <= (n-1)/2
    b.set_sign_at(rank++, from_bit(gap <= (n - 1) / 2));
  } while (next_colex(s, n));
  return b.seal();
}

}  // namespace hot
