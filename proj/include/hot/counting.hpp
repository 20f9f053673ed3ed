#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hot/errors.hpp"
#include "hot/orientation.hpp"
#include "hot/parallel.hpp"
#include "hot/rng.hpp"
#include "hot/subset.hpp"
#include "hot/tournament.hpp"

namespace hot {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// "p/q" with q > 0 in lowest terms; integers print as "p/1".
inline std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

struct CountOptions {
  unsigned threads = 1;
  // Maximum number of simplex (or extension) evaluations one call may perform.
  std::uint64_t budget = 2'000'000'000;
};

/// Exact number of directed simplices.
struct Census {
  std::uint32_t d = 0;
  std::uint32_t n = 0;
  BigInt directed;
  BigInt total;

  Rational fraction() const { return total == 0 ? Rational(0) : Rational(directed, total); }
};

namespace detail {

inline std::uint64_t simplex_count_checked(const Tournament& t, const CountOptions& opt, const char* what) {
  std::uint64_t total = 0;
  try {
    total = binomial(t.n(), t.d() + 1);
  } catch (const size_error&) {
    throw budget_error(std::string(what) + ": C(n,d+1) exceeds 64 bits; use sampling");
  }
  if (total > opt.budget)
    throw budget_error(std::string(what) + ": " + std::to_string(total) +
                       " simplex evaluations exceed the budget of " + std::to_string(opt.budget) +
                       "; use sample_directed_fraction instead");
  return total;
}

// Visits every (d+1)-subset with rank in [begin, end) and calls f(face_mask).
template <typename F>
void for_each_simplex_mask(const Tournament& t, std::uint64_t begin, std::uint64_t end, F&& f) {
  if (begin >= end) return;
  const std::uint32_t k = t.d() + 1;
  std::vector<Vertex> s(k);
  colex_unrank_into(begin, k, t.n(), s);
  for (std::uint64_t r = begin; r < end; ++r) {
    f(t.face_mask(s));
    next_colex(s, t.n());
  }
}

}  // namespace detail

inline Census count_directed(const Tournament& t, const CountOptions& opt = {}) {
  const std::uint64_t total = detail::simplex_count_checked(t, opt, "count_directed");
  const std::size_t faces = t.d() + 1;
  auto parts = run_partitioned(total, opt.threads, [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t hits = 0;
    detail::for_each_simplex_mask(t, b, e, [&](std::uint64_t mask) { hits += is_directed_mask(mask, faces); });
    return hits;
  });
  Census c{t.d(), t.n(), 0, total};
  for (auto h : parts) c.directed += h;
  return c;
}

/// histogram[c] = number of simplices with exactly c compatible face pairs.
inline std::vector<std::uint64_t> compatible_pair_histogram(const Tournament& t, const CountOptions& opt = {}) {
  const std::uint64_t total = detail::simplex_count_checked(t, opt, "compatible_pair_histogram");
  const std::size_t faces = t.d() + 1;
  const std::size_t bins = faces * (faces - 1) / 2 + 1;
  auto parts = run_partitioned(total, opt.threads, [&](std::uint64_t b, std::uint64_t e) {
    std::vector<std::uint64_t> h(bins, 0);
    detail::for_each_simplex_mask(t, b, e, [&](std::uint64_t mask) { ++h[compatible_pairs_mask(mask, faces)]; });
    return h;
  });
  std::vector<std::uint64_t> out(bins, 0);
  for (const auto& h : parts)
    for (std::size_t i = 0; i < bins; ++i) out[i] += h[i];
  return out;
}

struct SampleEstimate {
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;

  Rational estimate() const { return samples == 0 ? Rational(0) : Rational(hits, samples); }
  // Binomial standard error of the estimate; display only.
  double standard_error() const {
    if (samples == 0) return 0.0;
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  }
};

/// Unbiased estimate of the directed fraction from uniform (d+1)-subsets.
/// Sample i unranks a uniform rank drawn from its own counter stream, so the
/// result depends only on (t, samples, seed).
inline SampleEstimate sample_directed_fraction(const Tournament& t, std::uint64_t samples, Seed seed,
                                               unsigned threads = 1) {
  if (samples == 0) throw argument_error("sample count must be at least 1");
  std::uint64_t total = 0;
  try {
    total = binomial(t.n(), t.d() + 1);
  } catch (const size_error&) {
    throw size_error("sampling needs C(n,d+1) to fit 64 bits");
  }
  SampleEstimate est{samples, 0};
  if (total == 0) return est;
  const std::uint32_t k = t.d() + 1;
  auto parts = run_partitioned(samples, threads, [&](std::uint64_t b, std::uint64_t e) {
    std::vector<Vertex> s(k);
    std::uint64_t hits = 0;
    for (std::uint64_t i = b; i < e; ++i) {
      CounterRng rng(seed.value, i);
      colex_unrank_into(rng.below(total), k, t.n(), s);
      hits += is_directed_mask(t.face_mask(s), k);
    }
    return hits;
  });
  for (auto h : parts) est.hits += h;
  return est;
}

/// Extension counts of a (d-1)-set A. h_plus / h_minus count extensions x
/// by the stored sign of A + {x}; induced_plus / induced_minus count them by
/// the orientation A + {x} induces on A, which is what decides compatibility:
/// two extensions are compatible iff their induced orientations differ.
struct HalfDegrees {
  KSubset subset;
  std::uint64_t h_plus = 0;
  std::uint64_t h_minus = 0;
  std::uint64_t induced_plus = 0;
  std::uint64_t induced_minus = 0;

  std::uint64_t compatible_pairs() const { return induced_plus * induced_minus; }
};

/// Orientation that the d-set A + {x} with stored sign `s` induces on A,
/// where `below` is the number of elements of A smaller than x.
constexpr Sign induced_on_base(Sign s, std::size_t below) { return s * parity_sign(below); }

inline HalfDegrees half_degrees(const Tournament& t, const KSubset& a) {
  if (a.size() + 1 != t.d())
    throw argument_error("half_degrees needs a (d-1)-subset, got " + a.str());
  if (a.back() >= t.n()) throw argument_error("vertex out of range in " + a.str());
  HalfDegrees h{a};
  std::vector<Vertex> ext(t.d());
  for (Vertex x = 0; x < t.n(); ++x) {
    if (a.contains(x)) continue;
    const auto split = std::lower_bound(a.begin(), a.end(), x);
    const std::size_t below = static_cast<std::size_t>(split - a.begin());
    std::copy(a.begin(), split, ext.begin());
    ext[below] = x;
    std::copy(split, a.end(), ext.begin() + static_cast<std::ptrdiff_t>(below) + 1);
    const Sign s = t.sign_at(colex_rank(ext, t.binom()));
    (to_bit(s) ? h.h_plus : h.h_minus) += 1;
    (to_bit(induced_on_base(s, below)) ? h.induced_plus : h.induced_minus) += 1;
  }
  return h;
}

/// Both ways of counting compatible pairs of d-sets.
struct CompatiblePairTotals {
  BigInt by_shared_face;  // sum over (d-1)-sets A of pairs compatible through A
  BigInt by_simplex;      // sum over (d+1)-sets S of compatible face pairs of S
};

namespace detail {

inline std::uint64_t shared_face_work(const Tournament& t) {
  return binomial(t.n(), t.d() - 1) * (t.n() - t.d() + 1);
}

}  // namespace detail

inline CompatiblePairTotals compatible_pair_totals(const Tournament& t, const CountOptions& opt = {}) {
  CompatiblePairTotals out;
  const std::uint64_t work = detail::shared_face_work(t);
  if (work > opt.budget) throw budget_error("total_compatible_pairs: shared-face pass exceeds the budget");
  const std::uint32_t base = t.d() - 1;
  const std::uint64_t bases = binomial(t.n(), base);
  auto parts = run_partitioned(bases, opt.threads, [&](std::uint64_t b, std::uint64_t e) {
    BigInt sum = 0;
    if (b >= e) return sum;
    std::vector<Vertex> a(base);
    colex_unrank_into(b, base, t.n(), a);
    for (std::uint64_t r = b; r < e; ++r) {
      const HalfDegrees h = half_degrees(t, KSubset(a));
      sum += BigInt(h.induced_plus) * h.induced_minus;
      next_colex(a, t.n());
    }
    return sum;
  });
  for (auto& p : parts) out.by_shared_face += p;

  const std::uint64_t total = detail::simplex_count_checked(t, opt, "total_compatible_pairs");
  const std::size_t faces = t.d() + 1;
  auto sparts = run_partitioned(total, opt.threads, [&](std::uint64_t b, std::uint64_t e) {
    std::uint64_t sum = 0;
    detail::for_each_simplex_mask(t, b, e, [&](std::uint64_t mask) { sum += compatible_pairs_mask(mask, faces); });
    return sum;
  });
  for (auto p : sparts) out.by_simplex += p;
  return out;
}

/// Total compatible pairs of d-sets; the two counting routes must agree.
inline BigInt total_compatible_pairs(const Tournament& t, const CountOptions& opt = {}) {
  const CompatiblePairTotals c = compatible_pair_totals(t, opt);
  if (c.by_shared_face != c.by_simplex)
    throw consistency_error("compatible pair totals disagree: " + c.by_shared_face.str() + " vs " +
                            c.by_simplex.str());
  return c.by_simplex;
}

// ---- closed forms ----------------------------------------------------------

/// Least number of compatible face pairs any (d+1)-set can have.
inline std::uint64_t s_of_d(std::uint32_t d) {
  if (d < 2) throw argument_error("s(d) needs d >= 2");
  const std::uint64_t lo = (d + 1) / 2, hi = (d + 2) / 2;
  return lo * (lo - 1) / 2 + hi * (hi - 1) / 2;
}

inline std::uint64_t face_pairs(std::uint32_t d) { return std::uint64_t{d + 1} * d / 2; }

/// Minimum of compatible_pairs over all 2^(d+1) face-sign patterns.
inline std::uint64_t lemma_min_pairs_exhaustive(std::uint32_t d) {
  if (d < 2 || d > 16) throw range_error("lemma_min_pairs_exhaustive supports 2 <= d <= 16");
  const std::size_t faces = d + 1;
  std::uint64_t best = UINT64_MAX;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << faces); ++mask)
    best = std::min(best, compatible_pairs_mask(mask, faces));
  return best;
}

/// C(n, d-1) * floor((n-d+1)/2) * ceil((n-d+1)/2): the most compatible pairs
/// any d-tournament on n vertices can have.
inline BigInt compatible_pairs_upper(std::uint32_t d, std::uint64_t n) {
  const std::uint64_t ext = n - d + 1;
  return big_binomial(n, d - 1) * (ext / 2) * ((ext + 1) / 2);
}

/// The fewest compatible pairs a tournament with `directed` directed simplices can have.
inline BigInt compatible_pairs_lower(std::uint32_t d, std::uint64_t n, const BigInt& directed) {
  return BigInt(face_pairs(d)) * directed + BigInt(s_of_d(d)) * (big_binomial(n, d + 1) - directed);
}

/// Floor of (C(n,d-1) floor(e/2) ceil(e/2) - s(d) C(n,d+1)) / (C(d+1,2) - s(d)), e = n-d+1.
inline BigInt exact_upper_bound(std::uint32_t d, std::uint64_t n) {
  if (d < 2) throw argument_error("exact_upper_bound needs d >= 2");
  if (n < d + 1) throw argument_error("exact_upper_bound needs n >= d+1");
  const BigInt num = compatible_pairs_upper(d, n) - BigInt(s_of_d(d)) * big_binomial(n, d + 1);
  const BigInt den = face_pairs(d) - s_of_d(d);
  if (num < 0) return 0;
  return num / den;
}

/// The exact (d = 2) maximum number of cyclic triangles.
inline BigInt exact_formula_d2(std::uint64_t n) {
  if (n < 3) throw argument_error("exact_formula_d2 needs n >= 3");
  const BigInt N = n;
  return (n % 2 == 1) ? BigInt((N * N * N - N) / 24) : BigInt((N * N * N - 4 * N) / 24);
}

/// Constants of the digit-product construction.
struct ProductConstants {
  Rational x;      // P(one coordinate of d+1 i.i.d. digits is all-distinct)
  Rational y;      // P(a coordinate has at most d-1 distinct values)
  Rational limit;  // x / (1 - y)
};

inline ProductConstants closed_form_constants(std::uint32_t d) {
  if (d < 2) throw argument_error("closed_form_constants needs d >= 2");
  BigInt fact = 1, power = 1;
  for (std::uint32_t i = 1; i <= d + 1; ++i) {
    fact *= i;
    power *= d + 1;
  }
  ProductConstants c;
  c.x = Rational(fact, power);
  c.y = 1 - c.x * (1 + face_pairs(d));
  c.limit = c.x / (1 - c.y);
  return c;
}

/// x (1 + y + ... + y^(m-1)): directed probability for d+1 i.i.d. vertices.
inline Rational product_finite_fraction(std::uint32_t d, std::uint32_t m) {
  if (m < 1) throw argument_error("product_finite_fraction needs m >= 1");
  const ProductConstants c = closed_form_constants(d);
  Rational sum = 0, term = c.x;
  for (std::uint32_t i = 0; i < m; ++i) {
    sum += term;
    term *= c.y;
  }
  return sum;
}

/// Every closed-form constant attached to (d, n).
struct BoundReport {
  std::uint32_t d = 0;
  std::uint64_t n = 0;
  std::uint64_t s_d = 0;
  BigInt total_simplices;
  BigInt exact_upper;
  BigInt pairs_upper;
  Rational random_lower_fraction;     // 2^-d
  Rational product_limit_fraction;    // 1 / (1 + C(d+1,2))
  Rational asymptotic_upper_fraction; // 1/(d+1) for odd d, 1/(d+2) for even d
  Rational exact_upper_fraction;      // exact_upper / C(n, d+1)
};

/// (d(d+1)/4 - s(d)) / (d(d+1)/2 - s(d)), the leading coefficient of the upper bound.
inline Rational asymptotic_upper_fraction(std::uint32_t d) {
  const Rational half_pairs = Rational(std::uint64_t{d} * (d + 1), 4);
  return (half_pairs - s_of_d(d)) / (Rational(face_pairs(d)) - s_of_d(d));
}

inline BoundReport bound_report(std::uint32_t d, std::uint64_t n) {
  BoundReport r;
  r.d = d;
  r.n = n;
  r.s_d = s_of_d(d);
  r.total_simplices = big_binomial(n, d + 1);
  r.exact_upper = exact_upper_bound(d, n);
  r.pairs_upper = compatible_pairs_upper(d, n);
  r.random_lower_fraction = Rational(1, BigInt(1) << d);
  r.product_limit_fraction = Rational(1, 1 + face_pairs(d));
  r.asymptotic_upper_fraction = asymptotic_upper_fraction(d);
  r.exact_upper_fraction = Rational(r.exact_upper, r.total_simplices);
  return r;
}

}  // namespace hot
