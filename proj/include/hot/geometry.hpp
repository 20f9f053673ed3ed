#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hot/errors.hpp"
#include "hot/rng.hpp"
#include "hot/subset.hpp"
#include "hot/tournament.hpp"

namespace hot {

using Int128 = __int128;

/// Sign (-1, 0, +1) of a 128-bit integer.
constexpr int sign_of(Int128 v) { return (v > 0) - (v < 0); }

/// Exact determinant of a k x k integer matrix (row-major). Expands over
/// column subsets so every intermediate value is itself a minor; callers keep
/// k! * max|entry|^k below 2^126 so nothing overflows.
inline Int128 exact_determinant(std::span<const std::int64_t> m, std::size_t k) {
  if (k == 0) return 1;
  if (k > 20) throw argument_error("determinant dimension too large");
  // minor[mask] = det of the last popcount(mask) rows restricted to columns in mask
  std::vector<Int128> minor(std::size_t{1} << k, 0);
  minor[0] = 1;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    const std::size_t row = k - static_cast<std::size_t>(std::popcount(mask));
    Int128 acc = 0;
    int position = 0;
    for (std::size_t c = 0; c < k; ++c) {
      if (!(mask >> c & 1)) continue;
      const Int128 term = static_cast<Int128>(m[row * k + c]) * minor[mask & ~(1u << c)];
      acc += (position & 1) ? -term : term;
      ++position;
    }
    minor[mask] = acc;
  }
  return minor[(std::size_t{1} << k) - 1];
}

/// n integer points in Z^d and a query point.
struct PointConfig {
  std::uint32_t d = 0;
  std::vector<std::vector<std::int64_t>> points;
  std::vector<std::int64_t> query;

  std::uint32_t n() const { return static_cast<std::uint32_t>(points.size()); }
};

inline constexpr std::int64_t max_abs_coordinate = std::int64_t{1} << 60;

namespace detail {

inline std::string subset_name(std::span<const Vertex> ids) {
  std::string s = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? "," : "") + std::to_string(ids[i]);
  return s + "}";
}

// Fills rows (p_id - x) for the given ids into m (row-major, ids.size() x d).
inline void difference_rows(const PointConfig& cfg, std::span<const Vertex> ids, std::vector<std::int64_t>& m) {
  const std::size_t d = cfg.d;
  m.resize(ids.size() * d);
  for (std::size_t r = 0; r < ids.size(); ++r)
    for (std::size_t c = 0; c < d; ++c) m[r * d + c] = cfg.points[ids[r]][c] - cfg.query[c];
}

}  // namespace detail

/// Shape and magnitude checks: dimensions agree, points distinct, and
/// d! * (max coordinate difference)^d < 2^126 so determinants are exact.
inline void check_point_config_shape(const PointConfig& cfg) {
  if (cfg.d < 2) throw argument_error("point config needs d >= 2");
  if (cfg.n() < cfg.d) throw argument_error("point config needs at least d points");
  if (cfg.query.size() != cfg.d) throw argument_error("query point has wrong dimension");
  std::int64_t spread = 0;
  for (const auto& p : cfg.points) {
    if (p.size() != cfg.d) throw argument_error("point has wrong dimension");
    for (std::size_t c = 0; c < cfg.d; ++c) {
      if (p[c] > max_abs_coordinate || p[c] < -max_abs_coordinate || cfg.query[c] > max_abs_coordinate ||
          cfg.query[c] < -max_abs_coordinate)
        throw size_error("coordinate magnitude exceeds 2^60");
      const std::int64_t diff = p[c] - cfg.query[c];
      spread = std::max(spread, diff < 0 ? -diff : diff);
    }
  }
  unsigned __int128 bound = 1;
  const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 126;
  for (std::uint32_t i = 1; i <= cfg.d; ++i) {
    bound *= i;
    if (spread != 0) {
      if (bound > limit / static_cast<unsigned __int128>(spread))
        throw size_error("coordinates too large for exact determinants in dimension " + std::to_string(cfg.d));
      bound *= static_cast<unsigned __int128>(spread);
    }
    if (bound >= limit)
      throw size_error("coordinates too large for exact determinants in dimension " + std::to_string(cfg.d));
  }
  for (std::size_t i = 0; i < cfg.points.size(); ++i)
    for (std::size_t j = i + 1; j < cfg.points.size(); ++j)
      if (cfg.points[i] == cfg.points[j])
        throw degeneracy_error("points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
}

/// Sign of det[(p_i - x)] over the sorted ids; throws on a zero determinant.
inline Sign orientation_sign(const PointConfig& cfg, std::span<const Vertex> ids) {
  std::vector<std::int64_t> m;
  detail::difference_rows(cfg, ids, m);
  const int s = sign_of(exact_determinant(m, cfg.d));
  if (s == 0)
    throw degeneracy_error("degenerate subset " + detail::subset_name(ids) + ": query point lies on its hyperplane");
  return s > 0 ? Sign::plus : Sign::minus;
}

/// The d-tournament orienting each d-subset by the side of it the query lies on.
inline Tournament geometric_induce(const PointConfig& cfg) {
  check_point_config_shape(cfg);
  TournamentBuilder b(cfg.d, cfg.n());
  std::vector<Vertex> s(cfg.d);
  for (std::uint32_t i = 0; i < cfg.d; ++i) s[i] = i;
  std::uint64_t rank = 0;
  do {
    b.set_sign_at(rank++, orientation_sign(cfg, s));
  } while (next_colex(s, cfg.n()));
  return b.seal();
}

/// Full validation: shape checks plus a nonzero determinant for every d-subset.
inline void validate_point_config(const PointConfig& cfg) { (void)geometric_induce(cfg); }

/// True iff the query lies strictly inside the simplex on the given d+1 ids:
/// the signed determinants (-1)^i det[(p_j - x)]_{j != i} share one sign.
inline bool point_in_simplex(const PointConfig& cfg, const KSubset& simplex) {
  if (simplex.size() != cfg.d + 1) throw argument_error("simplex needs d+1 vertices");
  if (simplex.back() >= cfg.n()) throw argument_error("vertex id out of range");
  std::vector<std::int64_t> m;
  std::vector<Vertex> rows;
  int common = 0;
  for (std::size_t i = 0; i <= cfg.d; ++i) {
    rows.clear();
    for (std::size_t j = 0; j <= cfg.d; ++j)
      if (j != i) rows.push_back(simplex[j]);
    detail::difference_rows(cfg, rows, m);
    int s = sign_of(exact_determinant(m, cfg.d));
    if (s == 0) throw degeneracy_error("degenerate subset " + detail::subset_name(rows));
    if (i & 1) s = -s;
    if (common == 0)
      common = s;
    else if (s != common)
      return false;
  }
  return true;
}

/// Number of (d+1)-subsets whose simplex strictly contains the query.
inline std::uint64_t count_containing_simplices(const PointConfig& cfg) {
  std::vector<Vertex> s(cfg.d + 1);
  for (std::uint32_t i = 0; i <= cfg.d; ++i) s[i] = i;
  if (cfg.n() < cfg.d + 1) return 0;
  std::uint64_t hits = 0;
  do {
    hits += point_in_simplex(cfg, KSubset(s));
  } while (next_colex(s, cfg.n()));
  return hits;
}

/// Text format: "d n", then n lines of d integers, then the query line.
inline PointConfig parse_point_config(std::istream& in) {
  PointConfig cfg;
  long long d = 0, n = 0;
  if (!(in >> d >> n)) throw format_error("point config: expected 'd n' header");
  if (d < 2 || d > 20 || n < 0 || n > 1'000'000) throw format_error("point config: bad header values");
  cfg.d = static_cast<std::uint32_t>(d);
  auto read_point = [&](const char* what) {
    std::vector<std::int64_t> p(cfg.d);
    for (auto& c : p) {
      long long v;
      if (!(in >> v)) throw format_error(std::string("point config: truncated ") + what);
      c = v;
    }
    return p;
  };
  cfg.points.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) cfg.points.push_back(read_point("point list"));
  cfg.query = read_point("query point");
  std::string rest;
  if (in >> rest) throw format_error("point config: trailing data");
  return cfg;
}

inline PointConfig parse_point_config(const std::string& text) {
  std::istringstream in(text);
  return parse_point_config(in);
}

inline std::string format_point_config(const PointConfig& cfg) {
  std::ostringstream out;
  out << cfg.d << ' ' << cfg.n() << '\n';
  auto line = [&](const std::vector<std::int64_t>& p) {
    for (std::size_t c = 0; c < p.size(); ++c) out << (c ? " " : "") << p[c];
    out << '\n';
  };
  for (const auto& p : cfg.points) line(p);
  line(cfg.query);
  return out.str();
}

/// Draws n points uniformly from [-bound, bound]^d and a query near the
/// origin, redrawing until the configuration is in general position.
inline PointConfig random_point_config(std::uint32_t d, std::uint32_t n, std::int64_t bound, Seed seed,
                                       std::int64_t query_bound = 10) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    CounterRng rng(seed.value, attempt);
    PointConfig cfg;
    cfg.d = d;
    auto coord = [&](std::int64_t b) {
      return static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * b + 1))) - b;
    };
    cfg.points.resize(n, std::vector<std::int64_t>(d));
    for (auto& p : cfg.points)
      for (auto& c : p) c = coord(bound);
    cfg.query.resize(d);
    for (auto& c : cfg.query) c = coord(query_bound);
    try {
      validate_point_config(cfg);
      return cfg;
    } catch (const degeneracy_error&) {
      if (attempt > 10'000) throw;
    }
  }
}

}  // namespace hot
