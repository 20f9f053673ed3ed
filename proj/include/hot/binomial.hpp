#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hot/errors.hpp"

namespace hot {

/// Exact C(n, k) in 64 bits; throws size_error on overflow.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step.
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX)
      throw size_error("binomial C(" + std::to_string(n) + "," + std::to_string(k) +
                       ") overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

/// Pascal table for 0 <= n <= max_n, 0 <= k <= max_k. Entries that overflow
/// 64 bits saturate at UINT64_MAX; callers that need them check `saturated`.
class BinomialTable {
 public:
  BinomialTable() = default;

  BinomialTable(std::uint32_t max_n, std::uint32_t max_k)
      : max_n_(max_n), max_k_(max_k), rows_(max_k + 1) {
    table_.assign(static_cast<std::size_t>(max_n + 1) * rows_, 0);
    for (std::uint32_t n = 0; n <= max_n; ++n) {
      at(n, 0) = 1;
      for (std::uint32_t k = 1; k <= max_k && k <= n; ++k) {
        const std::uint64_t a = at(n - 1, k - 1);
        const std::uint64_t b = (k <= n - 1) ? at(n - 1, k) : 0;
        at(n, k) = (a > UINT64_MAX - b) ? UINT64_MAX : a + b;
      }
    }
  }

  std::uint64_t operator()(std::uint32_t n, std::uint32_t k) const {
    return table_[static_cast<std::size_t>(n) * rows_ + k];
  }

  static bool saturated(std::uint64_t v) { return v == UINT64_MAX; }

  std::uint32_t max_n() const { return max_n_; }
  std::uint32_t max_k() const { return max_k_; }

 private:
  std::uint64_t& at(std::uint32_t n, std::uint32_t k) {
    return table_[static_cast<std::size_t>(n) * rows_ + k];
  }

  std::uint32_t max_n_ = 0;
  std::uint32_t max_k_ = 0;
  std::size_t rows_ = 1;
  std::vector<std::uint64_t> table_;
};

}  // namespace hot
