#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "singser/errors.hpp"

namespace singser {

// Hard ceiling for sieving requests.  Streaming enumeration stays within a
// fixed-size segment buffer, but anything past this bound is a configuration
// mistake rather than a real workload.
inline constexpr std::uint64_t max_sieve_limit = 1ull << 34;

// Ceiling for materialized prime tables (vector of uint32).
inline constexpr std::uint64_t max_table_limit = 1ull << 31;

namespace detail {

// Simple odd-only sieve, adequate for base primes up to ~1e8.
std::vector<std::uint32_t> small_sieve(std::uint64_t limit);

}  // namespace detail

// All primes p <= limit, ascending.
std::vector<std::uint32_t> sieve_primes(std::uint64_t limit);

// Streams primes in [2, limit] through fn(uint64_t) using a segmented sieve;
// memory stays O(sqrt(limit) + segment).
template <class Fn>
void for_each_prime(std::uint64_t limit, Fn&& fn) {
  if (limit > max_sieve_limit)
    throw CapacityError("prime enumeration limit exceeds capacity");
  if (limit < 2) return;
  fn(2ull);
  if (limit < 3) return;

  std::uint64_t root = 1;
  while ((root + 1) * (root + 1) <= limit) ++root;
  const auto base = detail::small_sieve(root);

  constexpr std::uint64_t segment = 1ull << 20;
  std::vector<std::uint8_t> composite(segment);
  // Segments cover odd numbers only: block [lo, lo + 2*segment).
  for (std::uint64_t lo = 3; lo <= limit; lo += 2 * segment) {
    const std::uint64_t hi = std::min(limit, lo + 2 * segment - 1);
    const std::uint64_t count = (hi - lo) / 2 + 1;
    std::fill(composite.begin(), composite.begin() + count, 0);
    for (std::uint32_t p : base) {
      if (p == 2) continue;
      const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
      if (pp > hi) break;
      std::uint64_t start = pp;
      if (start < lo) {
        std::uint64_t k = (lo + p - 1) / p;
        if (k % 2 == 0) ++k;  // odd multiples only
        start = k * p;
      }
      for (std::uint64_t m = start; m <= hi; m += 2 * p)
        composite[(m - lo) / 2] = 1;
    }
    for (std::uint64_t i = 0; i < count; ++i)
      if (!composite[i]) fn(lo + 2 * i);
  }
}

// Table of primes up to a fixed limit with binary-search membership.
class PrimeTable {
 public:
  explicit PrimeTable(std::uint64_t limit)
      : limit_(limit), primes_(sieve_primes(limit)) {}

  std::uint64_t limit() const { return limit_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  std::size_t count() const { return primes_.size(); }

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
};

}  // namespace singser
