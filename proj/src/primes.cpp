#include "singser/primes.hpp"

#include <algorithm>
#include <cmath>

namespace singser {
namespace detail {

std::vector<std::uint32_t> small_sieve(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  const std::uint64_t n = limit;
  std::vector<std::uint8_t> composite((n + 1) / 2, 0);  // odd numbers
  primes.push_back(2);
  for (std::uint64_t i = 3; i * i <= n; i += 2) {
    if (composite[i / 2]) continue;
    for (std::uint64_t m = i * i; m <= n; m += 2 * i) composite[m / 2] = 1;
  }
  for (std::uint64_t i = 3; i <= n; i += 2)
    if (!composite[i / 2]) primes.push_back(static_cast<std::uint32_t>(i));
  return primes;
}

}  // namespace detail

std::vector<std::uint32_t> sieve_primes(std::uint64_t limit) {
  if (limit > max_table_limit)
    throw CapacityError("prime table limit exceeds capacity");
  std::vector<std::uint32_t> primes;
  if (limit >= 2) {
    // Reserve using pi(x) ~ x/(log x - 1).
    const double x = static_cast<double>(limit);
    if (limit >= 17)
      primes.reserve(static_cast<std::size_t>(x / (std::log(x) - 1.1)) + 16);
    for_each_prime(limit, [&](std::uint64_t p) {
      primes.push_back(static_cast<std::uint32_t>(p));
    });
  }
  return primes;
}

}  // namespace singser
