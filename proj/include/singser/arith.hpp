#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "singser/errors.hpp"

namespace singser {

// Prime factorization as (prime, exponent) pairs, primes ascending.
struct Factorization {
  std::vector<std::pair<std::int64_t, int>> factors;

  bool squarefree() const {
    for (const auto& [p, e] : factors)
      if (e > 1) return false;
    return true;
  }
};

// Trial division; intended for the small moduli and shifts that arise here
// (n up to ~1e12).  n = 0 is rejected, negative n is factored as |n|.
Factorization factorize(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);

// Moebius function; 0 on non-squarefree n.
int moebius(std::int64_t n);

// log p when n is a prime power p^e, else 0.  n = 0 rejected.
double von_mangoldt(std::int64_t n);

// Ramanujan sum c_q(m) = mu(q/g) phi(q) / phi(q/g) with g = gcd(q, |m|);
// exact in integers.  c_q(0) = phi(q).
std::int64_t ramanujan_sum(std::int64_t q, std::int64_t m);

// Largest n with n*n <= x.
std::int64_t isqrt(std::int64_t x);

// e(num/den) = exp(2 pi i num/den), num reduced mod den.  Quarter-turn
// arguments are returned exactly so parity tests like chi(-1) = -1 hold in
// floating point.
std::complex<double> unit_root(std::int64_t num, std::int64_t den);

}  // namespace singser
