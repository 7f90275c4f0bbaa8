#pragma once

#include <cstdint>
#include <vector>

#include "singser/errors.hpp"

namespace singser {

// Finite set of integers (sorted, duplicates collapsed).
class TupleSet {
 public:
  TupleSet() = default;
  explicit TupleSet(std::vector<std::int64_t> elems);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  std::int64_t diameter() const;  // max - min, 0 for size <= 1
  const std::vector<std::int64_t>& elements() const { return elems_; }

 private:
  std::vector<std::int64_t> elems_;
};

// Result of a truncated Euler product.  tail_bound bounds the change from
// extending the product past prime_limit; it is 0 when the truncation is
// provably exact (size <= 1, or a vanishing factor).
struct SingularValue {
  double value = 0.0;
  double tail_bound = 0.0;
  std::uint64_t prime_limit = 0;
};

// Number of distinct residues of H mod p.  H must be nonempty, p >= 2.
std::int64_t nu(const TupleSet& H, std::int64_t p);

// Shared machinery for evaluating many same-size tuples against one prime
// budget.  Construction streams the primes once, accumulating the log of
// the generic factor (1 - k/p) / (1 - 1/p)^k over p <= prime_limit away
// from r.  A tuple's value then only needs exact corrections at primes
// dividing some pairwise difference, so eval() costs no prime iteration.
// eval() is const and safe to call from several threads.
class SingularSeriesEvaluator {
 public:
  SingularSeriesEvaluator(int k, std::int64_t r, std::uint64_t prime_limit,
                          std::int64_t max_diameter);

  // Requires |H| = k and diameter <= max_diameter.
  SingularValue eval(const TupleSet& H) const;

  int tuple_size() const { return k_; }
  std::uint64_t prime_limit() const { return prime_limit_; }

 private:
  int k_;
  std::int64_t r_;
  std::uint64_t prime_limit_;
  std::int64_t max_diameter_;
  bool tail_zero_ = false;  // generic factor vanished at p = k past max_diameter
  double total_log_ = 0.0;  // sum of generic log factors, p > k, p away from r
  double tail_bound_factor_ = 0.0;
};

// Singular series of H restricted to primes not dividing r, truncated at
// prime_limit.  Empty and singleton H give exactly 1.  Requires
// prime_limit >= diameter.
SingularValue singular_series(const TupleSet& H, std::int64_t r,
                              std::uint64_t prime_limit);

// Inclusion-exclusion transform sum over subsets J of H of
// (-1)^{|H minus J|} S_r(J).  Subset tail bounds are aggregated.
// Size capped at 20.
SingularValue singular_series_zero(const TupleSet& H, std::int64_t r,
                                   std::uint64_t prime_limit);

// S_r({0, m}) through the closed two-element product: a cached base product
// over odd primes away from r times one rational correction per odd prime
// divisor of m.  Exact zero when m and r are both odd.  m must be nonzero.
SingularValue two_term_exact(std::int64_t m, std::int64_t r,
                             std::uint64_t prime_limit);

}  // namespace singser
