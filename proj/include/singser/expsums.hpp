#pragma once

#include <complex>
#include <cstdint>

namespace singser {

// Reduced rational phase a/q with 1 <= a <= q; (1,1) stands for phase 0.
struct RationalPhase {
  std::int64_t a = 1;
  std::int64_t q = 1;

  // Any integer pair with q >= 1; reduces a mod q and cancels the gcd.
  static RationalPhase of(std::int64_t a, std::int64_t q);
  bool zero() const { return q == 1; }
  double real() const { return double(a) / double(q); }
};

// Sum of e(m a/q) over m <= h, m = c (mod r), in closed geometric form.
// The degenerate ratio (q | r a) is detected by exact integer arithmetic,
// where the sum collapses to (term count) * e(c a / q).
std::complex<double> E_rc(const RationalPhase& phase, std::int64_t h,
                          std::int64_t r, std::int64_t c);

// Unrestricted sum over m <= h (r = 1 specialization).
std::complex<double> E_full(const RationalPhase& phase, std::int64_t h);

// Majorant (1/r) sum_{n=1}^{r} min(h, 1/||alpha + n/r||); dominates
// |E_rc(alpha)| for every class c.
double F_r(double alpha, std::int64_t h, std::int64_t r);

// Left-hand side of the odd-term bound: the sum over k-tuples of divisors
// of q (each > 1, the tuple NOT consisting of exactly-paired values) of
//   prod mu(q_i)^2/phi(q_i) * sum over coprime a_i with sum a_i/q_i integral
//   of prod F_r(a_i/q_i).
// Exact enumeration; q squarefree and small, k <= 4.
double oddterm_diagnostic(std::int64_t q, std::int64_t h, std::int64_t r,
                          int k);

}  // namespace singser
