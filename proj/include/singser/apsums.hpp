#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "singser/singular.hpp"

namespace singser {

class DirichletCharacter;

// Modulus with one congruence class per tuple slot, classes in 1..r.
struct CongruenceSpec {
  std::int64_t r = 1;
  std::vector<std::int64_t> classes;

  CongruenceSpec(std::int64_t r_, std::vector<std::int64_t> classes_);
  int k() const { return int(classes.size()); }
};

// Summands of a closed-form evaluation, kept separate so harness reports
// can show the structure.  total is the sum of the five summand fields
// (character_term by its real part; the imaginary part cancels in every
// closed form here).  Fields named *_diagnostic are informational and are
// never included in total.
struct ClosedFormTerms {
  double quadratic_term = 0.0;
  double linear_term = 0.0;  // order-h summand (smooth evaluators)
  double mertens_term = 0.0;
  double log_term = 0.0;
  double constant_term = 0.0;
  std::complex<double> character_term = {0.0, 0.0};
  double total = 0.0;
  bool degenerate = false;  // a formula coefficient vanished identically
  double next_order_diagnostic = 0.0;
  double ratio_diagnostic = 0.0;

  void finalize();  // sets total from the summands
};

// Exact count of n in [lo, hi] with n = c (mod r).
std::int64_t count_in_class(std::int64_t lo, std::int64_t hi, std::int64_t c,
                            std::int64_t r);

// (prod_{p <= h^2, p not | r} (1 + 1/(p-1)) - 1,
//  prod_{p <= h^2, p not | r} (1 + 1/(p-1)^2)); cached per (h, r).
// The first component equals the squarefree divisor sum of 1/phi over
// d > 1 supported on primes <= h^2 away from r.
std::pair<double, double> mertens_like_sums(std::int64_t h, std::int64_t r);

// prod_{p|r} (1 - chi(p)/p) * prod_{p not | r, p <= limit}
//   (1 - (1-chi(p))^2/(p-1)^2), with an integral-comparison tail estimate
// (factors are 1 + O(1/(p-1)^2)).
std::complex<double> A_r_chi(std::int64_t r, const DirichletCharacter& chi,
                             std::uint64_t prime_limit,
                             double* tail_bound = nullptr);

// (phi(r)/r) (log(r/2pi) - gamma0 - sum_{p|r} log p/(p-1))
double C0(std::int64_t r);

// sum_{m <= h, m = v (mod r)} (h - m) S_r({0, m});  v = r means the zero
// class.  Exact weighted sum over two_term_exact values.
SingularValue S_rvh_brute(std::int64_t r, std::int64_t v, std::int64_t h,
                          std::uint64_t prime_limit);

// Closed form for the same sum, without the O(h^{1/2+eps}) remainder.
// Zero class: h^2/2r - (h/2)(phi(r)/r)(log(h/r) + gamma0 + log 2pi
//   + sum_{p|r} log p/(p-1) - 1).
// Nonzero v, d = (v,r), r' = r/d: h^2/2r - (h/2)(phi(r)/r) Lambda(r')/phi(r')
//   + (h/phi(r')) sum_{chi != chi0 mod r'} conj(chi)(v/d) L(0,chi) L(1,chi)
//     A_{r,chi}.
ClosedFormTerms S_rvh_closed(std::int64_t r, std::int64_t v, std::int64_t h);

// Exact evaluation of the divisor-restricted pair correlation sum: tuples
// of divisors q_i | q, q_i > 1, signed weights mu(q_i)/phi(q_i), inner sum
// over coprime a_i with sum a_i/q_i integral of prod E_{r,c_i}(a_i/q_i).
// The last a_i is solved by congruence over the common denominator q.
double V_k_direct(std::int64_t q, std::int64_t h, const CongruenceSpec& spec);

// Bridge form of V_2 at Q = primes below h^2 away from r.
// Equal classes: -h^2/r^2 + (h/r) prod_{p<=h^2, p not|r}(1 + 1/(p-1))
//   + (2/r) S_rvh_brute(r, 0, h).
// Unequal: -h^2/r^2 + (1/r)(S_rvh_brute(r, v, h) + S_rvh_brute(r, r-v, h)).
double V2_semi_exact(std::int64_t h, std::int64_t r, std::int64_t c1,
                     std::int64_t c2, std::uint64_t prime_limit);

// Closed form of V_2 at the same Q.
// Equal classes: (h/r) M1 - h (phi(r)/r^2) log h
//   + (h/r)(1 + C0(r) + phi(r)/r), with M1 = mertens_like_sums(h,r).first.
// Unequal: -h (phi(r)/(r^2 phi(r'))) Lambda(r') plus the symmetrized
// character sum (h/(r phi(r'))) sum_{chi != chi0} (conj(chi)(v/d)
//   + conj(chi)((r-v)/d)) L(0,chi) L(1,chi) A_{r,chi}, which cancels to 0
// exactly (odd chi kill the symmetrization factor, even chi kill L(0,chi)).
ClosedFormTerms V2_closed(std::int64_t h, std::int64_t r, std::int64_t c1,
                          std::int64_t c2);

// Sum of S_{0,r} over ordered tuples (n_1,...,n_k), n_i in [1,h] distinct,
// n_i = c_i (mod r).  k = 1 is exactly 0.  k = 2 runs over difference
// classes in O(h/r); k >= 3 enumerates tuples (capacity-guarded).
SingularValue R_k_brute(std::int64_t h, const CongruenceSpec& spec,
                        std::uint64_t prime_limit, int threads = 1);

// Structured main term: sum over j, partitions into j equal-class
// doubletons plus singletons, of (-1)^j ((h/r) M1)^j times the sum over
// perfect matchings of the singletons of products of V2_closed totals.
double R_k_main_structured(std::int64_t h, const CongruenceSpec& spec);

// Collapsed main term: count_equal_pairings(classes) * M(h,r)^{k/2} where
// M(h,r) = h/r - h (phi(r)/r^2)(log(h/r) + gamma0 + log 2pi
//   + sum_{p|r} log p/(p-1) - 1), the equal-class value of
// V2_closed - (h/r) M1.  At r = 1 this is -h log h + (2 - gamma0
//   - log 2pi) h.
double R_k_main_simple(std::int64_t h, const CongruenceSpec& spec);

// Collapsed per-pair main term M(h,r) above.
double pair_main_term(std::int64_t h, std::int64_t r);

// Average of S(H) over k-subsets of [1,h]; tends to 1.
double gallagher_ratio(std::int64_t h, int k, std::uint64_t prime_limit);

}  // namespace singser
