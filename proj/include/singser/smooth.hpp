// Smooth-weighted analogues of the sharp-cutoff sums: exponential sums with a
// C-infinity bump attached, their Poisson/Fourier main terms, and the smoothed
// correlation sums whose expansions replace boundary effects by Mellin data.
//
// Weight conventions. A weight is a nonnegative C-infinity bump of compact
// support. The built-in family is
//
//   f(x) = c * exp(-1 / ((x - a)(b - x)))   on (a, b), zero elsewhere,
//
// extended by reflection (x -> f(-x), support (-b, -a)) so that difference
// supports can be placed on either side of the origin. Transforms:
//
//   fourier(f, xi) = integral f(x) e(-x xi) dx,        e(t) = exp(2 pi i t)
//   mellin(f, s)   = integral_{x>0} x^{s-1} f(x) dx
//
// Mellin integrals always run over the positive axis only; a weight whose
// support lies in x <= 0 has mellin identically zero.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "singser/apsums.hpp"
#include "singser/singular.hpp"

namespace singser {

// Compactly supported bump with closed-form first and second derivatives.
// Instances are cheap value types; the transform caches below hold the
// expensive integrals.
class SmoothWeight {
 public:
  // Bump on (a, b) with peak amplitude scale c. Requires a < b, c > 0.
  static SmoothWeight bump(double a, double b, double c);

  // The weight x -> f(-x), supported on (-hi, -lo).
  SmoothWeight reflected() const;

  double lo() const { return lo_; }
  double hi() const { return hi_; }

  double operator()(double x) const;
  double deriv(double x) const;
  double second_deriv(double x) const;

 private:
  SmoothWeight(double a, double b, double c, bool flip)
      : a_(a), b_(b), amp_(c), flip_(flip), lo_(flip ? -b : a),
        hi_(flip ? -a : b) {}

  double a_, b_, amp_;
  bool flip_;
  double lo_, hi_;
};

// Uncached transforms. Each call runs the adaptive quadrature from scratch.
std::complex<double> fourier(const SmoothWeight& f, double xi);

// mellin(f, s, order) integrates x^{s-1} times the order-th derivative of f
// (order 0, 1, or 2) over x > 0.
double mellin(const SmoothWeight& f, double s, int order = 0);

// Pointwise convolution (f1 * f2)(x) = integral f1(t) f2(x - t) dt and its
// derivative d/dx (f1 * f2) = f1 * f2'.
double convolution(const SmoothWeight& f1, const SmoothWeight& f2, double x);
double convolution_deriv(const SmoothWeight& f1, const SmoothWeight& f2,
                         double x);

// Memoizing wrapper around the transforms of one weight. Thread safe; repeat
// queries at the same argument are served from the table, so sweep loops can
// share one cache across h values.
class TransformCache {
 public:
  explicit TransformCache(const SmoothWeight& f) : f_(f) {}

  const SmoothWeight& weight() const { return f_; }

  std::complex<double> fourier_at(double xi) const;
  double mellin_at(double s, int order = 0) const;

 private:
  SmoothWeight f_;
  mutable std::mutex mu_;
  mutable std::map<double, std::complex<double>> fourier_;
  mutable std::map<std::pair<double, int>, double> mellin_;
};

// Weighted exponential sum E_{f,h}(alpha) = sum_m f(m/h) e(m alpha), the sum
// running over the integers in the support window (lo*h, hi*h).
std::complex<double> E_fh(const SmoothWeight& f, std::int64_t h, double alpha);

// Same sum for an arbitrary weight function given by a callable on [lo, hi].
// Used for pointwise products of bumps, which are not bumps themselves.
std::complex<double> E_fh_generic(const std::function<double(double)>& f,
                                  double lo, double hi, std::int64_t h,
                                  double alpha);

// Poisson main term h * fourier(f, -h * abar), where abar is the
// representative of alpha in [-1/2, 1/2). The true sum differs from this by
// O(h^{-A}) for every A once h * dist(alpha, Z) is bounded.
std::complex<double> E_fh_poisson(const SmoothWeight& f, std::int64_t h,
                                  double alpha);

// Diagonal average sum_{mu=0}^{m-1} E_{f1,h}(mu/m + alpha) E_{f2,h}(mu/m +
// alpha). Reported against the envelope m * h^{-2} * min(m, h)^3 by the
// harness; this routine only computes the sum.
std::complex<double> mu_average_diag(const SmoothWeight& f1,
                                     const SmoothWeight& f2, std::int64_t m,
                                     std::int64_t h, double alpha);

// Smoothed two-term tally S(f, h) = sum_{m >= 1} f(m/h) S({0, m}) with the
// two-term singular series as arithmetic weight. Truncation at prime_limit
// enters through the two-term tail bounds.
SingularValue S_fh_brute(const SmoothWeight& f, std::int64_t h,
                         std::uint64_t prime_limit);

// Expansion of S(f, h): linear term h * mellin(f, 1), log term
// -(1/2) mellin(f', 1) log h (identically zero for compactly supported
// weights; degenerate is set and the ratio diagnostic skipped), and constant
// term -(1/2) mellin(f, 0). The remainder decays like h^{-1/2} up to
// epsilon powers.
ClosedFormTerms S_fh_closed(const SmoothWeight& f, std::int64_t h);

// Smoothed pair correlation
//
//   V2(f1, f2; h) = -h^2 fourier(f1, 0) fourier(f2, 0)
//                   + sum_{m >= 1} S({0, m}) h (f1 * f2)(m / h)
//                   + h (f1 * f2)(0),
//
// the semi-exact bridge: the m-sum keeps exact two-term values while the
// quadratic term and diagonal come from transforms. Arrange the supports so
// the difference support of (f1, f2) lies in x > 0; the m-sum then captures
// the whole correlation.
SingularValue V2_smooth_semi_exact(const SmoothWeight& f1,
                                   const SmoothWeight& f2, std::int64_t h,
                                   std::uint64_t prime_limit);

// Closed form for V2(f1, f2; h): quadratic term
// (-fourier(f1,0) fourier(f2,0) + mellin(f1*f2, 1)) h^2, which cancels to
// quadrature error, and log term -(1/2) mellin((f1*f2)', 1) h log h, zero for
// difference supports away from the origin (degenerate set as in S_fh_closed).
// next_order_diagnostic carries the order-h coefficient
// h * ((f1*f2)(0) - (1/2) mellin(f1*f2, 0)), excluded from total.
ClosedFormTerms V2_smooth_closed(const SmoothWeight& f1,
                                 const SmoothWeight& f2, std::int64_t h);

// Smoothed k-level correlation over distinct integer tuples,
//
//   R_k(f; h) = sum_{h_1, ..., h_k distinct} prod_i f_i(h_i / h)
//               * S_0({h_1, ..., h_k}),
//
// with the centered series S_0 expanded by inclusion-exclusion exactly as in
// the sharp-cutoff R_k. Guarded at 10^7 tuples; k <= 4.
SingularValue R_k_smooth_brute(const std::vector<SmoothWeight>& f,
                               std::int64_t h, std::uint64_t prime_limit,
                               int threads = 1);

// Main-term prediction for R_k(f; h): sum over partitions of the index set
// into j doubletons plus singletons, weighted (-1)^j, each doubleton
// contributing h * mellin(f_i f_j, 1) * (squarefree Mertens factor) and the
// singletons contributing perfect matchings of V2_smooth_closed totals. Odd
// k gives 0.
double R_k_smooth_main(const std::vector<SmoothWeight>& f, std::int64_t h);

}  // namespace singser
