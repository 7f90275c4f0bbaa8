// Checks for the smooth-weight layer: bump evaluation, transforms, weighted
// exponential sums, and the smoothed correlation evaluators.  Oracles are
// direct summation loops and hand-assembled Mellin/Fourier identities.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "singser/apsums.hpp"
#include "singser/errors.hpp"
#include "singser/quadrature.hpp"
#include "singser/singular.hpp"
#include "singser/smooth.hpp"
#include "singser/summation.hpp"

using namespace singser;
using std::complex;
using i64 = std::int64_t;

TEST_CASE("bump weights evaluate the closed profile") {
  auto f = SmoothWeight::bump(1, 2, 1);
  CHECK(f.lo() == 1.0);
  CHECK(f.hi() == 2.0);
  // midpoint: exp(-1/((w/2)^2)) with width w = b - a
  CHECK(f(1.5) == doctest::Approx(std::exp(-4.0)).epsilon(1e-14));
  CHECK(f(1.0) == 0.0);
  CHECK(f(2.0) == 0.0);
  CHECK(f(0.99) == 0.0);
  CHECK(f(2.01) == 0.0);
  CHECK(f(1.25) > 0.0);

  auto g = SmoothWeight::bump(2, 3, 0.7);
  CHECK(g(2.5) == doctest::Approx(0.7 * std::exp(-4.0)).epsilon(1e-14));

  auto r = f.reflected();
  CHECK(r.lo() == -2.0);
  CHECK(r.hi() == -1.0);
  CHECK(r(-1.5) == f(1.5));
  CHECK(r(-1.2) == f(1.2));
  CHECK(r(1.5) == 0.0);

  CHECK_THROWS_AS(SmoothWeight::bump(2, 2, 1), DomainError);
  CHECK_THROWS_AS(SmoothWeight::bump(3, 2, 1), DomainError);
  CHECK_THROWS_AS(SmoothWeight::bump(1, 2, 0), DomainError);
  CHECK_THROWS_AS(SmoothWeight::bump(1, 2, -1), DomainError);
}

TEST_CASE("bump derivatives match central differences") {
  auto f = SmoothWeight::bump(1, 2, 1);
  const double eps = 1e-6;
  for (double x : {1.2, 1.5, 1.8}) {
    double fd = (f(x + eps) - f(x - eps)) / (2.0 * eps);
    CHECK(f.deriv(x) == doctest::Approx(fd).epsilon(1e-5));
    double sd = (f.deriv(x + eps) - f.deriv(x - eps)) / (2.0 * eps);
    CHECK(f.second_deriv(x) == doctest::Approx(sd).epsilon(1e-4));
  }
  CHECK(f.deriv(0.5) == 0.0);
  CHECK(f.second_deriv(2.5) == 0.0);

  auto r = f.reflected();
  for (double x : {1.2, 1.6}) {
    CHECK(r.deriv(-x) == doctest::Approx(-f.deriv(x)).epsilon(1e-12));
    CHECK(r.second_deriv(-x) == doctest::Approx(f.second_deriv(x)).epsilon(1e-12));
  }
}

TEST_CASE("transforms: Fourier at zero is the mass, Mellin of f' vanishes") {
  auto f = SmoothWeight::bump(1, 2, 1);
  double mass =
      integrate_segmented([&](double x) { return f(x); }, split_points(1, 2), 1e-12);
  CHECK(fourier(f, 0.0).real() == doctest::Approx(mass).epsilon(1e-9));
  CHECK(std::abs(fourier(f, 0.0).imag()) < 1e-12);
  CHECK(mellin(f, 1.0) == doctest::Approx(mass).epsilon(1e-9));
  // total derivative of a compactly supported weight integrates to zero
  CHECK(std::abs(mellin(f, 1.0, 1)) < 1e-8);

  // a weight supported in x < 0 has no positive-axis Mellin mass
  auto r = f.reflected();
  CHECK(mellin(r, 1.0) == 0.0);
  CHECK(mellin(r, 0.0) == 0.0);

  CHECK_THROWS_AS(mellin(f, 1.0, 3), DomainError);
  // support straddling the origin makes x^{s-1} non-integrable for s < 1
  CHECK_THROWS_AS(mellin(SmoothWeight::bump(-1, 1, 1), 0.0), DomainError);
}

TEST_CASE("transform cache replays the uncached integrals") {
  auto f = SmoothWeight::bump(1, 2, 1);
  TransformCache cache(f);
  CHECK(cache.fourier_at(0.37) == fourier(f, 0.37));
  CHECK(cache.fourier_at(0.37) == cache.fourier_at(0.37));
  CHECK(cache.mellin_at(0.0) == mellin(f, 0.0));
  CHECK(cache.mellin_at(1.0, 1) == mellin(f, 1.0, 1));
  CHECK(cache.weight()(1.5) == f(1.5));
}

TEST_CASE("convolution is symmetric and carries the product mass") {
  auto f1 = SmoothWeight::bump(1, 2, 1);
  auto f2 = SmoothWeight::bump(0.5, 1.5, 0.8);
  for (double x : {1.7, 2.3, 2.9})
    CHECK(convolution(f1, f2, x) == doctest::Approx(convolution(f2, f1, x)).epsilon(1e-10));
  CHECK(convolution(f1, f2, 1.49) == 0.0);
  CHECK(convolution(f1, f2, 3.51) == 0.0);
  CHECK(convolution(f1, f2, 2.5) > 0.0);

  double mass1 =
      integrate_segmented([&](double x) { return f1(x); }, split_points(1, 2));
  double mass2 =
      integrate_segmented([&](double x) { return f2(x); }, split_points(0.5, 1.5));
  double conv_mass = integrate_segmented(
      [&](double x) { return convolution(f1, f2, x); }, split_points(1.5, 3.5), 1e-9);
  CHECK(conv_mass == doctest::Approx(mass1 * mass2).epsilon(1e-7));

  const double eps = 1e-5;
  for (double x : {2.0, 2.6}) {
    double fd = (convolution(f1, f2, x + eps) - convolution(f1, f2, x - eps)) /
                (2.0 * eps);
    CHECK(convolution_deriv(f1, f2, x) == doctest::Approx(fd).epsilon(1e-4));
  }
}

TEST_CASE("weighted exponential sums match the direct loop") {
  auto f = SmoothWeight::bump(1, 2, 1);
  const i64 h = 137;
  for (double alpha : {0.0, 0.37, -0.21, 0.5}) {
    complex<double> direct = 0.0;
    for (i64 m = i64(std::ceil(f.lo() * double(h)));
         m <= i64(std::floor(f.hi() * double(h))); ++m)
      direct += f(double(m) / double(h)) *
                std::polar(1.0, 2.0 * M_PI * double(m) * alpha);
    CHECK(std::abs(E_fh(f, h, alpha) - direct) < 1e-10);
    CHECK(std::abs(E_fh_generic([&](double x) { return f(x); }, f.lo(), f.hi(),
                                h, alpha) -
                   E_fh(f, h, alpha)) < 1e-12);
  }
  CHECK_THROWS_AS(E_fh(f, 0, 0.0), DomainError);
}

TEST_CASE("Poisson main term nails the weighted sum away from wrap-around") {
  auto f = SmoothWeight::bump(1, 2, 1);
  CHECK(E_fh_poisson(f, 500, 0.0).real() ==
        doctest::Approx(500.0 * fourier(f, 0.0).real()).epsilon(1e-12));
  // at phase 0 the aliasing error is the tail of a superpolynomially
  // decaying Fourier transform
  CHECK(std::abs(E_fh(f, 500, 0.0) - E_fh_poisson(f, 500, 0.0)) < 1e-10);
  // generic interior phase: still within the coarse envelope
  CHECK(std::abs(E_fh(f, 400, 0.37) - E_fh_poisson(f, 400, 0.37)) < 0.05);
  // the representative is reduced into [-1/2, 1/2), so shifting by an
  // integer cannot move the prediction
  CHECK(std::abs(E_fh_poisson(f, 300, 0.3 + 1.0) - E_fh_poisson(f, 300, 0.3)) <
        1e-9);
}

TEST_CASE("mu-average diagonal collapses at m = 1 and is real on equal weights") {
  auto f1 = SmoothWeight::bump(1, 2, 1);
  auto f2 = SmoothWeight::bump(0.5, 1.5, 0.8);
  auto single = mu_average_diag(f1, f2, 1, 100, 0.25);
  auto product = E_fh(f1, 100, 0.25) * E_fh(f2, 100, 0.25);
  CHECK(std::abs(single - product) < 1e-12);

  // equal weights pair mu with m - mu into conjugates
  auto diag = mu_average_diag(f1, f1, 8, 100, 0.0);
  CHECK(std::abs(diag.imag()) < 1e-10);

  CHECK_THROWS_AS(mu_average_diag(f1, f2, 0, 100, 0.0), DomainError);
}

TEST_CASE("smoothed tally brute force equals the weighted two-term sum") {
  auto f = SmoothWeight::bump(1, 2, 1);
  const i64 h = 50;
  const std::uint64_t L = 100'000;
  auto brute = S_fh_brute(f, h, L);
  CompensatedSum direct;
  for (i64 m = 1; m <= 2 * h; ++m) {
    double w = f(double(m) / double(h));
    if (w == 0.0) continue;
    direct.add(w * two_term_exact(m, 1, L).value);
  }
  CHECK(brute.value == doctest::Approx(direct.value()).epsilon(1e-12));
  CHECK_THROWS_AS(S_fh_brute(f, 0, L), DomainError);
}

TEST_CASE("smoothed tally closed form assembles its Mellin data") {
  auto f = SmoothWeight::bump(1, 2, 1);
  auto terms = S_fh_closed(f, 1000);
  CHECK(terms.linear_term == doctest::Approx(1000.0 * mellin(f, 1.0)).epsilon(1e-12));
  CHECK(terms.constant_term == doctest::Approx(-0.5 * mellin(f, 0.0)).epsilon(1e-10));
  // the log coefficient is an exact total derivative, so the formula is
  // flagged degenerate and the term is quadrature noise
  CHECK(terms.degenerate);
  CHECK(std::abs(terms.log_term) < 1e-7);
  CHECK(terms.total == doctest::Approx(terms.linear_term + terms.log_term +
                                       terms.constant_term)
                           .epsilon(1e-14));

  auto refl = S_fh_closed(f.reflected(), 100);
  CHECK(refl.degenerate);
  CHECK(refl.total == 0.0);
}

TEST_CASE("smooth pair correlation: semi-exact equals the double sum") {
  auto f1 = SmoothWeight::bump(2, 4, 1);
  auto f2 = SmoothWeight::bump(0.5, 1.5, 0.8);
  const i64 h = 200;
  const double hd = double(h);
  const std::uint64_t L = 1'000'000;

  // pairs (m1, m2) with f2 placed on the negative side, so the two-term
  // argument m1 - m2 sweeps the sum support of the pair
  CompensatedSum ds;
  for (i64 m1 = i64(std::ceil(f1.lo() * hd)); m1 <= i64(std::floor(f1.hi() * hd));
       ++m1) {
    double w1 = f1(double(m1) / hd);
    if (w1 == 0.0) continue;
    for (i64 m2 = i64(std::ceil(-f2.hi() * hd));
         m2 <= i64(std::floor(-f2.lo() * hd)); ++m2) {
      double w2 = f2(double(-m2) / hd);
      if (w2 == 0.0) continue;
      ds.add(w1 * w2 * two_term_exact(m1 - m2, 1, L).value);
    }
  }
  double quad = -hd * hd * fourier(f1, 0.0).real() * fourier(f2, 0.0).real();
  auto semi = V2_smooth_semi_exact(f1, f2, h, L);
  CHECK(std::abs(semi.value - (quad + ds.value())) <=
        1e-6 * (1.0 + std::abs(quad)));
}

TEST_CASE("smooth pair correlation: negative supports leave only the square term") {
  auto g = SmoothWeight::bump(1, 2, 1).reflected();
  const std::uint64_t L = 100'000;
  auto semi = V2_smooth_semi_exact(g, g, 100, L);
  double expect = -100.0 * 100.0 * fourier(g, 0.0).real() * fourier(g, 0.0).real();
  CHECK(semi.value == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("smooth pair correlation: closed form cancels its quadratic term") {
  auto f1 = SmoothWeight::bump(2, 4, 1);
  auto f2 = SmoothWeight::bump(0.5, 1.5, 0.8);
  auto terms = V2_smooth_closed(f1, f2, 800);
  // -fourier(f1,0) fourier(f2,0) + mellin(f1*f2, 1) is zero up to quadrature,
  // but the cancellation happens after scaling by h^2
  CHECK(std::abs(terms.quadratic_term) < 0.05);
  CHECK(terms.degenerate);
  CHECK(std::abs(terms.log_term) < 0.01);
  CHECK_THROWS_AS(V2_smooth_closed(f1, f2, 1), DomainError);
}

TEST_CASE("smooth correlation brute force equals an independent double sum") {
  auto f1 = SmoothWeight::bump(1, 2, 1);
  auto g = SmoothWeight::bump(0.5, 1.5, 0.8).reflected();
  const i64 h = 60;
  const double hd = double(h);
  const std::uint64_t L = 100'000;
  auto brute = R_k_smooth_brute({f1, g}, h, L);
  CompensatedSum direct;
  for (i64 m1 = -200; m1 <= 200; ++m1) {
    double w1 = f1(double(m1) / hd);
    if (w1 == 0.0) continue;
    for (i64 m2 = -200; m2 <= 200; ++m2) {
      if (m2 == m1) continue;
      double w2 = g(double(m2) / hd);
      if (w2 == 0.0) continue;
      direct.add(w1 * w2 * (two_term_exact(m1 - m2, 1, L).value - 1.0));
    }
  }
  CHECK(std::abs(brute.value - direct.value()) < 1e-10);

  // slot order cannot matter
  auto swapped = R_k_smooth_brute({g, f1}, h, L);
  CHECK(brute.value == swapped.value);

  // a single slot sums the centered singleton series, which is zero
  CHECK(R_k_smooth_brute({f1}, h, L).value == 0.0);

  CHECK_THROWS_AS(R_k_smooth_brute(std::vector<SmoothWeight>(5, f1), h, L),
                  CapacityError);
  CHECK_THROWS_AS(R_k_smooth_brute(std::vector<SmoothWeight>(4, f1), 2000, L),
                  CapacityError);
}

TEST_CASE("smooth main term: odd orders vanish, pairs collapse to the closed form") {
  auto f1 = SmoothWeight::bump(2, 4, 1);
  auto f2 = SmoothWeight::bump(0.5, 1.5, 0.8);
  const i64 h = 400;
  CHECK(R_k_smooth_main({f1}, h) == 0.0);
  CHECK(R_k_smooth_main({f1, f1, f1}, h) == 0.0);

  // disjoint supports: the pointwise product is zero, so no doubleton term
  CHECK(R_k_smooth_main({f1, f2}, h) ==
        doctest::Approx(V2_smooth_closed(f1, f2, h).total).epsilon(1e-12));

  // overlapping supports subtract h * mellin(f^2, 1) * M1 once
  double m1 = mertens_like_sums(h, 1).first;
  double ff = integrate_segmented([&](double x) { return f1(x) * f1(x); },
                                  split_points(2, 4));
  double X = double(h) * ff * m1;
  double v2 = V2_smooth_closed(f1, f1, h).total;
  CHECK(R_k_smooth_main({f1, f1}, h) == doctest::Approx(v2 - X).epsilon(1e-9));

  // k = 4 equal weights: 3 (V2 - X)^2 from the partition/matching assembly
  double quartic = R_k_smooth_main({f1, f1, f1, f1}, h);
  CHECK(quartic == doctest::Approx(3.0 * (v2 - X) * (v2 - X)).epsilon(1e-9));
  CHECK(quartic / (3.0 * X * X) == doctest::Approx(1.0).epsilon(1e-3));
}
