#include "singser/smooth.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "singser/combinat.hpp"
#include "singser/errors.hpp"
#include "singser/quadrature.hpp"
#include "singser/summation.hpp"

namespace singser {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676656;

// exp(-1/u) underflows to zero once 1/u > 745; cutting slightly earlier
// keeps the derivative quotients u'/u^2 and u'^2/u^4 far from overflow
// while changing the function by less than 1e-300.
constexpr double kBumpFloor = 1.5e-3;

}  // namespace

SmoothWeight SmoothWeight::bump(double a, double b, double c) {
  if (!(a < b)) throw DomainError("SmoothWeight::bump: need a < b");
  if (!(c > 0.0)) throw DomainError("SmoothWeight::bump: need c > 0");
  return SmoothWeight(a, b, c, false);
}

SmoothWeight SmoothWeight::reflected() const {
  return SmoothWeight(a_, b_, amp_, !flip_);
}

double SmoothWeight::operator()(double x) const {
  double t = flip_ ? -x : x;
  double u = (t - a_) * (b_ - t);
  if (u <= kBumpFloor) return 0.0;
  return amp_ * std::exp(-1.0 / u);
}

double SmoothWeight::deriv(double x) const {
  double t = flip_ ? -x : x;
  double u = (t - a_) * (b_ - t);
  if (u <= kBumpFloor) return 0.0;
  double up = a_ + b_ - 2.0 * t;
  double g = amp_ * std::exp(-1.0 / u) * up / (u * u);
  return flip_ ? -g : g;
}

double SmoothWeight::second_deriv(double x) const {
  double t = flip_ ? -x : x;
  double u = (t - a_) * (b_ - t);
  if (u <= kBumpFloor) return 0.0;
  double up = a_ + b_ - 2.0 * t;
  double q = up / (u * u);
  // (e^{-1/u})'' = e^{-1/u} (q^2 + q'), q' = u''/u^2 - 2 u'^2/u^3, u'' = -2
  double qp = -2.0 / (u * u) - 2.0 * up * up / (u * u * u);
  return amp_ * std::exp(-1.0 / u) * (q * q + qp);
}

std::complex<double> fourier(const SmoothWeight& f, double xi) {
  auto g = [&](double x) -> std::complex<double> {
    double w = f(x);
    if (w == 0.0) return {0.0, 0.0};
    return w * std::polar(1.0, -kTwoPi * x * xi);
  };
  return integrate_segmented_complex(g, split_points(f.lo(), f.hi(), xi));
}

double mellin(const SmoothWeight& f, double s, int order) {
  if (order < 0 || order > 2) throw DomainError("mellin: order must be 0..2");
  double lo = std::max(f.lo(), 0.0), hi = f.hi();
  if (hi <= lo) return 0.0;
  if (f.lo() < 0.0 && s < 1.0)
    throw DomainError("mellin: support must avoid x <= 0 when s < 1");
  auto g = [&](double x) {
    double w = order == 0 ? f(x) : order == 1 ? f.deriv(x) : f.second_deriv(x);
    if (w == 0.0) return 0.0;
    return std::pow(x, s - 1.0) * w;
  };
  return integrate_segmented(g, split_points(lo, hi));
}

double convolution(const SmoothWeight& f1, const SmoothWeight& f2, double x) {
  double lo = std::max(f1.lo(), x - f2.hi());
  double hi = std::min(f1.hi(), x - f2.lo());
  if (hi <= lo) return 0.0;
  auto g = [&](double t) { return f1(t) * f2(x - t); };
  return integrate_segmented(g, split_points(lo, hi), 1e-12);
}

double convolution_deriv(const SmoothWeight& f1, const SmoothWeight& f2,
                         double x) {
  double lo = std::max(f1.lo(), x - f2.hi());
  double hi = std::min(f1.hi(), x - f2.lo());
  if (hi <= lo) return 0.0;
  auto g = [&](double t) { return f1(t) * f2.deriv(x - t); };
  return integrate_segmented(g, split_points(lo, hi), 1e-12);
}

std::complex<double> TransformCache::fourier_at(double xi) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = fourier_.find(xi);
  if (it != fourier_.end()) return it->second;
  auto val = fourier(f_, xi);
  fourier_.emplace(xi, val);
  return val;
}

double TransformCache::mellin_at(double s, int order) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(s, order);
  auto it = mellin_.find(key);
  if (it != mellin_.end()) return it->second;
  double val = mellin(f_, s, order);
  mellin_.emplace(key, val);
  return val;
}

std::complex<double> E_fh_generic(const std::function<double(double)>& f,
                                  double lo, double hi, std::int64_t h,
                                  double alpha) {
  if (h < 1) throw DomainError("E_fh: need h >= 1");
  double hd = double(h);
  std::int64_t m0 = std::int64_t(std::ceil(lo * hd));
  std::int64_t m1 = std::int64_t(std::floor(hi * hd));
  CompensatedSum re, im;
  for (std::int64_t m = m0; m <= m1; ++m) {
    double w = f(double(m) / hd);
    if (w == 0.0) continue;
    double frac = std::remainder(double(m) * alpha, 1.0);
    auto ph = std::polar(w, kTwoPi * frac);
    re.add(ph.real());
    im.add(ph.imag());
  }
  return {re.value(), im.value()};
}

std::complex<double> E_fh(const SmoothWeight& f, std::int64_t h, double alpha) {
  return E_fh_generic([&](double x) { return f(x); }, f.lo(), f.hi(), h,
                      alpha);
}

std::complex<double> E_fh_poisson(const SmoothWeight& f, std::int64_t h,
                                  double alpha) {
  if (h < 1) throw DomainError("E_fh_poisson: need h >= 1");
  double abar = alpha - std::floor(alpha + 0.5);
  return double(h) * fourier(f, -double(h) * abar);
}

std::complex<double> mu_average_diag(const SmoothWeight& f1,
                                     const SmoothWeight& f2, std::int64_t m,
                                     std::int64_t h, double alpha) {
  if (m < 1) throw DomainError("mu_average_diag: need m >= 1");
  CompensatedSum re, im;
  for (std::int64_t mu = 0; mu < m; ++mu) {
    double beta = double(mu) / double(m) + alpha;
    auto prod = E_fh(f1, h, beta) * E_fh(f2, h, beta);
    re.add(prod.real());
    im.add(prod.imag());
  }
  return {re.value(), im.value()};
}

SingularValue S_fh_brute(const SmoothWeight& f, std::int64_t h,
                         std::uint64_t prime_limit) {
  if (h < 1) throw DomainError("S_fh_brute: need h >= 1");
  double hd = double(h);
  std::int64_t m0 =
      std::max<std::int64_t>(1, std::int64_t(std::ceil(f.lo() * hd)));
  std::int64_t m1 = std::int64_t(std::floor(f.hi() * hd));
  CompensatedSum acc;
  double tail = 0.0;
  for (std::int64_t m = m0; m <= m1; ++m) {
    double w = f(double(m) / hd);
    if (w == 0.0) continue;
    auto sv = two_term_exact(m, 1, prime_limit);
    acc.add(w * sv.value);
    tail += w * sv.tail_bound;
  }
  return {acc.value(), tail, prime_limit};
}

ClosedFormTerms S_fh_closed(const SmoothWeight& f, std::int64_t h) {
  if (h < 2) throw DomainError("S_fh_closed: need h >= 2");
  ClosedFormTerms out;
  if (f.hi() <= 0.0) {  // empty positive window, every Mellin moment is 0
    out.degenerate = true;
    out.finalize();
    return out;
  }
  double mp1 = mellin(f, 1.0, 1);
  out.linear_term = double(h) * mellin(f, 1.0);
  out.log_term = -0.5 * mp1 * std::log(double(h));
  out.constant_term = -0.5 * mellin(f, 0.0);
  out.degenerate = std::abs(mp1) < 1e-8;
  out.ratio_diagnostic = out.degenerate ? 0.0 : mellin(f, 1.0, 2) / mp1;
  out.finalize();
  return out;
}

SingularValue V2_smooth_semi_exact(const SmoothWeight& f1,
                                   const SmoothWeight& f2, std::int64_t h,
                                   std::uint64_t prime_limit) {
  if (h < 1) throw DomainError("V2_smooth_semi_exact: need h >= 1");
  double hd = double(h);
  double clo = f1.lo() + f2.lo(), chi = f1.hi() + f2.hi();
  CompensatedSum acc;
  double tail = 0.0;
  std::int64_t m0 =
      std::max<std::int64_t>(1, std::int64_t(std::ceil(clo * hd)));
  std::int64_t m1 = std::int64_t(std::floor(chi * hd));
  for (std::int64_t m = m0; m <= m1; ++m) {
    double w = convolution(f1, f2, double(m) / hd);
    if (w == 0.0) continue;
    auto sv = two_term_exact(m, 1, prime_limit);
    acc.add(hd * w * sv.value);
    tail += hd * w * sv.tail_bound;
  }
  double f10 = fourier(f1, 0.0).real(), f20 = fourier(f2, 0.0).real();
  acc.add(-hd * hd * f10 * f20);
  acc.add(hd * convolution(f1, f2, 0.0));
  return {acc.value(), tail, prime_limit};
}

ClosedFormTerms V2_smooth_closed(const SmoothWeight& f1,
                                 const SmoothWeight& f2, std::int64_t h) {
  if (h < 2) throw DomainError("V2_smooth_closed: need h >= 2");
  double hd = double(h);
  double clo = f1.lo() + f2.lo(), chi = f1.hi() + f2.hi();
  double f10 = fourier(f1, 0.0).real(), f20 = fourier(f2, 0.0).real();
  double F0 = convolution(f1, f2, 0.0);

  // Mellin data of F = f1 * f2 over x > 0 by nested quadrature.  These
  // moments are h-free; the outer tolerance is looser than the pointwise
  // convolution tolerance so the nesting stays consistent.
  double lo = std::max(clo, 0.0), hi = chi;
  double mF1 = 0.0, mFp1 = 0.0, mF0 = 0.0;
  if (hi > lo) {
    auto pts = split_points(lo, hi);
    mF1 = integrate_segmented(
        [&](double x) { return convolution(f1, f2, x); }, pts, 1e-9);
    mFp1 = integrate_segmented(
        [&](double x) { return convolution_deriv(f1, f2, x); }, pts, 1e-9);
    if (clo > 0.0)  // F(x)/x only integrable when the support avoids 0
      mF0 = integrate_segmented(
          [&](double x) { return convolution(f1, f2, x) / x; }, pts, 1e-9);
  }

  ClosedFormTerms out;
  out.quadratic_term = (-f10 * f20 + mF1) * hd * hd;
  out.log_term = -0.5 * mFp1 * hd * std::log(hd);
  out.degenerate = std::abs(mFp1) < 1e-7;
  out.next_order_diagnostic = hd * (F0 - 0.5 * mF0);
  out.finalize();
  return out;
}

SingularValue R_k_smooth_brute(const std::vector<SmoothWeight>& f,
                               std::int64_t h, std::uint64_t prime_limit,
                               int threads) {
  int k = int(f.size());
  if (k < 1) throw DomainError("R_k_smooth_brute: need at least one weight");
  if (h < 1) throw DomainError("R_k_smooth_brute: need h >= 1");
  if (k > 4) throw CapacityError("R_k_smooth_brute: k <= 4");
  if (k == 1) return {0.0, 0.0, prime_limit};

  double hd = double(h);
  std::vector<std::vector<std::int64_t>> members(k);
  std::vector<std::vector<double>> wvals(k);
  double expected = 1.0;
  std::int64_t span_lo = 0, span_hi = 0;
  for (int i = 0; i < k; ++i) {
    std::int64_t m0 = std::int64_t(std::ceil(f[i].lo() * hd));
    std::int64_t m1 = std::int64_t(std::floor(f[i].hi() * hd));
    for (std::int64_t m = m0; m <= m1; ++m) {
      double w = f[i](double(m) / hd);
      if (w == 0.0) continue;
      members[i].push_back(m);
      wvals[i].push_back(w);
    }
    if (members[i].empty()) return {0.0, 0.0, prime_limit};
    expected *= double(members[i].size());
    if (expected > 1e7)
      throw CapacityError("R_k_smooth_brute: tuple count over 1e7");
    span_lo = std::min(span_lo, members[i].front());
    span_hi = std::max(span_hi, members[i].back());
  }

  std::vector<std::unique_ptr<SingularSeriesEvaluator>> by_size(k + 1);
  for (int s = 2; s <= k; ++s)
    by_size[s] = std::make_unique<SingularSeriesEvaluator>(
        s, 1, prime_limit, std::max<std::int64_t>(span_hi - span_lo, s));

  auto s0 = [&](const std::vector<std::int64_t>& tup, double* absmass) {
    CompensatedSum acc;
    double mass = 0.0;
    int n = int(tup.size());
    std::vector<std::int64_t> sub;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      int bits = __builtin_popcount(mask);
      double sign = ((n - bits) % 2 == 0) ? 1.0 : -1.0;
      if (bits <= 1) {
        acc.add(sign);
        continue;
      }
      sub.clear();
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) sub.push_back(tup[i]);
      double val = (bits == 2)
                       ? two_term_exact(sub[1] - sub[0], 1, prime_limit).value
                       : by_size[bits]->eval(TupleSet(sub)).value;
      acc.add(sign * val);
      mass += std::abs(val);
    }
    if (absmass) *absmass = mass;
    return acc.value();
  };

  auto term_for = [&](std::size_t idx, bool want_abs) {
    std::vector<std::int64_t> tup(k);
    tup[0] = members[0][idx];
    double w0 = wvals[0][idx];
    CompensatedSum acc;
    std::function<void(int, double)> rec = [&](int i, double wprod) {
      if (i == k) {
        double mass = 0.0;
        double val = s0(tup, &mass);
        acc.add(wprod * (want_abs ? mass : val));
        return;
      }
      for (std::size_t t = 0; t < members[i].size(); ++t) {
        std::int64_t n = members[i][t];
        bool dup = false;
        for (int j = 0; j < i; ++j) dup = dup || (tup[j] == n);
        if (dup) continue;
        tup[i] = n;
        rec(i + 1, wprod * wvals[i][t]);
      }
    };
    rec(1, w0);
    return acc.value();
  };

  double value = parallel_sum(
      members[0].size(), [&](std::size_t i) { return term_for(i, false); },
      threads);
  double mass = parallel_sum(
      members[0].size(), [&](std::size_t i) { return term_for(i, true); },
      threads);
  double rel = std::expm1(double(k) * double(k + 1) /
                          (double(prime_limit) - k - 1));
  return {value, mass * rel, prime_limit};
}

double R_k_smooth_main(const std::vector<SmoothWeight>& f, std::int64_t h) {
  int k = int(f.size());
  if (k < 1) throw DomainError("R_k_smooth_main: need at least one weight");
  if (h < 2) throw DomainError("R_k_smooth_main: need h >= 2");
  if (k > 8) throw CapacityError("R_k_smooth_main: k <= 8");
  if (k % 2 == 1) return 0.0;

  double hd = double(h);
  double m1 = mertens_like_sums(h, 1).first;

  // overlap moment integral f_a f_b of the pointwise product, cached
  std::map<std::pair<int, int>, double> pcache;
  auto prod_mellin = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto it = pcache.find(key);
    if (it != pcache.end()) return it->second;
    double lo = std::max({f[a].lo(), f[b].lo(), 0.0});
    double hi = std::min(f[a].hi(), f[b].hi());
    double val = 0.0;
    if (hi > lo)
      val = integrate_segmented(
          [&](double x) { return f[a](x) * f[b](x); }, split_points(lo, hi));
    pcache[key] = val;
    return val;
  };

  std::map<std::pair<int, int>, double> v2cache;
  auto v2 = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto it = v2cache.find(key);
    if (it != v2cache.end()) return it->second;
    double val = V2_smooth_closed(f[a], f[b], h).total;
    v2cache[key] = val;
    return val;
  };

  // every index pair may form a doubleton: one shared class label
  std::vector<std::int64_t> classes(k, 0);
  CompensatedSum total;
  for (int j = 0; 2 * j <= k; ++j) {
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    for_each_refining_partition(
        classes, j, [&](const RefiningPartition& part) {
          double dprod = 1.0;
          for (auto& [i1, i2] : part.doubletons)
            dprod *= hd * prod_mellin(i1 - 1, i2 - 1) * m1;
          CompensatedSum match_sum;
          for_each_perfect_matching(
              part.singletons, [&](const Matching& sigma) {
                double prod = 1.0;
                for (auto& [i1, i2] : sigma) prod *= v2(i1 - 1, i2 - 1);
                match_sum.add(prod);
                return true;
              });
          total.add(sign * dprod * match_sum.value());
          return true;
        });
  }
  return total.value();
}

}  // namespace singser
