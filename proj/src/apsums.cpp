#include "singser/apsums.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "singser/arith.hpp"
#include "singser/characters.hpp"
#include "singser/combinat.hpp"
#include "singser/expsums.hpp"
#include "singser/lvalues.hpp"
#include "singser/primes.hpp"
#include "singser/summation.hpp"

namespace singser {

namespace {

constexpr std::uint64_t kAProductLimit = 1000000;  // prime budget for A_{r,chi}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, rem = a % b;
  return (rem != 0 && (rem < 0) != (b < 0)) ? q - 1 : q;
}

std::int64_t reduce_class(std::int64_t c, std::int64_t r) {
  c %= r;
  return c <= 0 ? c + r : c;  // representative in [1, r]
}

double log_p_over_p_minus_1(std::int64_t r) {
  double s = 0.0;
  for (auto& [p, e] : factorize(r).factors) {
    (void)e;
    s += std::log(double(p)) / (double(p) - 1.0);
  }
  return s;
}

}  // namespace

CongruenceSpec::CongruenceSpec(std::int64_t r_, std::vector<std::int64_t> classes_)
    : r(r_), classes(std::move(classes_)) {
  if (r < 1) throw DomainError("CongruenceSpec: modulus must be positive");
  if (classes.empty()) throw DomainError("CongruenceSpec: need at least one class");
  for (auto& c : classes) c = reduce_class(c, r);
}

void ClosedFormTerms::finalize() {
  total = quadratic_term + linear_term + mertens_term + log_term +
          constant_term + character_term.real();
}

std::int64_t count_in_class(std::int64_t lo, std::int64_t hi, std::int64_t c,
                            std::int64_t r) {
  if (lo > hi) return 0;
  c = reduce_class(c, r);
  return floor_div(hi - c, r) - floor_div(lo - 1 - c, r);
}

std::pair<double, double> mertens_like_sums(std::int64_t h, std::int64_t r) {
  if (h < 2 || r < 1) throw DomainError("mertens_like_sums: need h >= 2, r >= 1");
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, std::int64_t>, std::pair<double, double>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(h, r);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  CompensatedSum l1, l2;
  for_each_prime(std::uint64_t(h) * std::uint64_t(h), [&](std::uint64_t up) {
    std::int64_t p = std::int64_t(up);
    if (r % p == 0) return;
    double d = double(p) - 1.0;
    l1.add(std::log1p(1.0 / d));
    l2.add(std::log1p(1.0 / (d * d)));
  });
  auto result = std::make_pair(std::expm1(l1.value()), std::exp(l2.value()));
  cache[key] = result;
  return result;
}

std::complex<double> A_r_chi(std::int64_t r, const DirichletCharacter& chi,
                             std::uint64_t prime_limit, double* tail_bound) {
  if (r < 1) throw DomainError("A_r_chi: modulus must be positive");
  if (prime_limit < 100) throw DomainError("A_r_chi: prime limit too small");
  std::complex<double> prod = 1.0;
  for (auto& [p, e] : factorize(r).factors) {
    (void)e;
    prod *= 1.0 - chi(p) / double(p);
  }
  for_each_prime(prime_limit, [&](std::uint64_t up) {
    std::int64_t p = std::int64_t(up);
    if (r % p == 0) return;
    std::complex<double> one_minus = 1.0 - chi(p);
    double d = double(p) - 1.0;
    prod *= 1.0 - one_minus * one_minus / (d * d);
  });
  if (tail_bound) {
    double l = double(prime_limit);
    *tail_bound = std::abs(prod) * std::expm1(4.0 / ((l - 1.0) * std::log(l)));
  }
  return prod;
}

double C0(std::int64_t r) {
  if (r < 1) throw DomainError("C0: modulus must be positive");
  double phi_over_r = double(euler_phi(r)) / double(r);
  return phi_over_r *
         (std::log(double(r)) - log_two_pi - euler_gamma - log_p_over_p_minus_1(r));
}

SingularValue S_rvh_brute(std::int64_t r, std::int64_t v, std::int64_t h,
                          std::uint64_t prime_limit) {
  if (h < 1 || r < 1) throw DomainError("S_rvh_brute: need h, r >= 1");
  v = reduce_class(v, r);
  CompensatedSum acc;
  double tail = 0.0;
  for (std::int64_t m = v; m < h; m += r) {
    SingularValue s = two_term_exact(m, r, prime_limit);
    acc.add(double(h - m) * s.value);
    tail += double(h - m) * s.tail_bound;
  }
  return {acc.value(), tail, prime_limit};
}

namespace {

// A_{r,chi} keyed by (r, character modulus, character index)
std::complex<double> a_r_chi_cached(std::int64_t r, const DirichletCharacter& chi) {
  static std::mutex mu;
  static std::map<std::tuple<std::int64_t, std::int64_t, int>,
                  std::complex<double>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(r, chi.modulus(), chi.index());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::complex<double> a = A_r_chi(r, chi, kAProductLimit);
  cache[key] = a;
  return a;
}

}  // namespace

ClosedFormTerms S_rvh_closed(std::int64_t r, std::int64_t v, std::int64_t h) {
  if (h < 1 || r < 1) throw DomainError("S_rvh_closed: need h, r >= 1");
  v = reduce_class(v, r);
  double hd = double(h), rd = double(r);
  double phi_r = double(euler_phi(r));
  ClosedFormTerms out;
  out.quadratic_term = hd * hd / (2.0 * rd);

  if (v == r) {
    out.log_term = -(hd / 2.0) * (phi_r / rd) * std::log(hd / rd);
    out.constant_term = -(hd / 2.0) * (phi_r / rd) *
                        (euler_gamma + log_two_pi + log_p_over_p_minus_1(r) - 1.0);
    out.finalize();
    return out;
  }

  std::int64_t d = std::gcd(v, r);
  std::int64_t rp = r / d;
  double phi_rp = double(euler_phi(rp));
  out.constant_term =
      -(hd / 2.0) * (phi_r / rd) * von_mangoldt(rp) / phi_rp;
  if (rp >= 3) {
    std::complex<double> chi_sum = 0.0;
    for (const auto& chi : characters_mod(rp)) {
      if (chi.index() == 0) continue;
      chi_sum += std::conj(chi(v / d)) * l_value(chi, 0) * l_value(chi, 1) *
                 a_r_chi_cached(r, chi);
    }
    out.character_term = (hd / phi_rp) * chi_sum;
  }
  out.finalize();
  return out;
}

double V_k_direct(std::int64_t q, std::int64_t h, const CongruenceSpec& spec) {
  if (q < 1) throw DomainError("V_k_direct: q must be positive");
  if (!factorize(std::max<std::int64_t>(q, 1)).squarefree() && q > 1)
    throw DomainError("V_k_direct: q must be squarefree");
  if (std::gcd(q, spec.r) != 1)
    throw DomainError("V_k_direct: q must be coprime to r");
  int k = spec.k();
  if (k > 6 || q > 1000) throw CapacityError("V_k_direct: k <= 6, q <= 1000");
  if (q == 1) return 0.0;

  std::vector<std::int64_t> divs;
  for (std::int64_t dv = 2; dv <= q; ++dv)
    if (q % dv == 0) divs.push_back(dv);

  std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>,
           std::complex<double>>
      ecache;
  auto esum = [&](std::int64_t a, std::int64_t qi, std::int64_t c) {
    auto key = std::make_tuple(qi, a, c);
    auto it = ecache.find(key);
    if (it != ecache.end()) return it->second;
    std::complex<double> val = E_rc({a, qi}, h, spec.r, c);
    ecache[key] = val;
    return val;
  };

  CompensatedSum total_re, total_im;
  std::vector<int> choice(k, 0);
  std::vector<std::int64_t> qt(k), at(k);
  for (;;) {
    double weight = 1.0;
    for (int i = 0; i < k; ++i) {
      qt[i] = divs[choice[i]];
      weight *= double(moebius(qt[i])) / double(euler_phi(qt[i]));
    }

    std::complex<double> inner = 0.0;
    std::function<void(int, std::int64_t, std::complex<double>)> rec =
        [&](int i, std::int64_t snum, std::complex<double> prod) {
          if (i == k - 1) {
            std::int64_t g = q / qt[i];
            if (snum % g != 0) return;
            std::int64_t ak = (-(snum / g)) % qt[i];
            if (ak <= 0) ak += qt[i];
            if (std::gcd(ak, qt[i]) != 1) return;
            inner += prod * esum(ak, qt[i], spec.classes[i]);
            return;
          }
          for (std::int64_t a = 1; a < qt[i]; ++a) {
            if (std::gcd(a, qt[i]) != 1) continue;
            at[i] = a;
            rec(i + 1, (snum + a * (q / qt[i])) % q,
                prod * esum(a, qt[i], spec.classes[i]));
          }
        };
    rec(0, 0, 1.0);
    total_re.add(weight * inner.real());
    total_im.add(weight * inner.imag());

    int pos = k - 1;
    while (pos >= 0 && ++choice[pos] == int(divs.size())) choice[pos--] = 0;
    if (pos < 0) break;
  }
  (void)total_im;  // conjugate pairs cancel; kept for debugging symmetry
  return total_re.value();
}

double V2_semi_exact(std::int64_t h, std::int64_t r, std::int64_t c1,
                     std::int64_t c2, std::uint64_t prime_limit) {
  if (h < 2) throw DomainError("V2_semi_exact: need h >= 2");
  c1 = reduce_class(c1, r);
  c2 = reduce_class(c2, r);
  double hd = double(h), rd = double(r);
  double quad = -hd * hd / (rd * rd);
  if (c1 == c2) {
    double diag = mertens_like_sums(h, r).first + 1.0;
    return quad + (hd / rd) * diag +
           (2.0 / rd) * S_rvh_brute(r, r, h, prime_limit).value;
  }
  std::int64_t v = reduce_class(c1 - c2, r);
  return quad + (S_rvh_brute(r, v, h, prime_limit).value +
                 S_rvh_brute(r, r - v, h, prime_limit).value) /
                    rd;
}

ClosedFormTerms V2_closed(std::int64_t h, std::int64_t r, std::int64_t c1,
                          std::int64_t c2) {
  if (h < 2) throw DomainError("V2_closed: need h >= 2");
  c1 = reduce_class(c1, r);
  c2 = reduce_class(c2, r);
  double hd = double(h), rd = double(r);
  double phi_r = double(euler_phi(r));
  ClosedFormTerms out;

  if (c1 == c2) {
    out.mertens_term = (hd / rd) * mertens_like_sums(h, r).first;
    out.log_term = -hd * phi_r / (rd * rd) * std::log(hd);
    out.constant_term = (hd / rd) * (1.0 + C0(r) + phi_r / rd);
    out.finalize();
    return out;
  }

  std::int64_t v = reduce_class(c1 - c2, r);
  std::int64_t d = std::gcd(v, r);
  std::int64_t rp = r / d;
  double phi_rp = double(euler_phi(rp));
  out.constant_term = -hd * phi_r / (rd * rd * phi_rp) * von_mangoldt(rp);
  if (rp >= 3) {
    // symmetrized over the differences v and r-v; odd characters cancel in
    // the bracket and even ones have L(0,chi) = 0, so this is exactly zero
    std::complex<double> chi_sum = 0.0;
    for (const auto& chi : characters_mod(rp)) {
      if (chi.index() == 0) continue;
      std::complex<double> bracket =
          std::conj(chi(v / d)) + std::conj(chi((r - v) / d));
      chi_sum += bracket * l_value(chi, 0) * l_value(chi, 1) *
                 a_r_chi_cached(r, chi);
    }
    out.character_term = hd / (rd * phi_rp) * chi_sum;
  }
  out.finalize();
  return out;
}

namespace {

// ordered distinct tuples for k >= 3, enumerated directly
SingularValue rk_brute_general(std::int64_t h, const CongruenceSpec& spec,
                               std::uint64_t prime_limit, int threads) {
  int k = spec.k();
  std::vector<std::vector<std::int64_t>> members(k);
  double expected = 1.0;
  for (int i = 0; i < k; ++i) {
    for (std::int64_t n = spec.classes[i]; n <= h; n += spec.r)
      members[i].push_back(n);
    expected *= double(members[i].size());
    if (expected > 1e7) throw CapacityError("R_k_brute: tuple count over 1e7");
  }
  if (members[0].empty()) return {0.0, 0.0, prime_limit};

  std::vector<std::unique_ptr<SingularSeriesEvaluator>> by_size(k + 1);
  for (int s = 2; s <= k; ++s)
    by_size[s] = std::make_unique<SingularSeriesEvaluator>(
        s, spec.r, prime_limit, std::max<std::int64_t>(h, s));

  // S_{0,r} of the tuple via subset inclusion-exclusion; sign is parity of
  // left-out count.  Returns (signed value, absolute mass) pairs.
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
                       ? two_term_exact(sub[1] - sub[0], spec.r, prime_limit).value
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
    CompensatedSum acc;
    std::function<void(int)> rec = [&](int i) {
      if (i == k) {
        double mass = 0.0;
        double val = s0(tup, &mass);
        acc.add(want_abs ? mass : val);
        return;
      }
      for (std::int64_t n : members[i]) {
        bool dup = false;
        for (int j = 0; j < i; ++j) dup = dup || (tup[j] == n);
        if (dup) continue;
        tup[i] = n;
        rec(i + 1);
      }
    };
    rec(1);
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

}  // namespace

SingularValue R_k_brute(std::int64_t h, const CongruenceSpec& spec,
                        std::uint64_t prime_limit, int threads) {
  if (h < 1) throw DomainError("R_k_brute: need h >= 1");
  int k = spec.k();
  if (k == 1) return {0.0, 0.0, prime_limit};

  if (k == 2) {
    std::int64_t r = spec.r, c1 = spec.classes[0], c2 = spec.classes[1];
    // positive differences d = c1-c2 pair (n+d, n); d = c2-c1 pair (n, n+d)
    auto side = [&](std::int64_t v, std::int64_t base_class) {
      v = reduce_class(v, r);
      std::int64_t first = (v == r) ? r : v;
      std::size_t terms =
          first > h - 1 ? 0 : std::size_t((h - 1 - first) / r) + 1;
      double val = parallel_sum(
          terms,
          [&](std::size_t j) {
            std::int64_t d = first + std::int64_t(j) * r;
            std::int64_t cnt = count_in_class(1, h - d, base_class, r);
            if (cnt == 0) return 0.0;
            return double(cnt) *
                   (two_term_exact(d, r, prime_limit).value - 1.0);
          },
          threads);
      return val;
    };
    double value = side(c1 - c2, c2) + side(c2 - c1, c1);
    // every two-element value is nonnegative, so the truncation tail is
    // controlled by the total positive mass value + (#ordered pairs)
    std::int64_t n1 = count_in_class(1, h, c1, r);
    std::int64_t n2 = count_in_class(1, h, c2, r);
    std::int64_t pairs = n1 * n2 - (c1 == c2 ? n1 : 0);
    double tail = std::expm1(6.0 / (double(prime_limit) - 3.0)) *
                  (std::abs(value + double(pairs)));
    return {value, tail, prime_limit};
  }

  return rk_brute_general(h, spec, prime_limit, threads);
}

double R_k_main_structured(std::int64_t h, const CongruenceSpec& spec) {
  if (h < 2) throw DomainError("R_k_main_structured: need h >= 2");
  int k = spec.k();
  if (k > 8) throw CapacityError("R_k_main_structured: k <= 8");
  double X = (double(h) / double(spec.r)) * mertens_like_sums(h, spec.r).first;

  std::map<std::pair<std::int64_t, std::int64_t>, double> v2cache;
  auto v2 = [&](std::int64_t a, std::int64_t b) {
    auto key = std::minmax(a, b);
    auto it = v2cache.find(key);
    if (it != v2cache.end()) return it->second;
    double val = V2_closed(h, spec.r, a, b).total;
    v2cache[key] = val;
    return val;
  };

  CompensatedSum total;
  for (int j = 0; 2 * j <= k; ++j) {
    double xj = 1.0;
    for (int t = 0; t < j; ++t) xj *= X;
    double sign = (j % 2 == 0) ? 1.0 : -1.0;
    for_each_refining_partition(
        spec.classes, j, [&](const RefiningPartition& part) {
          CompensatedSum match_sum;
          for_each_perfect_matching(
              part.singletons, [&](const Matching& sigma) {
                double prod = 1.0;
                for (auto& [i1, i2] : sigma)
                  prod *= v2(spec.classes[i1 - 1], spec.classes[i2 - 1]);
                match_sum.add(prod);
                return true;
              });
          total.add(sign * xj * match_sum.value());
          return true;
        });
  }
  return total.value();
}

double pair_main_term(std::int64_t h, std::int64_t r) {
  double hd = double(h), rd = double(r);
  double phi_r = double(euler_phi(r));
  return hd / rd - hd * phi_r / (rd * rd) *
                       (std::log(hd / rd) + euler_gamma + log_two_pi +
                        log_p_over_p_minus_1(r) - 1.0);
}

double R_k_main_simple(std::int64_t h, const CongruenceSpec& spec) {
  if (h < 2) throw DomainError("R_k_main_simple: need h >= 2");
  std::int64_t pairings = count_equal_pairings(spec.classes);
  if (pairings == 0) return 0.0;
  double m = pair_main_term(h, spec.r);
  double out = double(pairings);
  for (int t = 0; t < spec.k() / 2; ++t) out *= m;
  return out;
}

double gallagher_ratio(std::int64_t h, int k, std::uint64_t prime_limit) {
  if (h < 1 || k < 1) throw DomainError("gallagher_ratio: need h, k >= 1");
  if (k == 1) return 1.0;  // every singleton series is exactly 1
  double combos = 1.0;
  for (int i = 0; i < k; ++i) combos *= double(h - i) / double(i + 1);
  if (combos > 1e7) throw CapacityError("gallagher_ratio: C(h,k) over 1e7");
  if (std::int64_t(h) < k) return 0.0;

  SingularSeriesEvaluator ev(k, 1, prime_limit,
                             std::max<std::int64_t>(h, k));
  // subsets grouped by smallest element; fixed chunking keeps the
  // reduction order independent of thread count
  double total = parallel_sum(
      std::size_t(h), [&](std::size_t idx) {
        std::int64_t first = std::int64_t(idx) + 1;
        CompensatedSum acc;
        std::vector<std::int64_t> tup(k);
        tup[0] = first;
        std::function<void(int, std::int64_t)> rec = [&](int i,
                                                         std::int64_t lo) {
          if (i == k) {
            acc.add(ev.eval(TupleSet(tup)).value);
            return;
          }
          for (std::int64_t n = lo; n <= h; ++n) {
            tup[i] = n;
            rec(i + 1, n + 1);
          }
        };
        rec(1, first + 1);
        return acc.value();
      },
      1);
  return total / combos;
}

}  // namespace singser
