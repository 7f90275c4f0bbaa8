#include "singser/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "singser/arith.hpp"
#include "singser/errors.hpp"
#include "singser/summation.hpp"

namespace singser {

RationalPhase RationalPhase::of(std::int64_t a, std::int64_t q) {
  if (q < 1) throw DomainError("RationalPhase: q must be >= 1");
  a %= q;
  if (a <= 0) a += q;  // representative in [1, q]
  std::int64_t g = std::gcd(a, q);
  return {a / g, q / g};
}

std::complex<double> E_rc(const RationalPhase& phase, std::int64_t h,
                          std::int64_t r, std::int64_t c) {
  if (h < 1 || r < 1) throw DomainError("E_rc: h and r must be >= 1");
  c %= r;
  if (c <= 0) c += r;
  if (c > h) return {0.0, 0.0};
  std::int64_t T = (h - c) / r + 1;  // m = c, c+r, ..., count T
  std::int64_t q = phase.q;
  std::complex<double> lead = unit_root((c % q) * phase.a % q, q);
  std::int64_t step = r % q * phase.a % q;
  if (step == 0) return double(T) * lead;
  std::complex<double> x = unit_root(step, q);
  std::complex<double> xT = unit_root(step * (T % q) % q, q);
  return lead * (xT - 1.0) / (x - 1.0);
}

std::complex<double> E_full(const RationalPhase& phase, std::int64_t h) {
  return E_rc(phase, h, 1, 1);
}

double F_r(double alpha, std::int64_t h, std::int64_t r) {
  if (h < 1 || r < 1) throw DomainError("F_r: h and r must be >= 1");
  double total = 0.0;
  for (std::int64_t n = 1; n <= r; ++n) {
    double x = alpha + double(n) / double(r);
    double dist = std::abs(x - std::round(x));
    total += (dist * double(h) < 1.0) ? double(h) : 1.0 / dist;
  }
  return total / double(r);
}

namespace {

// divisors of squarefree q that exceed 1
std::vector<std::int64_t> proper_divisors(std::int64_t q) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d <= q; ++d)
    if (q % d == 0) out.push_back(d);
  return out;
}

bool exactly_paired(std::vector<std::int64_t> vals) {
  std::sort(vals.begin(), vals.end());
  std::size_t i = 0;
  while (i < vals.size()) {
    std::size_t j = i;
    while (j < vals.size() && vals[j] == vals[i]) ++j;
    if (j - i != 2) return false;
    i = j;
  }
  return true;
}

}  // namespace

double oddterm_diagnostic(std::int64_t q, std::int64_t h, std::int64_t r,
                          int k) {
  if (q < 1 || q > 30) throw DomainError("oddterm_diagnostic: need 1 <= q <= 30");
  if (!factorize(q).squarefree())
    throw DomainError("oddterm_diagnostic: q must be squarefree");
  if (k < 1 || k > 4) throw DomainError("oddterm_diagnostic: need 1 <= k <= 4");

  std::vector<std::int64_t> divs = proper_divisors(q);
  if (divs.empty()) return 0.0;

  // F_r values keyed by (denominator, numerator); phases repeat heavily
  std::map<std::pair<std::int64_t, std::int64_t>, double> fcache;
  auto majorant = [&](std::int64_t a, std::int64_t qi) {
    auto key = std::make_pair(qi, a);
    auto it = fcache.find(key);
    if (it != fcache.end()) return it->second;
    double v = F_r(double(a) / double(qi), h, r);
    fcache[key] = v;
    return v;
  };

  CompensatedSum total;
  std::vector<int> choice(k, 0);
  std::vector<std::int64_t> qt(k);
  for (;;) {
    for (int i = 0; i < k; ++i) qt[i] = divs[choice[i]];
    if (!exactly_paired(qt)) {
      double weight = 1.0;
      for (int i = 0; i < k; ++i) weight /= double(euler_phi(qt[i]));

      // free loop over a_1..a_{k-1}; a_k forced by the integrality of
      // sum a_i/q_i, over the common denominator q
      std::vector<std::int64_t> at(k, 1);
      CompensatedSum inner;
      std::function<void(int, std::int64_t)> rec = [&](int i,
                                                       std::int64_t snum) {
        if (i == k - 1) {
          std::int64_t g = q / qt[i];
          std::int64_t s = snum % q;
          if (s % g != 0) return;
          std::int64_t ak = (-(s / g)) % qt[i];
          if (ak <= 0) ak += qt[i];
          if (std::gcd(ak, qt[i]) != 1) return;
          double prod = majorant(ak, qt[i]);
          for (int t = 0; t < k - 1; ++t) prod *= majorant(at[t], qt[t]);
          inner.add(prod);
          return;
        }
        for (std::int64_t a = 1; a < qt[i]; ++a) {
          if (std::gcd(a, qt[i]) != 1) continue;
          at[i] = a;
          rec(i + 1, (snum + a * (q / qt[i])) % q);
        }
      };
      rec(0, 0);
      total.add(weight * inner.value());
    }
    int pos = k - 1;
    while (pos >= 0 && ++choice[pos] == int(divs.size())) choice[pos--] = 0;
    if (pos < 0) break;
  }
  return total.value();
}

}  // namespace singser
