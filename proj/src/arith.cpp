#include "singser/arith.hpp"

#include <cmath>
#include <numeric>

namespace singser {

std::int64_t isqrt(std::int64_t x) {
  if (x < 0) throw DomainError("isqrt of negative value");
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  // compare via division: r*r overflows for inputs near INT64_MAX
  while (r > 0 && r > x / r) --r;
  while (r + 1 <= x / (r + 1)) ++r;
  return r;
}

Factorization factorize(std::int64_t n) {
  if (n == 0) throw DomainError("factorize(0)");
  if (n < 0) n = -n;
  Factorization f;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.factors.emplace_back(p, e);
  }
  if (n > 1) f.factors.emplace_back(n, 1);
  return f;
}

std::int64_t euler_phi(std::int64_t n) {
  if (n == 0) throw DomainError("euler_phi(0)");
  if (n < 0) n = -n;
  std::int64_t phi = n;
  for (const auto& [p, e] : factorize(n).factors) phi -= phi / p;
  return phi;
}

int moebius(std::int64_t n) {
  if (n == 0) throw DomainError("moebius(0)");
  const auto f = factorize(n);
  if (!f.squarefree()) return 0;
  return (f.factors.size() % 2 == 0) ? 1 : -1;
}

double von_mangoldt(std::int64_t n) {
  if (n == 0) throw DomainError("von_mangoldt(0)");
  if (n < 0) n = -n;
  if (n == 1) return 0.0;
  const auto f = factorize(n);
  if (f.factors.size() != 1) return 0.0;
  return std::log(static_cast<double>(f.factors[0].first));
}

std::int64_t ramanujan_sum(std::int64_t q, std::int64_t m) {
  if (q <= 0) throw DomainError("ramanujan_sum requires q >= 1");
  if (m < 0) m = -m;
  const std::int64_t g = std::gcd(q, m);  // gcd(q, 0) == q
  const std::int64_t qg = q / g;
  const int mu = moebius(qg);
  if (mu == 0) return 0;
  return mu * (euler_phi(q) / euler_phi(qg));  // phi(d) | phi(q) for d | q
}

std::complex<double> unit_root(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw DomainError("unit_root requires den >= 1");
  num %= den;
  if (num < 0) num += den;
  if (num == 0) return {1.0, 0.0};
  if (2 * num == den) return {-1.0, 0.0};
  if (4 * num == den) return {0.0, 1.0};
  if (4 * num == 3 * den) return {0.0, -1.0};
  const double theta =
      2.0 * M_PI * (static_cast<double>(num) / static_cast<double>(den));
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace singser
