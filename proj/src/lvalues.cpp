#include "singser/lvalues.hpp"

#include <cmath>

#include "singser/errors.hpp"

namespace singser {

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma requires x > 0");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum B_{2n} / (2n x^{2n})
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = -1.0 / 12.0;
  double p = inv2;
  series *= p;
  double term;
  term = (1.0 / 120.0) * (p *= inv2);
  series += term;
  term = (-1.0 / 252.0) * (p *= inv2);
  series += term;
  term = (1.0 / 240.0) * (p *= inv2);
  series += term;
  term = (-1.0 / 132.0) * (p *= inv2);
  series += term;
  term = (691.0 / 32760.0) * (p *= inv2);
  series += term;
  term = (-1.0 / 12.0) * (p *= inv2);
  series += term;
  return acc + std::log(x) - 0.5 * inv + series;
}

std::complex<double> l_value(const DirichletCharacter& chi, int s) {
  if (chi.principal())
    throw DomainError("l_value requires a non-principal character");
  const std::int64_t m = chi.modulus();
  std::complex<double> sum{0.0, 0.0};
  if (s == 0) {
    for (std::int64_t a = 1; a < m; ++a) {
      const auto v = chi(a);
      if (v == std::complex<double>{0.0, 0.0}) continue;
      sum += v * (0.5 - static_cast<double>(a) / static_cast<double>(m));
    }
    return sum;
  }
  if (s == 1) {
    for (std::int64_t a = 1; a < m; ++a) {
      const auto v = chi(a);
      if (v == std::complex<double>{0.0, 0.0}) continue;
      sum += v * digamma(static_cast<double>(a) / static_cast<double>(m));
    }
    return -sum / static_cast<double>(m);
  }
  throw DomainError("l_value implemented at s = 0 and s = 1 only");
}

}  // namespace singser
