#pragma once

#include <complex>

#include "singser/characters.hpp"

namespace singser {

// Euler-Mascheroni constant and log(2 pi), to full double precision.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double log_two_pi = 1.83787706640934548356065947281123527;

// Digamma for x > 0: upward recurrence to x >= 10, then the Bernoulli
// asymptotic series.  Absolute error below 1e-13 on (0, 1e6].
double digamma(double x);

// L(s, chi) at s = 0 or s = 1 for non-principal chi, via the finite Hurwitz
// formulas (valid for imprimitive characters as well):
//   L(0, chi) = sum_a chi(a) (1/2 - a/m)
//   L(1, chi) = -(1/m) sum_a chi(a) digamma(a/m)
std::complex<double> l_value(const DirichletCharacter& chi, int s);

}  // namespace singser
