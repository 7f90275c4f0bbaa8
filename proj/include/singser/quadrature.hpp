#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace singser {

// Adaptive Gauss-Legendre quadrature with an embedded 7/15-point pair.
// Node and weight tables are generated once by Newton iteration on the
// Legendre polynomials, so there are no transcribed constants to get wrong.
// Each interval is accepted when |G15 - G7| is within its share of the
// absolute tolerance, else bisected; exceeding max_depth with a bad error
// estimate raises ToleranceError carrying the offending subinterval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 40);

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double abs_tol = 1e-10, int max_depth = 40);

// Runs the adaptive rule on each [pts[i], pts[i+1]] and sums in order.
// Callers pre-split at known trouble spots: oscillation periods, support
// endpoints where all derivatives vanish, convolution kinks.
double integrate_segmented(const std::function<double(double)>& f,
                           const std::vector<double>& pts,
                           double abs_tol = 1e-10);

std::complex<double> integrate_segmented_complex(
    const std::function<std::complex<double>(double)>& f,
    const std::vector<double>& pts, double abs_tol = 1e-10);

// Breakpoint ladder for [a, b]: geometric approach to both endpoints
// (flat-tail resolution) plus at least `min_uniform` uniform interior
// cuts; with osc_scale > 0, enough uniform cuts that each piece spans at
// most a quarter period of e(osc_scale * x).
std::vector<double> split_points(double a, double b, double osc_scale = 0.0,
                                 int min_uniform = 4);

}  // namespace singser
