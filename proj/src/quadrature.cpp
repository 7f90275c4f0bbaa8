#include "singser/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "singser/errors.hpp"

namespace singser {

namespace {

// Legendre P_n(x) and P_n'(x) by upward recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  double deriv = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, deriv};
}

struct Rule {
  std::vector<double> nodes;    // positive half, descending, 0 last if odd n
  std::vector<double> weights;  // matching
};

// Gauss-Legendre nodes are the roots of P_n; Newton from the Chebyshev-like
// initial guess converges in a handful of steps to full double precision.
Rule gauss_rule(int n) {
  Rule r;
  for (int i = 1; i <= (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    for (int it = 0; it < 60; ++it) {
      auto [p, dp] = legendre(n, x);
      double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    auto [p, dp] = legendre(n, x);
    (void)p;
    r.nodes.push_back(x);
    r.weights.push_back(2.0 / ((1.0 - x * x) * dp * dp));
  }
  return r;
}

const Rule& rule7() {
  static Rule r = gauss_rule(7);
  return r;
}
const Rule& rule15() {
  static Rule r = gauss_rule(15);
  return r;
}

// Applies a symmetric rule mapped onto [a, b].
template <class T, class Fn>
T apply_rule(const Rule& r, const Fn& f, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  T sum{};
  for (std::size_t i = 0; i < r.nodes.size(); ++i) {
    double x = r.nodes[i];
    if (x < 1e-14) {  // center node of an odd rule, count once
      sum += r.weights[i] * f(mid);
    } else {
      sum += r.weights[i] * (f(mid + half * x) + f(mid - half * x));
    }
  }
  return half * sum;
}

template <class T, class Fn>
T adaptive(const Fn& f, double a, double b, double tol, int depth,
           int max_depth) {
  T lo = apply_rule<T>(rule7(), f, a, b);
  T hi = apply_rule<T>(rule15(), f, a, b);
  double err = std::abs(hi - lo);
  if (err <= tol || b - a < 1e-15 * (1.0 + std::abs(a))) return hi;
  if (depth >= max_depth) {
    if (err <= tol * 64) return hi;  // close enough; refinement has stalled
    std::ostringstream msg;
    msg << "quadrature stalled on [" << a << ", " << b << "], error estimate "
        << err << " vs tolerance " << tol;
    throw ToleranceError(msg.str());
  }
  double mid = 0.5 * (a + b);
  return adaptive<T>(f, a, mid, tol * 0.5, depth + 1, max_depth) +
         adaptive<T>(f, mid, b, tol * 0.5, depth + 1, max_depth);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, abs_tol, max_depth);
  return adaptive<double>(f, a, b, abs_tol, 0, max_depth);
}

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  if (a > b) return -integrate_complex(f, b, a, abs_tol, max_depth);
  return adaptive<std::complex<double>>(f, a, b, abs_tol, 0, max_depth);
}

double integrate_segmented(const std::function<double(double)>& f,
                           const std::vector<double>& pts, double abs_tol) {
  double total = 0.0;
  double per = abs_tol / std::max<std::size_t>(pts.size() - 1, 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += integrate(f, pts[i], pts[i + 1], per);
  return total;
}

std::complex<double> integrate_segmented_complex(
    const std::function<std::complex<double>(double)>& f,
    const std::vector<double>& pts, double abs_tol) {
  std::complex<double> total = 0.0;
  double per = abs_tol / std::max<std::size_t>(pts.size() - 1, 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += integrate_complex(f, pts[i], pts[i + 1], per);
  return total;
}

std::vector<double> split_points(double a, double b, double osc_scale,
                                 int min_uniform) {
  double len = b - a;
  int uniform = min_uniform;
  if (osc_scale != 0.0) {
    double per_quarter = 1.0 / (4.0 * std::abs(osc_scale));
    uniform = std::max<int>(uniform, int(std::ceil(len / per_quarter)));
  }
  uniform = std::min(uniform, 1 << 20);
  std::vector<double> pts;
  // geometric ladders resolve the flat approach to each endpoint
  const int ladder = 10;
  pts.push_back(a);
  for (int j = ladder; j >= 1; --j) pts.push_back(a + len * std::pow(0.5, j + 2));
  for (int i = 1; i < uniform; ++i) pts.push_back(a + len * i / uniform);
  for (int j = 1; j <= ladder; ++j) pts.push_back(b - len * std::pow(0.5, j + 2));
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace singser
