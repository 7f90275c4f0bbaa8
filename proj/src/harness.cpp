#include "singser/harness.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <utility>

#include <json.hpp>

#include "singser/apsums.hpp"
#include "singser/combinat.hpp"
#include "singser/errors.hpp"
#include "singser/expsums.hpp"
#include "singser/smooth.hpp"
#include "singser/summation.hpp"
#include "singser/version.hpp"

namespace singser {

namespace {

using nlohmann::ordered_json;

// Envelope exponents are declared per suite; a fit passes when
// slope <= declared + kSlopeSlack.
constexpr double kSlopeSlack = 0.05;

ReportRow make_row(std::string label, std::int64_t h, double computed,
                   double predicted) {
  ReportRow out;
  out.label = std::move(label);
  out.h = h;
  out.computed = computed;
  out.predicted = predicted;
  out.residual = computed - predicted;
  return out;
}

// Log-log fit over |residual|; rows with residual exactly 0 carry no slope
// information and are skipped, as are rows rejected by keep.
LineFit fit_rows(const std::vector<ReportRow>& rows,
                 const std::function<bool(const ReportRow&)>& keep = nullptr) {
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (keep && !keep(r)) continue;
    double a = std::fabs(r.residual);
    if (!(a > 0.0)) continue;
    xs.push_back(std::log(double(r.h)));
    ys.push_back(std::log(a));
  }
  return fit_line(xs, ys);
}

__attribute__((format(printf, 1, 2))) std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

// Pooled slope rule shared by the envelope suites.  Requires four fitted
// points before the slope is trusted.
void finish_envelope(VerificationReport& rep, double declared,
                     const std::function<bool(const ReportRow&)>& keep = nullptr) {
  LineFit fit = fit_rows(rep.rows, keep);
  rep.has_slope = fit.n >= 4;
  if (rep.has_slope) {
    rep.slope = fit.slope;
    rep.slope_stderr = fit.stderr_;
  }
  double bound = declared + kSlopeSlack;
  rep.pass = rep.has_slope && rep.slope <= bound;
  rep.notes.push_back(fmt("pass rule: pooled log-log slope <= %.2f "
                          "(declared envelope exponent %.2f + %.2f slack)",
                          bound, declared, kSlopeSlack));
  if (!rep.has_slope)
    rep.notes.push_back("slope unavailable: fewer than 4 nonzero residuals");
}

std::vector<std::int64_t> pick_grid(const ExperimentConfig& c,
                                    std::vector<std::int64_t> fallback) {
  if (!c.h_grid.empty()) return c.h_grid;
  if (c.h_min > 0 || c.h_max > 0) {
    std::erase_if(fallback, [&](std::int64_t h) {
      return (c.h_min > 0 && h < c.h_min) || (c.h_max > 0 && h > c.h_max);
    });
    if (fallback.empty())
      throw DomainError("h window excludes the entire default grid");
  }
  return fallback;
}

ordered_json echo_base(const ExperimentConfig& c,
                       const std::vector<std::int64_t>& grid) {
  ordered_json j;
  j["suite"] = c.suite;
  j["h"] = grid;
  j["prime_limit"] = c.prime_limit;
  return j;
}

void seal(VerificationReport& rep, ordered_json echo) {
  rep.config_echo = echo.dump();
}

std::string weight_tag(double a, double b, double c) {
  // Semicolons keep row labels comma-free for the CSV writer.
  return fmt("bump(%g;%g;%g)", a, b, c);
}

// ---------------------------------------------------------------------------
// two-term: brute vs closed two-term evaluation of S(r,v,h).

VerificationReport run_two_term(const ExperimentConfig& c) {
  struct RV {
    std::int64_t r, v;
  };
  std::vector<RV> cases = {{1, 1}, {3, 3}, {3, 1}, {4, 1}, {4, 2}, {6, 5}};
  if (c.r > 0) {
    std::erase_if(cases, [&](const RV& x) { return x.r != c.r; });
    if (cases.empty())
      throw DomainError("two-term: no case with r = " + std::to_string(c.r));
  }
  auto grid = pick_grid(c, {512, 1024, 2048, 4096});

  VerificationReport rep;
  rep.suite = c.suite;
  ordered_json echo = echo_base(c, grid);
  auto labels = ordered_json::array();
  for (const auto& cs : cases) labels.push_back(fmt("r=%lld v=%lld",
                                                    (long long)cs.r,
                                                    (long long)cs.v));
  echo["cases"] = labels;
  seal(rep, std::move(echo));

  for (const auto& cs : cases)
    for (auto h : grid)
      rep.rows.push_back(make_row(fmt("r=%lld v=%lld", (long long)cs.r,
                                      (long long)cs.v),
                                  h, S_rvh_brute(cs.r, cs.v, h, c.prime_limit).value,
                                  S_rvh_closed(cs.r, cs.v, h).total));
  finish_envelope(rep, 0.70);
  return rep;
}

// ---------------------------------------------------------------------------
// v2-bridge: semi-exact V2 against its closed form.

VerificationReport run_v2_bridge(const ExperimentConfig& c) {
  struct Case {
    std::int64_t r, c1, c2;
  };
  std::vector<Case> cases = {
      {1, 1, 1}, {4, 1, 1}, {4, 1, 3}, {4, 1, 2}, {3, 1, 2}};
  if (c.r > 0) {
    std::erase_if(cases, [&](const Case& x) { return x.r != c.r; });
    if (cases.empty())
      throw DomainError("v2-bridge: no case with r = " + std::to_string(c.r));
  }
  auto grid = pick_grid(c, {512, 1024, 2048, 4096});

  VerificationReport rep;
  rep.suite = c.suite;
  ordered_json echo = echo_base(c, grid);
  auto labels = ordered_json::array();
  for (const auto& cs : cases)
    labels.push_back(fmt("r=%lld c1=%lld c2=%lld", (long long)cs.r,
                         (long long)cs.c1, (long long)cs.c2));
  echo["cases"] = labels;
  seal(rep, std::move(echo));

  for (const auto& cs : cases)
    for (auto h : grid)
      rep.rows.push_back(
          make_row(fmt("r=%lld c1=%lld c2=%lld", (long long)cs.r,
                       (long long)cs.c1, (long long)cs.c2),
                   h, V2_semi_exact(h, cs.r, cs.c1, cs.c2, c.prime_limit),
                   V2_closed(h, cs.r, cs.c1, cs.c2).total));
  finish_envelope(rep, 0.70);
  return rep;
}

// ---------------------------------------------------------------------------
// vk-matching: V4 against the sum over perfect matchings of V2 products.
// Pass rule is the trend |V4 - match|/h^2 strictly decreasing per case; the
// pooled slope is informational.

VerificationReport run_vk_matching(const ExperimentConfig& c) {
  struct Case {
    std::int64_t q, r;
    std::vector<std::int64_t> cls;
    const char* tag;
  };
  std::vector<Case> cases = {
      {6, 1, {1, 1, 1, 1}, "q=6 r=1 equal"},
      {10, 3, {1, 1, 1, 1}, "q=10 r=3 equal"},
      {10, 3, {1, 2, 1, 2}, "q=10 r=3 mixed"},
      {30, 1, {1, 1, 1, 1}, "q=30 r=1 equal"},
  };
  if (c.q > 0) std::erase_if(cases, [&](const Case& x) { return x.q != c.q; });
  if (c.r > 0) std::erase_if(cases, [&](const Case& x) { return x.r != c.r; });
  if (cases.empty()) throw DomainError("vk-matching: no case matches filter");
  auto grid = pick_grid(c, {100, 200, 400, 800});

  VerificationReport rep;
  rep.suite = c.suite;
  ordered_json echo = echo_base(c, grid);
  auto labels = ordered_json::array();
  for (const auto& cs : cases) labels.push_back(cs.tag);
  echo["cases"] = labels;
  seal(rep, std::move(echo));

  bool all_decreasing = true;
  for (const auto& cs : cases) {
    double prev = 0.0;
    bool first = true, dec = true;
    for (auto h : grid) {
      double v4 = V_k_direct(cs.q, h, CongruenceSpec(cs.r, cs.cls));
      double msum = 0.0;
      for_each_perfect_matching(4, [&](const Matching& m) {
        double prod = 1.0;
        for (auto [a, b] : m)
          prod *= V_k_direct(
              cs.q, h,
              CongruenceSpec(cs.r, {cs.cls[size_t(a - 1)], cs.cls[size_t(b - 1)]}));
        msum += prod;
        return true;
      });
      rep.rows.push_back(make_row(cs.tag, h, v4, msum));
      double gap = std::fabs(v4 - msum) / (double(h) * double(h));
      if (!first && gap >= prev) dec = false;
      prev = gap;
      first = false;
    }
    rep.notes.push_back(fmt("%s: |V4 - match|/h^2 strictly decreasing: %s",
                            cs.tag, dec ? "yes" : "NO"));
    if (!dec) all_decreasing = false;
  }
  LineFit fit = fit_rows(rep.rows);
  rep.has_slope = fit.n >= 4;
  if (rep.has_slope) {
    rep.slope = fit.slope;
    rep.slope_stderr = fit.stderr_;
  }
  rep.pass = all_decreasing;
  rep.notes.push_back(
      "pass rule: normalized matching gap strictly decreasing for every case; "
      "slope field is informational");
  return rep;
}

// ---------------------------------------------------------------------------
// rk-ap: brute R_2 in the progression against the structured main term.
// Trend rule per case, plus a loose ratio window for the simple main term at
// the largest h of the equal-class case.

VerificationReport run_rk_ap(const ExperimentConfig& c) {
  struct Case {
    CongruenceSpec spec;
    std::string tag;
  };
  std::vector<Case> cases;
  if (!c.classes.empty()) {
    if (c.classes.size() != 2)
      throw DomainError("rk-ap: custom class vector must have k = 2");
    std::int64_t r = c.r > 0 ? c.r : 4;
    cases.push_back({CongruenceSpec(r, c.classes),
                     fmt("r=%lld c=%lld:%lld", (long long)r,
                         (long long)c.classes[0], (long long)c.classes[1])});
  } else {
    std::int64_t r = c.r > 0 ? c.r : 4;
    cases.push_back({CongruenceSpec(r, {1, 1}), fmt("r=%lld c=1:1", (long long)r)});
    cases.push_back({CongruenceSpec(r, {1, 3}), fmt("r=%lld c=1:3", (long long)r)});
  }
  auto grid = pick_grid(c, {500, 1000, 2000});

  VerificationReport rep;
  rep.suite = c.suite;
  ordered_json echo = echo_base(c, grid);
  auto labels = ordered_json::array();
  for (const auto& cs : cases) labels.push_back(cs.tag);
  echo["cases"] = labels;
  seal(rep, std::move(echo));

  bool all_decreasing = true;
  double equal_brute_last = 0.0;
  const Case* equal_case = nullptr;
  for (const auto& cs : cases)
    if (cs.spec.classes[0] == cs.spec.classes[1]) equal_case = &cs;

  for (const auto& cs : cases) {
    // The main term's relative error shrinks only like 1/log h, so single
    // steps may bounce; the decrease is asserted as a fitted trend.
    std::vector<double> xs, ys;
    for (auto h : grid) {
      double brute = R_k_brute(h, cs.spec, c.prime_limit, c.threads).value;
      double main = R_k_main_structured(h, cs.spec);
      rep.rows.push_back(make_row(cs.tag, h, brute, main));
      double relgap = std::fabs(brute - main) / std::fabs(brute);
      if (relgap > 0.0) {
        xs.push_back(std::log(double(h)));
        ys.push_back(std::log(relgap));
      }
      if (equal_case == &cs && h == grid.back()) equal_brute_last = brute;
    }
    LineFit fit = fit_line(xs, ys);
    bool dec = fit.n >= 2 && fit.slope < 0.0;
    rep.notes.push_back(fmt("%s: relative gap trend slope %.4f (decreasing: %s)",
                            cs.tag.c_str(), fit.slope, dec ? "yes" : "NO"));
    if (!dec) all_decreasing = false;
  }

  bool ratio_ok = true;
  if (equal_case != nullptr) {
    double simple = R_k_main_simple(grid.back(), equal_case->spec);
    double ratio = simple / equal_brute_last;
    ratio_ok = ratio >= 0.6 && ratio <= 1.4;
    rep.rows.push_back(make_row("simple-ratio " + equal_case->tag, grid.back(),
                                simple, equal_brute_last));
    rep.notes.push_back(fmt("simple/brute at h=%lld: %.6f (window [0.6, 1.4])",
                            (long long)grid.back(), ratio));
  }

  // Three grid points per case: below the four-point threshold by design,
  // the relative error decays only logarithmically.
  rep.has_slope = false;
  rep.pass = all_decreasing && ratio_ok;
  rep.notes.push_back(
      "pass rule: per-case relative gap trending down, and the simple main "
      "term within the ratio window on the equal-class case");
  return rep;
}

// ---------------------------------------------------------------------------
// ms-k2: unrestricted k=2 moment sum against mu2 (-h log h + A h).

VerificationReport run_ms_k2(const ExperimentConfig& c) {
  std::vector<std::int64_t> fallback;
  for (int j = 0; j <= 16; ++j)
    fallback.push_back(std::llround(512.0 * std::pow(2.0, j / 4.0)));
  auto grid = pick_grid(c, std::move(fallback));

  VerificationReport rep;
  rep.suite = c.suite;
  seal(rep, echo_base(c, grid));

  CongruenceSpec spec(1, {1, 1});
  for (auto h : grid)
    rep.rows.push_back(make_row("r=1 k=2", h,
                                R_k_brute(h, spec, c.prime_limit, c.threads).value,
                                R_k_main_simple(h, spec)));
  finish_envelope(rep, 0.75);
  return rep;
}

// ---------------------------------------------------------------------------
// gallagher: moment ratio against the Poisson reference value 1.

VerificationReport run_gallagher(const ExperimentConfig& c) {
  struct Case {
    std::int64_t h;
    int k;
    double lo, hi;
  };
  std::vector<Case> cases;
  if (c.k > 0 || !c.h_grid.empty()) {
    int k = c.k > 0 ? c.k : 2;
    double lo = k == 2 ? 0.9 : 0.85, hi = k == 2 ? 1.1 : 1.15;
    for (auto h : pick_grid(c, {k == 2 ? 100 : 60}))
      cases.push_back({h, k, lo, hi});
  } else {
    cases.push_back({100, 2, 0.9, 1.1});
    cases.push_back({60, 3, 0.85, 1.15});
  }

  VerificationReport rep;
  rep.suite = c.suite;
  std::vector<std::int64_t> grid;
  for (const auto& cs : cases) grid.push_back(cs.h);
  ordered_json echo = echo_base(c, grid);
  auto ks = ordered_json::array();
  for (const auto& cs : cases) ks.push_back(cs.k);
  echo["k"] = ks;
  seal(rep, std::move(echo));

  bool all_ok = true;
  for (const auto& cs : cases) {
    double ratio = gallagher_ratio(cs.h, cs.k, c.prime_limit);
    rep.rows.push_back(make_row(fmt("k=%d", cs.k), cs.h, ratio, 1.0));
    bool ok = ratio >= cs.lo && ratio <= cs.hi;
    rep.notes.push_back(fmt("k=%d h=%lld: ratio %.6f, window [%.2f, %.2f]: %s",
                            cs.k, (long long)cs.h, ratio, cs.lo, cs.hi,
                            ok ? "ok" : "OUTSIDE"));
    if (!ok) all_ok = false;
  }
  rep.has_slope = false;
  rep.pass = all_ok;
  rep.notes.push_back("pass rule: every ratio inside its window");
  return rep;
}

// ---------------------------------------------------------------------------
// smooth-poisson: truncation gap between the direct weighted sum and its
// single-term Poisson resummation, maximized over a 101-point frequency grid.

VerificationReport run_smooth_poisson(const ExperimentConfig& c) {
  struct W {
    double a, b, cc;
  };
  std::vector<W> weights = {{2, 3, 0.7}, {1, 1.5, 1}};
  auto grid = pick_grid(c, {100, 200, 400, 800});

  VerificationReport rep;
  rep.suite = c.suite;
  ordered_json echo = echo_base(c, grid);
  auto ws = ordered_json::array();
  for (const auto& w : weights) ws.push_back(weight_tag(w.a, w.b, w.cc));
  echo["weights"] = ws;
  seal(rep, std::move(echo));

  bool all_in_band = true;
  for (const auto& w : weights) {
    auto f = SmoothWeight::bump(w.a, w.b, w.cc);
    std::string tag = weight_tag(w.a, w.b, w.cc);
    for (auto h : grid) {
      double mx = 0.0;
      for (int j = 0; j <= 100; ++j) {
        double ab = -0.5 + j / 100.0;
        double d = std::abs(E_fh(f, h, ab) - E_fh_poisson(f, h, ab));
        mx = std::max(mx, d);
      }
      rep.rows.push_back(make_row(tag, h, mx, 0.0));
    }
    LineFit fit = fit_rows(rep.rows,
                           [&](const ReportRow& r) { return r.label == tag; });
    bool ok = fit.n >= 4 && fit.slope >= -1.2 && fit.slope <= -0.8;
    rep.notes.push_back(fmt("%s: max-gap slope %.4f +- %.4f, band [-1.2, -0.8]: %s",
                            tag.c_str(), fit.slope, fit.stderr_,
                            ok ? "ok" : "OUTSIDE"));
    if (!ok) all_in_band = false;
  }
  LineFit pooled = fit_rows(rep.rows);
  rep.has_slope = pooled.n >= 4;
  if (rep.has_slope) {
    rep.slope = pooled.slope;
    rep.slope_stderr = pooled.stderr_;
  }
  rep.pass = all_in_band;
  rep.notes.push_back("pass rule: per-weight slope within -1 +- 0.2");
  return rep;
}

// ---------------------------------------------------------------------------
// smooth-v2: semi-exact smooth V2 against its closed form; the order-h
// residual must stay bounded across the grid.

VerificationReport run_smooth_v2(const ExperimentConfig& c) {
  auto f1 = SmoothWeight::bump(2, 4, 1);
  auto f2 = SmoothWeight::bump(0.5, 1.5, 0.8);
  std::string tag = weight_tag(2, 4, 1) + "*" + weight_tag(0.5, 1.5, 0.8);
  auto grid = pick_grid(c, {200, 400, 800, 1600});

  VerificationReport rep;
  rep.suite = c.suite;
  ordered_json echo = echo_base(c, grid);
  echo["weights"] = {weight_tag(2, 4, 1), weight_tag(0.5, 1.5, 0.8)};
  seal(rep, std::move(echo));

  std::vector<double> scaled;
  for (auto h : grid) {
    double semi = V2_smooth_semi_exact(f1, f2, h, c.prime_limit).value;
    double closed = V2_smooth_closed(f1, f2, h).total;
    rep.rows.push_back(make_row(tag, h, semi, closed));
    scaled.push_back(std::fabs(semi - closed) / double(h));
  }
  double mx = *std::max_element(scaled.begin(), scaled.end());
  double mn = *std::min_element(scaled.begin(), scaled.end());
  LineFit fit = fit_rows(rep.rows);
  rep.has_slope = fit.n >= 4;
  if (rep.has_slope) {
    rep.slope = fit.slope;
    rep.slope_stderr = fit.stderr_;
  }
  rep.pass = mn > 0.0 && mx / mn <= 3.0;
  rep.notes.push_back(fmt("|residual|/h spread max/min = %.4f (bound 3)",
                          mn > 0.0 ? mx / mn : 0.0));
  rep.notes.push_back(
      "pass rule: order-h residual bounded, spread at most 3; slope field is "
      "informational");
  return rep;
}

// ---------------------------------------------------------------------------
// smooth-sfh: singular-series average under a smooth weight against the
// closed form (linear, log, and derived constant terms).

VerificationReport run_smooth_sfh(const ExperimentConfig& c) {
  auto f = SmoothWeight::bump(1, 2, 1);
  std::string tag = weight_tag(1, 2, 1);
  std::vector<std::int64_t> fallback;
  for (std::int64_t h = 128; h <= 8192; h *= 2) fallback.push_back(h);
  auto grid = pick_grid(c, std::move(fallback));

  VerificationReport rep;
  rep.suite = c.suite;
  ordered_json echo = echo_base(c, grid);
  echo["weights"] = {tag};
  seal(rep, std::move(echo));

  for (auto h : grid) {
    auto closed = S_fh_closed(f, h);
    rep.rows.push_back(make_row(tag, h, S_fh_brute(f, h, c.prime_limit).value,
                                closed.total));
  }
  finish_envelope(rep, -0.50);
  rep.notes.push_back(
      "constant term uses the derived value -mellin(f,0)/2; reported, not "
      "asserted against a closed reference");
  return rep;
}

// ---------------------------------------------------------------------------
// mu-avg: empirical stability of the averaging envelopes.  Report-only:
// always passes, warns when the implied constants spread by more than 10x.

VerificationReport run_mu_avg(const ExperimentConfig& c) {
  auto f1 = SmoothWeight::bump(1, 2, 1);
  auto f2 = SmoothWeight::bump(1, 2, 1);

  VerificationReport rep;
  rep.suite = c.suite;
  std::vector<std::int64_t> diag_grid = {32, 64, 128, 256};
  ordered_json echo = echo_base(c, diag_grid);
  echo["m"] = {8, 16, 32};
  echo["weights"] = {weight_tag(1, 2, 1), weight_tag(1, 2, 1)};
  seal(rep, std::move(echo));

  // Diagonal average with the mu = 0 term removed, against
  // m h^-2 min(m, h)^3 at constant 1.
  double cmin = 0.0, cmax = 0.0;
  bool have_c = false, zero_c = false;
  for (std::int64_t m : {8, 16, 32}) {
    for (std::int64_t h : diag_grid) {
      std::complex<double> full = mu_average_diag(f1, f2, m, h, 0.0);
      std::complex<double> mu0 = E_fh(f1, h, 0.0) * E_fh(f2, h, 0.0);
      double lhs = std::abs(full - mu0);
      double env = double(m) / (double(h) * double(h)) *
                   std::pow(double(std::min(m, h)), 3.0);
      rep.rows.push_back(make_row(fmt("diag-avg m=%lld", (long long)m), h, lhs, env));
      double cc = lhs / env;
      if (cc > 0.0) {
        cmin = have_c ? std::min(cmin, cc) : cc;
        cmax = have_c ? std::max(cmax, cc) : cc;
        have_c = true;
      } else {
        zero_c = true;
      }
    }
  }
  bool warn_diag = !have_c || zero_c || cmax / cmin > 10.0;
  if (have_c)
    rep.notes.push_back(fmt("diagonal-average implied constants in [%.3e, %.3e], spread %.2fx%s",
                            cmin, cmax, cmax / cmin,
                            zero_c ? " (some vanish)" : ""));
  else
    rep.notes.push_back("diagonal-average implied constants all vanish");

  // Off-diagonal average against (m + h) |E_{f1 f2}(a1 - a2)| + C m; rows
  // carry the C = 1 envelope, the note the implied C spread.
  auto prod = [&](double x) { return f1(x) * f2(x); };
  cmin = cmax = 0.0;
  have_c = zero_c = false;
  for (std::int64_t m : {4, 16}) {
    for (std::int64_t h : {128, 512}) {
      for (double a1 : {0.13, 0.31}) {
        const double a2 = 0.05;
        CompensatedSum re, im;
        for (std::int64_t mu = 0; mu < m; ++mu) {
          auto p = E_fh(f1, h, double(mu) / double(m) + a1) *
                   E_fh(f2, h, double(mu) / double(m) + a2);
          re.add(p.real());
          im.add(p.imag());
        }
        double lhs = std::abs(std::complex<double>(re.value(), im.value()));
        double lead =
            (double(m) + double(h)) * std::abs(E_fh_generic(prod, 1, 2, h, a1 - a2));
        rep.rows.push_back(make_row(fmt("offdiag-avg m=%lld a1=%.2f", (long long)m, a1),
                                    h, lhs, lead + double(m)));
        double cc = std::max(0.0, lhs - lead) / double(m);
        if (cc > 0.0) {
          cmin = have_c ? std::min(cmin, cc) : cc;
          cmax = have_c ? std::max(cmax, cc) : cc;
          have_c = true;
        } else {
          zero_c = true;
        }
      }
    }
  }
  bool warn_offdiag = !have_c || zero_c || cmax / cmin > 10.0;
  if (have_c)
    rep.notes.push_back(fmt("offdiag-average implied constants in [%.3e, %.3e], spread %.2fx%s",
                            cmin, cmax, cmax / cmin,
                            zero_c ? " (some vanish)" : ""));
  else
    rep.notes.push_back("offdiag-average implied constants all vanish");

  rep.has_slope = false;
  rep.pass = true;
  rep.warn = warn_diag || warn_offdiag;
  rep.notes.push_back(
      "report-only suite: warn set when an implied-constant spread exceeds "
      "10x or constants vanish; exit status unaffected");
  return rep;
}

// ---------------------------------------------------------------------------
// oddterm-report: exact enumeration of the odd-divisor cross term; emitted
// for inspection, no envelope is asserted.

VerificationReport run_oddterm(const ExperimentConfig& c) {
  std::vector<std::int64_t> qs = c.q > 0 ? std::vector<std::int64_t>{c.q}
                                         : std::vector<std::int64_t>{15, 21};
  std::int64_t r = c.r > 0 ? c.r : 2;
  int k = c.k > 0 ? c.k : 4;
  auto grid = pick_grid(c, {100, 200, 400});

  VerificationReport rep;
  rep.suite = c.suite;
  ordered_json echo = echo_base(c, grid);
  echo["q"] = qs;
  echo["r"] = r;
  echo["k"] = k;
  seal(rep, std::move(echo));

  double worst = 0.0;
  for (auto q : qs) {
    for (auto h : grid) {
      double diag = oddterm_diagnostic(q, h, r, k);
      rep.rows.push_back(
          make_row(fmt("q=%lld r=%lld k=%d", (long long)q, (long long)r, k), h,
                   diag, 0.0));
      worst = std::max(worst, diag / std::pow(double(h), k / 2.0));
    }
  }
  rep.has_slope = false;
  rep.pass = true;
  rep.notes.push_back(fmt("max diagnostic / h^(k/2) = %.6e", worst));
  rep.notes.push_back("report-only suite: rows emitted for inspection");
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------

LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  LineFit out;
  size_t n = std::min(xs.size(), ys.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  out.n = int(n);
  if (n < 2) return out;
  double den = double(n) * sxx - sx * sx;
  if (den == 0.0) return out;
  out.slope = (double(n) * sxy - sx * sy) / den;
  out.intercept = (sy - out.slope * sx) / double(n);
  if (n > 2) {
    double rss = 0;
    for (size_t i = 0; i < n; ++i) {
      double e = ys[i] - (out.intercept + out.slope * xs[i]);
      rss += e * e;
    }
    out.stderr_ = std::sqrt(rss / double(n - 2) * double(n) / den);
  }
  return out;
}

void ExperimentConfig::validate() const {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw DomainError("unknown suite: " + suite);
  for (size_t i = 0; i < h_grid.size(); ++i) {
    if (h_grid[i] <= 0) throw DomainError("h grid entries must be positive");
    if (i > 0 && h_grid[i] <= h_grid[i - 1])
      throw DomainError("h grid must be strictly ascending");
  }
  if (h_min < 0 || h_max < 0) throw DomainError("h window must be nonnegative");
  if (h_min > 0 && h_max > 0 && h_min > h_max)
    throw DomainError("h window is empty");
  if (!h_grid.empty() && (h_min > 0 || h_max > 0))
    throw DomainError("give either an explicit h grid or a window, not both");
  if (prime_limit < 10000) throw DomainError("prime_limit must be at least 10^4");
  if (threads < 1 || threads > 256) throw DomainError("threads must be in [1, 256]");
  if (r < 0 || q < 0 || k < 0)
    throw DomainError("r, q, k must be nonnegative");
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "two-term",    "v2-bridge", "vk-matching",    "rk-ap",
      "ms-k2",       "gallagher", "smooth-poisson", "smooth-v2",
      "smooth-sfh",  "mu-avg",    "oddterm-report"};
  return names;
}

VerificationReport run_suite(const ExperimentConfig& config) {
  config.validate();
  if (config.suite == "two-term") return run_two_term(config);
  if (config.suite == "v2-bridge") return run_v2_bridge(config);
  if (config.suite == "vk-matching") return run_vk_matching(config);
  if (config.suite == "rk-ap") return run_rk_ap(config);
  if (config.suite == "ms-k2") return run_ms_k2(config);
  if (config.suite == "gallagher") return run_gallagher(config);
  if (config.suite == "smooth-poisson") return run_smooth_poisson(config);
  if (config.suite == "smooth-v2") return run_smooth_v2(config);
  if (config.suite == "smooth-sfh") return run_smooth_sfh(config);
  if (config.suite == "mu-avg") return run_mu_avg(config);
  return run_oddterm(config);
}

std::string VerificationReport::to_json() const {
  ordered_json j;
  j["schema_version"] = report_schema_version;
  j["id"] = suite;
  j["version"] = version_string;
  j["config"] = config_echo.empty() ? ordered_json::object()
                                    : ordered_json::parse(config_echo);
  auto rows_j = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json jr;
    jr["case"] = r.label;
    jr["h"] = r.h;
    jr["computed"] = r.computed;
    jr["predicted"] = r.predicted;
    jr["residual"] = r.residual;
    rows_j.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows_j);
  if (has_slope) {
    j["slope"] = slope;
    j["slope_stderr"] = slope_stderr;
  } else {
    j["slope"] = nullptr;
    j["slope_stderr"] = nullptr;
  }
  j["pass"] = pass;
  j["warn"] = warn;
  j["notes"] = notes;
  return j.dump(2) + "\n";
}

std::string VerificationReport::to_csv() const {
  std::string out = "experiment,h,computed,predicted,residual\n";
  char buf[320];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%lld,%.17g,%.17g,%.17g\n",
                  r.label.c_str(), (long long)r.h, r.computed, r.predicted,
                  r.residual);
    out += buf;
  }
  return out;
}

}  // namespace singser
