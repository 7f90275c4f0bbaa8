// Exactness checks for the singular-series evaluators, the geometric
// exponential sums, and the progression-restricted closed forms.  Values
// with an infinite Euler product carry a tail bound; comparisons against an
// independent oracle must stay inside the combined bounds.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "singser/apsums.hpp"
#include "singser/arith.hpp"
#include "singser/characters.hpp"
#include "singser/errors.hpp"
#include "singser/expsums.hpp"
#include "singser/lvalues.hpp"
#include "singser/singular.hpp"

using namespace singser;
using std::complex;
using i64 = std::int64_t;

namespace {

TupleSet ts(std::vector<i64> v) { return TupleSet(std::move(v)); }

CongruenceSpec spec(i64 r, std::vector<i64> classes) {
  return CongruenceSpec(r, std::move(classes));
}

}  // namespace

TEST_CASE("tuple sets sort, dedupe, and measure diameter") {
  auto h = ts({5, 0, 2, 2});
  CHECK(h.size() == 3);
  CHECK(h.elements() == std::vector<i64>{0, 2, 5});
  CHECK(h.diameter() == 5);
  CHECK(ts({6, 0, 2}).elements() == ts({0, 2, 6}).elements());

  CHECK(ts({}).empty());
  CHECK(ts({}).diameter() == 0);
  CHECK(ts({7}).diameter() == 0);

  std::vector<i64> too_big(65);
  std::iota(too_big.begin(), too_big.end(), 0);
  CHECK_THROWS_AS(TupleSet{too_big}, CapacityError);
}

TEST_CASE("nu counts distinct residues") {
  CHECK(nu(ts({0, 2, 6}), 2) == 1);
  CHECK(nu(ts({0, 2, 6}), 3) == 2);
  CHECK(nu(ts({0, 2, 6}), 5) == 3);
  CHECK(nu(ts({0, 2, 6}), 7) == 3);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<i64> elems;
    for (int i = 0; i < 5; ++i) elems.push_back(i64(rng() % 1000) - 500);
    auto h = ts(elems);
    for (i64 p : {2, 3, 5, 7, 11, 13}) {
      std::set<i64> residues;
      for (i64 e : h.elements()) residues.insert(((e % p) + p) % p);
      CHECK(nu(h, p) == i64(residues.size()));
    }
  }

  CHECK_THROWS_AS(nu(ts({}), 2), DomainError);
  CHECK_THROWS_AS(nu(ts({0, 2}), 1), DomainError);
}

TEST_CASE("singular series matches the frozen triple value") {
  auto s = singular_series(ts({0, 2, 6}), 1, 1'000'000);
  CHECK(s.tail_bound > 0.0);
  CHECK(s.tail_bound < 1e-4);
  CHECK(std::abs(s.value - 2.858248600) <= s.tail_bound + 1e-6);
}

TEST_CASE("singular series vanishes on a full residue system") {
  // {0, 2, 4} covers every class mod 3, so the p = 3 factor is zero and
  // truncation is exact.
  auto s = singular_series(ts({0, 2, 4}), 1, 1'000'000);
  CHECK(s.value == 0.0);
  CHECK(s.tail_bound == 0.0);
}

TEST_CASE("singular series degenerate and invariance cases") {
  CHECK(singular_series(ts({}), 1, 100'000).value == 1.0);
  CHECK(singular_series(ts({7}), 1, 100'000).value == 1.0);
  CHECK(singular_series(ts({7}), 1, 100'000).tail_bound == 0.0);

  // translation leaves every residue count unchanged
  auto a = singular_series(ts({0, 2, 6}), 1, 200'000);
  auto b = singular_series(ts({10, 12, 16}), 1, 200'000);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-14));

  // dropping the p = 3 factor: {0,2,6} occupies 2 classes mod 3, so the
  // restricted series loses a factor (1 - 2/3)/(1 - 1/3)^3 = 9/8
  auto full = singular_series(ts({0, 2, 6}), 1, 200'000);
  auto away3 = singular_series(ts({0, 2, 6}), 3, 200'000);
  CHECK(away3.value ==
        doctest::Approx(full.value * 8.0 / 9.0)
            .epsilon((full.tail_bound + away3.tail_bound) + 1e-9));

  CHECK_THROWS_AS(singular_series(ts({0, 2}), 0, 100'000), DomainError);
  CHECK_THROWS_AS(singular_series(ts({0, 500}), 1, 100), DomainError);
}

TEST_CASE("closed two-element product agrees with the generic evaluator") {
  std::mt19937_64 rng(20260817);
  std::uniform_int_distribution<i64> mdist(1, 500);
  std::uniform_int_distribution<i64> rdist(1, 12);
  std::uniform_int_distribution<int> sign(0, 1);
  const std::uint64_t L = 200'000;
  for (int trial = 0; trial < 200; ++trial) {
    i64 m = mdist(rng) * (sign(rng) ? 1 : -1);
    i64 r = rdist(rng);
    auto closed = two_term_exact(m, r, L);
    auto generic = singular_series(ts({0, m}), r, L);
    CHECK(std::abs(closed.value - generic.value) <=
          closed.tail_bound + generic.tail_bound + 1e-12);
  }
}

TEST_CASE("two-element series is even in the shift") {
  const std::uint64_t L = 100'000;
  for (i64 m = 1; m <= 100; ++m)
    for (i64 r : {1, 4}) {
      auto plus = two_term_exact(m, r, L);
      auto minus = two_term_exact(-m, r, L);
      CHECK(plus.value == minus.value);
      CHECK(plus.tail_bound == minus.tail_bound);
    }
}

TEST_CASE("two-element series vanishes when shift and modulus are both odd") {
  for (auto [m, r] : {std::pair<i64, i64>{3, 5}, {15, 9}, {1, 3}, {-7, 21}}) {
    auto s = two_term_exact(m, r, 100'000);
    CHECK(s.value == 0.0);
    CHECK(s.tail_bound == 0.0);
  }
  CHECK_THROWS_AS(two_term_exact(0, 1, 100'000), DomainError);
  CHECK_THROWS_AS(two_term_exact(4, 0, 100'000), DomainError);
}

TEST_CASE("subset transform inverts back to the singular series") {
  // sum over subsets J of the centered series recovers the plain series
  const std::vector<i64> base = {0, 2, 6, 8, 12};
  const std::uint64_t L = 100'000;
  for (i64 r : {1, 3, 4}) {
    double lhs = 0.0, budget = 1e-9;
    for (unsigned mask = 0; mask < 32; ++mask) {
      std::vector<i64> elems;
      for (unsigned bit = 0; bit < 5; ++bit)
        if (mask & (1u << bit)) elems.push_back(base[bit]);
      auto part = singular_series_zero(ts(elems), r, L);
      lhs += part.value;
      budget += part.tail_bound;
    }
    auto rhs = singular_series(ts(base), r, L);
    budget += rhs.tail_bound;
    CHECK(std::abs(lhs - rhs.value) <= budget);
  }
}

TEST_CASE("subset transform rejects oversize tuples") {
  std::vector<i64> elems;
  for (i64 i = 0; i < 21; ++i) elems.push_back(2 * i);
  CHECK_THROWS_AS(singular_series_zero(ts(elems), 1, 100'000), CapacityError);
}

TEST_CASE("rational phases reduce to lowest terms") {
  // phases live mod 1, so 6/4 folds to 2/4 before the gcd
  auto p = RationalPhase::of(6, 4);
  CHECK(p.a == 1);
  CHECK(p.q == 2);
  CHECK(RationalPhase::of(0, 7).zero());
  CHECK(RationalPhase::of(14, 7).zero());
  auto n = RationalPhase::of(-3, 7);
  CHECK(n.a == 4);
  CHECK(n.q == 7);
  CHECK(RationalPhase::of(1, 3).real() == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(RationalPhase::of(1, 0), DomainError);
}

TEST_CASE("exponential sums collapse to the closed geometric form") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<i64> qdist(1, 40), hdist(1, 300), rdist(1, 8);
  for (int trial = 0; trial < 500; ++trial) {
    i64 q = qdist(rng);
    i64 a = 1 + i64(rng() % std::uint64_t(q));
    i64 h = hdist(rng);
    i64 r = rdist(rng);
    i64 c = 1 + i64(rng() % std::uint64_t(r));
    complex<double> direct = 0.0;
    for (i64 m = 1; m <= h; ++m)
      if (m % r == c % r) direct += unit_root(m * a, q);
    CHECK(std::abs(E_rc(RationalPhase::of(a, q), h, r, c) - direct) < 1e-9);
  }
}

TEST_CASE("unrestricted sum is the r = 1 specialization") {
  for (i64 h : {1, 17, 240})
    for (auto [a, q] : {std::pair<i64, i64>{1, 3}, {2, 7}, {5, 5}}) {
      auto phase = RationalPhase::of(a, q);
      CHECK(std::abs(E_full(phase, h) - E_rc(phase, h, 1, 1)) < 1e-15);
    }
}

TEST_CASE("zero phase degenerates to the class count") {
  for (i64 h : {5, 100, 321})
    for (i64 r : {1, 2, 5})
      for (i64 c = 1; c <= r; ++c) {
        auto e = E_rc(RationalPhase::of(7, 7), h, r, c);
        CHECK(e.real() == doctest::Approx(double(count_in_class(1, h, c, r))));
        CHECK(std::abs(e.imag()) < 1e-12);
      }
  CHECK_THROWS_AS(E_rc(RationalPhase::of(1, 2), 0, 1, 1), DomainError);
}

TEST_CASE("the F_r majorant dominates every congruence class") {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<i64> qdist(2, 30), hdist(10, 400), rdist(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    i64 q = qdist(rng);
    i64 a = 1 + i64(rng() % std::uint64_t(q));
    i64 h = hdist(rng);
    i64 r = rdist(rng);
    double bound = F_r(double(a) / double(q), h, r);
    for (i64 c = 1; c <= r; ++c)
      CHECK(std::abs(E_rc(RationalPhase::of(a, q), h, r, c)) <= bound + 1e-9);
  }
}

TEST_CASE("odd-term diagnostic: frozen value, saturation, domain walls") {
  const double base = oddterm_diagnostic(15, 100, 2, 4);
  CHECK(base == doctest::Approx(4846.485098082460).epsilon(1e-10));
  // for odd squarefree q every 1/||a/q + n/2|| is at most 2q, so the sum is
  // h-independent once h clears that bar
  CHECK(oddterm_diagnostic(15, 200, 2, 4) == doctest::Approx(base).epsilon(1e-14));
  // an even divisor puts a/q + n/2 on an integer, so the min picks h instead
  CHECK(oddterm_diagnostic(30, 100, 2, 4) > base);

  CHECK_THROWS_AS(oddterm_diagnostic(0, 100, 2, 4), DomainError);
  CHECK_THROWS_AS(oddterm_diagnostic(31, 100, 2, 4), DomainError);
  CHECK_THROWS_AS(oddterm_diagnostic(12, 100, 2, 4), DomainError);
  CHECK_THROWS_AS(oddterm_diagnostic(15, 100, 2, 5), DomainError);
}

TEST_CASE("class counting matches the direct loop") {
  for (i64 lo = -15; lo <= 15; ++lo)
    for (i64 hi = lo; hi <= lo + 25; ++hi)
      for (i64 r = 1; r <= 6; ++r)
        for (i64 c = 1; c <= r; ++c) {
          i64 direct = 0;
          for (i64 n = lo; n <= hi; ++n)
            if (((n - c) % r + r) % r == 0) ++direct;
          CHECK(count_in_class(lo, hi, c, r) == direct);
        }
}

TEST_CASE("mertens-like sums: frozen value, caching, and the p = 2 factor") {
  auto [m1, m2] = mertens_like_sums(400, 1);
  CHECK(m1 == doctest::Approx(20.347161325958).epsilon(1e-9));
  CHECK(m2 > 1.0);
  auto again = mertens_like_sums(400, 1);
  CHECK(again.first == m1);
  CHECK(again.second == m2);

  // excluding p = 2 removes the factor (1 + 1/(2-1)) = 2 from the product
  auto [m1r4, m2r4] = mertens_like_sums(400, 4);
  CHECK(2.0 * (m1r4 + 1.0) == doctest::Approx(m1 + 1.0).epsilon(1e-12));
  (void)m2r4;

  CHECK_THROWS_AS(mertens_like_sums(1, 1), DomainError);
}

TEST_CASE("character products: exact zero at modulus 4, unity at modulus 1") {
  auto mod4 = characters_mod(4);
  REQUIRE(mod4.size() == 2);
  double tail = 0.0;
  // the p = 3 factor is 1 - (1 - chi(3))^2/(3-1)^2 = 0 for chi(3) = -1
  auto a4 = A_r_chi(4, mod4[1], 1'000'000, &tail);
  CHECK(a4 == complex<double>(0.0, 0.0));

  auto mod1 = characters_mod(1);
  REQUIRE(mod1.size() == 1);
  auto a1 = A_r_chi(1, mod1[0], 1'000'000, &tail);
  CHECK(a1.real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a1.imag() == 0.0);

  CHECK_THROWS_AS(A_r_chi(0, mod4[1], 1'000'000), DomainError);
}

TEST_CASE("C0 matches its closed value") {
  CHECK(C0(1) == doctest::Approx(-(euler_gamma + log_two_pi)).epsilon(1e-14));
  CHECK(C0(1) == doctest::Approx(-2.415092731310879).epsilon(1e-12));
  CHECK(C0(4) == doctest::Approx(-0.860972775375467).epsilon(1e-12));

  // phi(4)/4 = 1/2; only p = 2 divides, contributing log 2/(2-1)
  double by_hand =
      0.5 * (std::log(4.0 / (2.0 * M_PI)) - euler_gamma - std::log(2.0));
  CHECK(C0(4) == doctest::Approx(by_hand).epsilon(1e-13));

  double c2 = 0.5 * (std::log(2.0 / (2.0 * M_PI)) - euler_gamma - std::log(2.0));
  CHECK(C0(2) == doctest::Approx(c2).epsilon(1e-13));
  CHECK_THROWS_AS(C0(0), DomainError);
}

TEST_CASE("pair-sum closed form: zero class matches the explicit expression") {
  for (auto [r, h] : {std::pair<i64, i64>{4, 1000}, {3, 700}, {1, 512}}) {
    double hd = double(h), rd = double(r);
    double plog = 0.0;
    for (auto [p, e] : factorize(r).factors) {
      plog += std::log(double(p)) / (double(p) - 1.0);
      (void)e;
    }
    double expect = hd * hd / (2.0 * rd) -
                    (hd / 2.0) * (double(euler_phi(r)) / rd) *
                        (std::log(hd / rd) + euler_gamma + log_two_pi + plog - 1.0);
    CHECK(S_rvh_closed(r, r, h).total == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK_THROWS_AS(S_rvh_closed(0, 1, 100), DomainError);
}

TEST_CASE("pair-sum closed form tracks the exact sum") {
  const std::uint64_t L = 1'000'000;
  for (auto [r, v] : {std::pair<i64, i64>{3, 1}, {4, 2}, {1, 1}}) {
    const i64 h = 2048;
    auto brute = S_rvh_brute(r, v, h, L);
    auto closed = S_rvh_closed(r, v, h);
    CHECK(std::abs(brute.value - closed.total) <
          0.01 * std::abs(brute.value));
  }
}

TEST_CASE("V2 closed form: frozen unequal-class value") {
  auto terms = V2_closed(1000, 4, 1, 3);
  CHECK(terms.quadratic_term == 0.0);
  CHECK(terms.mertens_term == 0.0);
  CHECK(terms.log_term == 0.0);
  CHECK(terms.character_term == complex<double>(0.0, 0.0));
  CHECK(terms.total == doctest::Approx(-86.643397569993155).epsilon(1e-12));
  // v = 2, d = 2, r' = 2: -h (phi(4)/(16 phi(2))) Lambda(2) = -h log2/8
  CHECK(terms.total == doctest::Approx(-1000.0 * std::log(2.0) / 8.0).epsilon(1e-12));
  CHECK(terms.total == terms.constant_term);

  // r = 3, classes 1,2: v = 1, r' = 3: -h (phi(3)/(9 phi(3))) Lambda(3)
  auto t3 = V2_closed(900, 3, 1, 2);
  CHECK(t3.total == doctest::Approx(-900.0 * std::log(3.0) / 9.0).epsilon(1e-12));
}

TEST_CASE("V2 closed form: equal classes match the explicit expression") {
  for (auto [r, h] : {std::pair<i64, i64>{1, 500}, {3, 800}, {4, 1024}}) {
    double hd = double(h), rd = double(r);
    double m1 = mertens_like_sums(h, r).first;
    double expect = (hd / rd) * m1 -
                    hd * (double(euler_phi(r)) / (rd * rd)) * std::log(hd) +
                    (hd / rd) * (1.0 + C0(r) + double(euler_phi(r)) / rd);
    CHECK(V2_closed(h, r, 1, 1).total == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("collapsed pair main term equals the diagonal minus its Mertens part") {
  for (auto [h, r] : {std::pair<i64, i64>{500, 1}, {700, 3}, {1024, 4}, {333, 6}}) {
    double m1 = mertens_like_sums(h, r).first;
    double viaV2 = V2_closed(h, r, 1, 1).total - (double(h) / double(r)) * m1;
    CHECK(pair_main_term(h, r) == doctest::Approx(viaV2).epsilon(1e-10));
  }
  // r = 1 collapse: -h log h + (2 - gamma0 - log 2pi) h
  const double h = 400.0;
  CHECK(pair_main_term(400, 1) ==
        doctest::Approx(-h * std::log(h) + (2.0 - euler_gamma - log_two_pi) * h)
            .epsilon(1e-12));
}

TEST_CASE("correlation brute force: pair case reduces to difference classes") {
  const std::uint64_t L = 1'000'000;
  const i64 h = 60;
  auto rk = R_k_brute(h, spec(1, {1, 1}), L);
  double direct = 0.0;
  for (i64 d = 1; d < h; ++d)
    direct += 2.0 * double(h - d) * (two_term_exact(d, 1, L).value - 1.0);
  CHECK(rk.value == doctest::Approx(direct).epsilon(1e-10));

  // restricted classes: only pairs n1 = 1, n2 = 3 (mod 4) survive
  auto rk4 = R_k_brute(h, spec(4, {1, 3}), L);
  double direct4 = 0.0;
  for (i64 n1 = 1; n1 <= h; ++n1)
    for (i64 n2 = 3; n2 <= h; n2 += 4)
      if (n1 % 4 == 1 && n1 != n2)
        direct4 += two_term_exact(n1 - n2, 4, L).value - 1.0;
  CHECK(rk4.value == doctest::Approx(direct4).epsilon(1e-10));
}

TEST_CASE("correlation brute force: frozen values at the large prime budget") {
  const std::uint64_t L = 10'000'000;
  auto r2 = R_k_brute(60, spec(1, {1, 1}), L);
  CHECK(r2.value == doctest::Approx(-273.0271692637).epsilon(1e-8));
  auto r3 = R_k_brute(60, spec(1, {1, 1, 1}), L);
  CHECK(r3.value == doctest::Approx(2388.0353776690).epsilon(1e-8));
}

TEST_CASE("correlation brute force is thread-count invariant") {
  const std::uint64_t L = 100'000;
  auto one = R_k_brute(40, spec(1, {1, 1, 1}), L, 1);
  auto three = R_k_brute(40, spec(1, {1, 1, 1}), L, 3);
  CHECK(one.value == three.value);
  CHECK(one.tail_bound == three.tail_bound);
}

TEST_CASE("main-term evaluators: structured collapses to simple on equal classes") {
  for (auto [h, r] : {std::pair<i64, i64>{500, 1}, {1000, 4}}) {
    CHECK(R_k_main_structured(h, spec(r, {1, 1})) ==
          doctest::Approx(R_k_main_simple(h, spec(r, {1, 1}))).epsilon(1e-12));
    CHECK(R_k_main_structured(h, spec(r, {1, 1, 1, 1})) ==
          doctest::Approx(R_k_main_simple(h, spec(r, {1, 1, 1, 1}))).epsilon(1e-12));
  }
}

TEST_CASE("gallagher averages: frozen ratios at the default prime budget") {
  CHECK(gallagher_ratio(100, 2, 1'000'000) ==
        doctest::Approx(0.94966172573497).epsilon(1e-10));
  CHECK(gallagher_ratio(60, 3, 1'000'000) ==
        doctest::Approx(0.78025198559678).epsilon(1e-10));
}

TEST_CASE("capacity guards refuse oversized enumerations") {
  CHECK_THROWS_AS(R_k_brute(200, spec(1, {1, 1, 1, 1}), 100'000), CapacityError);
  CHECK_THROWS_AS(R_k_main_structured(100, spec(1, std::vector<i64>(9, 1))),
                  CapacityError);
  CHECK_THROWS_AS(V_k_direct(6, 50, spec(1, std::vector<i64>(8, 1))),
                  CapacityError);
  CHECK_THROWS_AS(gallagher_ratio(10'000, 6, 1'000'000), CapacityError);
}

TEST_CASE("divisor-restricted correlation validates its modulus") {
  CHECK_THROWS_AS(V_k_direct(12, 50, spec(1, {1, 1})), DomainError);  // 4 | 12
  CHECK_THROWS_AS(V_k_direct(6, 50, spec(3, {1, 1})), DomainError);   // gcd 3
  CHECK_THROWS_AS(V_k_direct(0, 50, spec(1, {1, 1})), DomainError);
  CHECK_THROWS_AS(CongruenceSpec(0, {1}), DomainError);
  CHECK_THROWS_AS(CongruenceSpec(3, {}), DomainError);
}
