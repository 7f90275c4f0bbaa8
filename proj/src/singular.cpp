#include "singser/singular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "singser/primes.hpp"
#include "singser/summation.hpp"

namespace singser {

namespace {

bool is_prime_small(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// log of (1 - k/p) / (1 - 1/p)^k, valid only for p > k
double generic_log_factor(int k, double p) {
  return std::log1p(-k / p) - k * std::log1p(-1.0 / p);
}

std::int64_t distinct_residues(const std::vector<std::int64_t>& elems,
                               std::int64_t p) {
  // insertion into a small sorted buffer; tuple sizes stay tiny
  std::int64_t res[64];
  int n = 0;
  for (std::int64_t e : elems) {
    std::int64_t x = e % p;
    if (x < 0) x += p;
    int pos = 0;
    while (pos < n && res[pos] < x) ++pos;
    if (pos < n && res[pos] == x) continue;
    for (int j = n; j > pos; --j) res[j] = res[j - 1];
    res[pos] = x;
    ++n;
  }
  return n;
}

}  // namespace

TupleSet::TupleSet(std::vector<std::int64_t> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  if (elems_.size() > 64) throw CapacityError("tuple size exceeds 64");
}

std::int64_t TupleSet::diameter() const {
  if (elems_.size() <= 1) return 0;
  return elems_.back() - elems_.front();
}

std::int64_t nu(const TupleSet& H, std::int64_t p) {
  if (H.empty()) throw DomainError("nu of empty tuple");
  if (p < 2) throw DomainError("nu requires p >= 2");
  return distinct_residues(H.elements(), p);
}

SingularSeriesEvaluator::SingularSeriesEvaluator(int k, std::int64_t r,
                                                 std::uint64_t prime_limit,
                                                 std::int64_t max_diameter)
    : k_(k), r_(r), prime_limit_(prime_limit), max_diameter_(max_diameter) {
  if (k < 0 || r < 1) throw DomainError("evaluator: bad tuple size or modulus");
  if (k >= 2 && prime_limit <= std::uint64_t(k) + 1)
    throw DomainError("evaluator: prime limit too small for tail bound");
  if (k >= 2 && max_diameter < k - 1)
    throw DomainError("evaluator: max diameter below minimum tuple diameter");
  if (max_diameter < 0 || std::uint64_t(max_diameter) > prime_limit)
    throw DomainError("evaluator: max diameter outside prime budget");
  if (k <= 1) return;  // every factor is exactly 1

  // p <= k never contributes generically: p < k forces a residue collision
  // (so it is always corrected exactly), and p == k is either a vanishing
  // factor or an exact correction, decided per tuple.
  CompensatedSum acc;
  std::int64_t md = max_diameter;
  bool* tz = &tail_zero_;
  for_each_prime(prime_limit, [&acc, k, r, md, tz](std::uint64_t up) {
    std::int64_t p = std::int64_t(up);
    if (p <= k || r % p == 0) {
      if (p == k && r % p != 0 && p > md) *tz = true;
      return;
    }
    acc.add(generic_log_factor(k, double(p)));
  });
  total_log_ = acc.value();
  tail_bound_factor_ =
      std::expm1(double(k) * double(k + 1) / (double(prime_limit) - k - 1));
}

SingularValue SingularSeriesEvaluator::eval(const TupleSet& H) const {
  if (int(H.size()) != k_) throw DomainError("evaluator: tuple size mismatch");
  std::int64_t diam = H.diameter();
  if (diam > max_diameter_) throw DomainError("evaluator: diameter too large");
  if (k_ <= 1) return {1.0, 0.0, prime_limit_};

  // a consecutive run of k residues covers everything mod k
  if (diam < k_ && is_prime_small(k_) && r_ % k_ != 0 &&
      std::uint64_t(k_) <= prime_limit_)
    return {0.0, 0.0, prime_limit_};
  if (tail_zero_) return {0.0, 0.0, prime_limit_};

  // primes needing an exact factor: divisors of pairwise differences (the
  // only places a residue collision can happen), plus k itself
  std::vector<std::int64_t> check;
  const auto& e = H.elements();
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      std::int64_t d = e[j] - e[i];
      for (std::int64_t q = 2; q * q <= d; ++q) {
        if (d % q) continue;
        check.push_back(q);
        while (d % q == 0) d /= q;
      }
      if (d > 1) check.push_back(d);
    }
  if (diam >= k_ && is_prime_small(k_)) check.push_back(k_);
  std::sort(check.begin(), check.end());
  check.erase(std::unique(check.begin(), check.end()), check.end());

  double correction = 1.0;
  CompensatedSum removed;
  for (std::int64_t p : check) {
    if (r_ % p == 0 || std::uint64_t(p) > prime_limit_) continue;
    double nu_p = double(distinct_residues(e, p));
    double exact = (1.0 - nu_p / double(p)) /
                   std::pow(1.0 - 1.0 / double(p), double(k_));
    if (exact == 0.0) return {0.0, 0.0, prime_limit_};
    correction *= exact;
    if (p > k_) removed.add(generic_log_factor(k_, double(p)));
  }

  double value = correction * std::exp(total_log_ - removed.value());
  return {value, std::abs(value) * tail_bound_factor_, prime_limit_};
}

SingularValue singular_series(const TupleSet& H, std::int64_t r,
                              std::uint64_t prime_limit) {
  if (r < 1) throw DomainError("singular_series: modulus must be positive");
  if (H.size() <= 1) return {1.0, 0.0, prime_limit};
  if (std::uint64_t(H.diameter()) > prime_limit)
    throw DomainError("singular_series: prime limit below tuple diameter");
  SingularSeriesEvaluator ev(
      int(H.size()), r, prime_limit,
      std::max<std::int64_t>(H.diameter(), std::int64_t(H.size())));
  return ev.eval(H);
}

SingularValue singular_series_zero(const TupleSet& H, std::int64_t r,
                                   std::uint64_t prime_limit) {
  std::size_t k = H.size();
  if (k > 20) throw CapacityError("singular_series_zero: tuple size over 20");
  const auto& e = H.elements();
  std::int64_t md = std::max<std::int64_t>(H.diameter(), std::int64_t(k));

  // one evaluator per subset size, built on demand
  std::vector<std::unique_ptr<SingularSeriesEvaluator>> by_size(k + 1);
  CompensatedSum total;
  double tail = 0.0;
  std::vector<std::int64_t> sub;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    sub.clear();
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) sub.push_back(e[i]);
    double sign = ((k - sub.size()) % 2 == 0) ? 1.0 : -1.0;
    if (sub.size() <= 1) {
      total.add(sign);
      continue;
    }
    auto& ev = by_size[sub.size()];
    if (!ev)
      ev = std::make_unique<SingularSeriesEvaluator>(int(sub.size()), r,
                                                     prime_limit, md);
    SingularValue sv = ev->eval(TupleSet(sub));
    total.add(sign * sv.value);
    tail += sv.tail_bound;
  }
  return {total.value(), tail, prime_limit};
}

namespace {

// base product over odd primes p <= prime_limit away from r:
//   prod p(p-2)/(p-1)^2
double two_term_base(std::int64_t r, std::uint64_t prime_limit) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, std::uint64_t>, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(r, prime_limit);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  CompensatedSum acc;
  for_each_prime(prime_limit, [&acc, r](std::uint64_t up) {
    std::int64_t p = std::int64_t(up);
    if (p == 2 || r % p == 0) return;
    double dp = double(p);
    acc.add(std::log(dp * (dp - 2.0)) - 2.0 * std::log(dp - 1.0));
  });
  double base = std::exp(acc.value());
  cache[key] = base;
  return base;
}

}  // namespace

SingularValue two_term_exact(std::int64_t m, std::int64_t r,
                             std::uint64_t prime_limit) {
  if (m == 0) throw DomainError("two_term_exact: m must be nonzero");
  if (r < 1) throw DomainError("two_term_exact: modulus must be positive");
  if (prime_limit < 8)
    throw DomainError("two_term_exact: prime limit too small");
  m = std::abs(m);

  double value = two_term_base(r, prime_limit);
  if (r % 2 != 0) {
    if (m % 2 != 0) return {0.0, 0.0, prime_limit};
    value *= 2.0;
  }
  std::int64_t rest = m;
  while (rest % 2 == 0) rest /= 2;
  for (std::int64_t q = 3; q * q <= rest; q += 2) {
    if (rest % q) continue;
    while (rest % q == 0) rest /= q;
    if (r % q != 0 && std::uint64_t(q) <= prime_limit)
      value *= (double(q) - 1.0) / (double(q) - 2.0);
  }
  if (rest > 1 && r % rest != 0 && std::uint64_t(rest) <= prime_limit)
    value *= (double(rest) - 1.0) / (double(rest) - 2.0);

  double tail = std::abs(value) * std::expm1(6.0 / (double(prime_limit) - 3.0));
  return {value, tail, prime_limit};
}

}  // namespace singser
