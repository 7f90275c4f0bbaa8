#include "singser/combinat.hpp"

#include <algorithm>
#include <map>

namespace singser {

namespace {

bool match_rec(std::vector<int>& pool, Matching& acc,
               const std::function<bool(const Matching&)>& fn) {
  if (pool.empty()) return fn(acc);
  if (pool.size() % 2 != 0) return true;  // odd leftovers: nothing to yield
  int first = pool.front();
  for (std::size_t t = 1; t < pool.size(); ++t) {
    std::vector<int> rest;
    rest.reserve(pool.size() - 2);
    for (std::size_t s = 1; s < pool.size(); ++s)
      if (s != t) rest.push_back(pool[s]);
    acc.emplace_back(first, pool[t]);
    bool go = match_rec(rest, acc, fn);
    acc.pop_back();
    if (!go) return false;
  }
  return true;
}

}  // namespace

void for_each_perfect_matching(const std::vector<int>& indices,
                               const std::function<bool(const Matching&)>& fn) {
  std::vector<int> pool = indices;
  std::sort(pool.begin(), pool.end());
  if (pool.size() % 2 != 0) return;
  Matching acc;
  match_rec(pool, acc, fn);
}

void for_each_perfect_matching(int k,
                               const std::function<bool(const Matching&)>& fn) {
  std::vector<int> idx(std::max(k, 0));
  for (int i = 0; i < k; ++i) idx[i] = i + 1;
  for_each_perfect_matching(idx, fn);
}

std::int64_t double_factorial(std::int64_t n) {
  std::int64_t out = 1;
  for (std::int64_t v = n; v > 1; v -= 2) out *= v;
  return out;
}

std::int64_t count_equal_pairings(const std::vector<std::int64_t>& values) {
  std::map<std::int64_t, std::int64_t> mult;
  for (std::int64_t v : values) ++mult[v];
  std::int64_t out = 1;
  for (auto& [v, m] : mult) {
    (void)v;
    if (m % 2 != 0) return 0;
    out *= double_factorial(m - 1);
  }
  return out;
}

namespace {

// choose j disjoint equal-class pairs; remaining indices become singletons
bool refine_rec(const std::vector<std::int64_t>& values, int j, int start,
                std::vector<std::pair<int, int>>& pairs, std::vector<bool>& used,
                const std::function<bool(const RefiningPartition&)>& fn) {
  int k = int(values.size());
  if (j == 0) {
    RefiningPartition part;
    part.doubletons = pairs;
    for (int i = 1; i <= k; ++i)
      if (!used[i]) part.singletons.push_back(i);
    return fn(part);
  }
  // pair leaders strictly increase across depths, so each set of disjoint
  // pairs is produced exactly once; skipped indices end up singletons
  for (int i = start; i <= k; ++i) {
    if (used[i]) continue;
    for (int l = i + 1; l <= k; ++l) {
      if (used[l] || values[l - 1] != values[i - 1]) continue;
      used[i] = used[l] = true;
      pairs.emplace_back(i, l);
      bool go = refine_rec(values, j - 1, i + 1, pairs, used, fn);
      pairs.pop_back();
      used[i] = used[l] = false;
      if (!go) return false;
    }
  }
  return true;
}

}  // namespace

void for_each_refining_partition(
    const std::vector<std::int64_t>& values, int j,
    const std::function<bool(const RefiningPartition&)>& fn) {
  int k = int(values.size());
  if (j < 0 || 2 * j > k) return;
  std::vector<std::pair<int, int>> pairs;
  std::vector<bool> used(k + 1, false);
  refine_rec(values, j, 1, pairs, used, fn);
}

}  // namespace singser
