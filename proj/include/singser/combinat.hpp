#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace singser {

// Unordered pair partition of a set of indices.  Pairs are (i, j) with
// i < j; generation pairs the smallest unmatched index with every
// candidate, so the stream is canonical and duplicate-free.
using Matching = std::vector<std::pair<int, int>>;

// Perfect matchings of the given index set (any labels, assumed distinct).
// Even size: (n-1)!! matchings; odd size: none; empty set: one empty
// matching.  Return false from the callback to stop early.
void for_each_perfect_matching(const std::vector<int>& indices,
                               const std::function<bool(const Matching&)>& fn);

// Convenience overload over {1..k}.
void for_each_perfect_matching(int k,
                               const std::function<bool(const Matching&)>& fn);

std::int64_t double_factorial(std::int64_t n);  // n!! with 0!! = (-1)!! = 1

// Number of perfect matchings of {1..k} pairing only equal values:
// prod over distinct values of (multiplicity - 1)!!, or 0 when some
// multiplicity is odd.
std::int64_t count_equal_pairings(const std::vector<std::int64_t>& values);

// Partition of {1..k} into doubletons and singletons, where every
// doubleton joins two indices with equal class values.
struct RefiningPartition {
  std::vector<std::pair<int, int>> doubletons;  // (i, j), i < j
  std::vector<int> singletons;                  // ascending
};

// All partitions of {1..k} into exactly j doubletons (each inside one
// class of equal values) plus k-2j singletons.  Classes are given as the
// value vector (values[i-1] is the class of index i).
void for_each_refining_partition(
    const std::vector<std::int64_t>& values, int j,
    const std::function<bool(const RefiningPartition&)>& fn);

}  // namespace singser
