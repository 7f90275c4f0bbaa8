#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "singser/errors.hpp"

namespace singser {

// Dirichlet character mod m, stored as a full value table over residues
// 0..m-1 (zero on non-units).  Objects are immutable once built; copying is
// cheap enough for the small moduli used here.
class DirichletCharacter {
 public:
  DirichletCharacter(std::int64_t modulus, int index, bool principal,
                     std::vector<std::complex<double>> table)
      : modulus_(modulus),
        index_(index),
        principal_(principal),
        table_(std::move(table)) {}

  std::int64_t modulus() const { return modulus_; }

  // Position within characters_mod(modulus); index 0 is the principal
  // character.  Stable across runs.
  int index() const { return index_; }

  bool principal() const { return principal_; }

  // chi(-1) = +1.  Parity is exact: tables are built from exact rational
  // phases, so the value at -1 is exactly +-1.
  bool even() const { return table_[(modulus_ - 1) % modulus_].real() > 0.0; }

  std::complex<double> operator()(std::int64_t n) const {
    std::int64_t a = n % modulus_;
    if (a < 0) a += modulus_;
    return table_[a];
  }

  const std::vector<std::complex<double>>& table() const { return table_; }

 private:
  std::int64_t modulus_;
  int index_;
  bool principal_;
  std::vector<std::complex<double>> table_;
};

// All phi(m) characters mod m in a fixed deterministic order (principal
// first).  m up to ~1e5; beyond that the value-table representation is the
// wrong tool.
std::vector<DirichletCharacter> characters_mod(std::int64_t m);

}  // namespace singser
