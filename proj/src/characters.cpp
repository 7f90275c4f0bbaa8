#include "singser/characters.hpp"

#include <numeric>

#include "singser/arith.hpp"

namespace singser {
namespace {

std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::int64_t primitive_root_mod_p(std::int64_t p) {
  if (p == 2) return 1;
  const auto fac = factorize(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [q, e] : fac.factors)
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw DomainError("no primitive root found");
}

// One cyclic factor of the unit group mod a prime power: a generator order
// and, for every unit residue, its exponent with respect to that generator.
struct CyclicFactor {
  std::int64_t order;
  // exponent_of[a mod pe] for unit a, -1 on non-units
  std::vector<std::int64_t> exponent_of;
};

// Unit group structure mod pe (pe = p^e).  Odd p and pe = 2, 4 give one
// cyclic factor; pe = 2^e with e >= 3 gives two (orders 2 and 2^(e-2)).
std::vector<CyclicFactor> unit_group_mod(std::int64_t p, int e,
                                         std::int64_t pe) {
  std::vector<CyclicFactor> out;
  if (p == 2) {
    if (e == 1) return out;  // trivial group
    if (e == 2) {
      CyclicFactor f{2, std::vector<std::int64_t>(pe, -1)};
      f.exponent_of[1] = 0;
      f.exponent_of[3] = 1;
      out.push_back(std::move(f));
      return out;
    }
    CyclicFactor sign{2, std::vector<std::int64_t>(pe, -1)};
    CyclicFactor five{pe / 4, std::vector<std::int64_t>(pe, -1)};
    std::int64_t v = 1;
    for (std::int64_t j = 0; j < pe / 4; ++j) {
      sign.exponent_of[v] = 0;
      five.exponent_of[v] = j;
      const std::int64_t neg = pe - v;
      sign.exponent_of[neg] = 1;
      five.exponent_of[neg] = j;
      v = v * 5 % pe;
    }
    out.push_back(std::move(sign));
    out.push_back(std::move(five));
    return out;
  }
  // odd prime power: cyclic of order phi(pe)
  std::int64_t g = primitive_root_mod_p(p);
  if (e > 1 && pow_mod(g, p - 1, p * p) == 1) g += p;
  const std::int64_t order = pe / p * (p - 1);
  CyclicFactor f{order, std::vector<std::int64_t>(pe, -1)};
  std::int64_t v = 1;
  for (std::int64_t j = 0; j < order; ++j) {
    f.exponent_of[v] = j;
    v = v * g % pe;
  }
  out.push_back(std::move(f));
  return out;
}

}  // namespace

std::vector<DirichletCharacter> characters_mod(std::int64_t m) {
  if (m <= 0) throw DomainError("characters_mod requires m >= 1");
  if (m > 100000) throw CapacityError("character table modulus too large");

  // Collect cyclic factors across the prime-power components of m, each
  // paired with its component modulus for CRT reduction.
  struct Factor {
    std::int64_t pe;
    CyclicFactor cyc;
  };
  std::vector<Factor> factors;
  for (const auto& [p, e] : factorize(m).factors) {
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    for (auto& cyc : unit_group_mod(p, e, pe))
      factors.push_back({pe, std::move(cyc)});
  }

  const std::size_t s = factors.size();
  std::int64_t lcm_order = 1;
  for (const auto& f : factors)
    lcm_order = std::lcm(lcm_order, f.cyc.order);

  // Exponent vector of every unit residue, precomputed once.
  std::vector<std::vector<std::int64_t>> unit_exps(m);
  for (std::int64_t a = 0; a < m; ++a) {
    if (std::gcd(a, m) != 1) continue;
    std::vector<std::int64_t> exps(s);
    bool ok = true;
    for (std::size_t i = 0; i < s; ++i) {
      const std::int64_t j = factors[i].cyc.exponent_of[a % factors[i].pe];
      if (j < 0) {
        ok = false;
        break;
      }
      exps[i] = j;
    }
    if (ok) unit_exps[a] = std::move(exps);
  }

  // Mixed-radix counter over character exponent tuples; all-zero tuple
  // (principal) comes first.
  std::vector<DirichletCharacter> chars;
  std::vector<std::int64_t> t(s, 0);
  int index = 0;
  for (;;) {
    std::vector<std::complex<double>> table(m, {0.0, 0.0});
    for (std::int64_t a = 0; a < m; ++a) {
      if (m == 1) {
        table[a] = {1.0, 0.0};
        continue;
      }
      if (std::gcd(a, m) != 1) continue;
      std::int64_t num = 0;
      for (std::size_t i = 0; i < s; ++i) {
        const std::int64_t ni = factors[i].cyc.order;
        const std::int64_t step = lcm_order / ni;
        num = (num + t[i] * unit_exps[a][i] % ni * step) % lcm_order;
      }
      table[a] = unit_root(num, lcm_order);
    }
    bool principal = true;
    for (std::size_t i = 0; i < s; ++i) principal = principal && t[i] == 0;
    chars.emplace_back(m, index++, principal, std::move(table));

    std::size_t pos = 0;
    while (pos < s) {
      if (++t[pos] < factors[pos].cyc.order) break;
      t[pos] = 0;
      ++pos;
    }
    if (pos == s) break;
  }
  return chars;
}

}  // namespace singser
