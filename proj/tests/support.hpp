#pragma once

// Shared helpers for the test suites: seeded generators and small
// independent oracles that work on plain integers rather than the library's
// bit containers.

#include <cstdint>
#include <random>
#include <vector>

#include "phasealg/gf2.hpp"
#include "phasealg/phase.hpp"

namespace testing {

using phasealg::BitVec;
using phasealg::GF2Matrix;
using phasealg::Subspace;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline BitVec random_bits(std::mt19937_64& g, std::size_t n) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, (g() & 1U) != 0);
  return v;
}

inline GF2Matrix random_matrix(std::mt19937_64& g, std::size_t rows, std::size_t cols) {
  GF2Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) m.row(r) = random_bits(g, cols);
  return m;
}

inline std::uint64_t to_u64(const BitVec& v) {
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v.test(i)) x |= std::uint64_t{1} << i;
  }
  return x;
}

/// Xor basis keyed by highest set bit.
struct XorBasis {
  std::vector<std::uint64_t> slots = std::vector<std::uint64_t>(64, 0);
  std::size_t size = 0;

  std::uint64_t reduce(std::uint64_t v) const {
    for (int b = 63; b >= 0; --b) {
      if (((v >> b) & 1U) != 0 && slots[static_cast<std::size_t>(b)] != 0) v ^= slots[static_cast<std::size_t>(b)];
    }
    return v;
  }
  bool insert(std::uint64_t v) {
    v = reduce(v);
    if (v == 0) return false;
    int b = 63;
    while (((v >> b) & 1U) == 0) --b;
    slots[static_cast<std::size_t>(b)] = v;
    ++size;
    return true;
  }
  bool contains(std::uint64_t v) const { return reduce(v) == 0; }
};

inline std::size_t oracle_rank(const std::vector<std::uint64_t>& rows) {
  XorBasis b;
  for (auto r : rows) b.insert(r);
  return b.size;
}

inline std::size_t oracle_rank(const std::vector<BitVec>& rows) {
  XorBasis b;
  for (const auto& r : rows) b.insert(to_u64(r));
  return b.size;
}

inline XorBasis oracle_basis(const Subspace& s) {
  XorBasis b;
  for (const auto& v : s.basis()) b.insert(to_u64(v));
  return b;
}

/// Every vector of a subspace, for dim ≤ 16.
inline std::vector<std::uint64_t> elements(const Subspace& s) {
  std::vector<std::uint64_t> out{0};
  for (const auto& v : s.basis()) {
    const std::uint64_t x = to_u64(v);
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] ^ x);
  }
  return out;
}

/// Product of two elements computed straight from the structure table.
inline std::uint64_t table_product(const phasealg::Phase& p, std::uint64_t x, std::uint64_t y) {
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < p.dim; ++i) {
    if (((x >> i) & 1U) == 0) continue;
    for (std::size_t j = 0; j < p.dim; ++j) {
      if (((y >> j) & 1U) != 0) out ^= to_u64(p.product(i, j));
    }
  }
  return out;
}

}  // namespace testing
