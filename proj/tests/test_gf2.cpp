#include <doctest.h>

#include <set>

#include "phasealg/heisenberg.hpp"
#include "phasealg/nilring.hpp"
#include "support.hpp"

using namespace phasealg;
using testing::oracle_rank;
using testing::to_u64;

TEST_CASE("rref examples") {
  const GF2Matrix id = GF2Matrix::identity(5);
  const RrefResult a = rref(id);
  CHECK(a.matrix == id);
  CHECK(a.rank == 5);

  const GF2Matrix zero(3, 4);
  const RrefResult b = rref(zero);
  CHECK(b.matrix == zero);
  CHECK(b.rank == 0);

  GF2Matrix m(2, 2);
  m.set(0, 0);
  m.set(0, 1);
  m.set(1, 0);
  m.set(1, 1);
  const RrefResult c = rref(m);
  GF2Matrix expected(2, 2);
  expected.set(0, 0);
  expected.set(0, 1);
  CHECK(c.matrix == expected);
  CHECK(c.rank == 1);
}

TEST_CASE("rref is canonical and agrees with an independent rank") {
  auto g = testing::rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + g() % 12;
    const std::size_t cols = 1 + g() % 40;
    const GF2Matrix m = testing::random_matrix(g, rows, cols);
    const RrefResult r = rref(m);
    CHECK(rref(r.matrix).matrix == r.matrix);
    CHECK(r.rank == oracle_rank(m.row_data()));
    CHECK(rank(m) == r.rank);
    for (std::size_t i = 0; i + 1 < r.pivots.size(); ++i) CHECK(r.pivots[i] < r.pivots[i + 1]);
    for (std::size_t i = 0; i < r.rank; ++i) {
      for (std::size_t k = 0; k < r.rank; ++k) CHECK(r.matrix(k, r.pivots[i]) == (k == i));
    }
    for (std::size_t i = r.rank; i < rows; ++i) CHECK(r.matrix.row(i).none());
  }
}

TEST_CASE("null space matches brute-force kernel count") {
  auto g = testing::rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + g() % 8;
    const std::size_t cols = 1 + g() % 10;
    const GF2Matrix m = testing::random_matrix(g, rows, cols);
    const auto ns = null_space(m);
    std::size_t kernel = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << cols); ++x) {
      if (m.apply(BitVec::from_integer(cols, x)).none()) ++kernel;
    }
    CHECK(kernel == (std::size_t{1} << ns.size()));
    for (const auto& v : ns) CHECK(m.apply(v).none());
    CHECK(oracle_rank(ns) == ns.size());
  }
}

TEST_CASE("inverse exists exactly for full rank") {
  auto g = testing::rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + g() % 9;
    const GF2Matrix m = testing::random_matrix(g, n, n);
    const auto inv = inverse(m);
    CHECK(inv.has_value() == (oracle_rank(m.row_data()) == n));
    if (inv) {
      CHECK((m * *inv).is_identity());
      CHECK((*inv * m).is_identity());
    }
  }
}

TEST_CASE("matrix product is associative and transpose reverses it") {
  auto g = testing::rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const GF2Matrix a = testing::random_matrix(g, 5, 7);
    const GF2Matrix b = testing::random_matrix(g, 7, 3);
    const GF2Matrix c = testing::random_matrix(g, 3, 6);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    const BitVec v = testing::random_bits(g, 3);
    CHECK((a * b).apply(v) == a.apply(b.apply(v)));
  }
}

TEST_CASE("flatten round trip") {
  auto g = testing::rng(15);
  const GF2Matrix m = testing::random_matrix(g, 4, 6);
  CHECK(GF2Matrix::from_flat(4, 6, m.flatten()) == m);
}

TEST_CASE("subspace_contains examples") {
  const BitVec v = BitVec::from_integer(3, 0b011);
  CHECK(Subspace::full(3).contains(v));
  CHECK_FALSE(Subspace(3).contains(v));
  CHECK(Subspace::span(3, {v}).contains(v));
  CHECK(subspace_contains(Subspace::span(3, {v}), v));
  CHECK_THROWS_AS(Subspace(3).contains(BitVec(4)), DimensionError);
}

TEST_CASE("subspace basis is canonical RREF") {
  auto g = testing::rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + g() % 20;
    std::vector<BitVec> vs;
    for (std::size_t i = 0, k = g() % 8; i < k; ++i) vs.push_back(testing::random_bits(g, n));
    const Subspace s = Subspace::span(n, vs);
    CHECK(s.dim() == oracle_rank(vs));
    // Another generating set of the same space gives bit-identical bases.
    std::vector<BitVec> mixed = s.basis();
    for (std::size_t i = 1; i < mixed.size(); ++i) mixed[i] ^= mixed[i - 1];
    std::reverse(mixed.begin(), mixed.end());
    CHECK(Subspace::span(n, mixed) == s);
    for (std::size_t i = 0; i < s.dim(); ++i) {
      CHECK(s.basis()[i].any());
      for (std::size_t k = 0; k < s.dim(); ++k) CHECK(s.basis()[k].test(s.pivots()[i]) == (i == k));
    }
    for (const auto& v : vs) CHECK(s.contains(v));
  }
}

TEST_CASE("sum and intersection satisfy the dimension formula") {
  auto g = testing::rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + g() % 9;
    std::vector<BitVec> a;
    std::vector<BitVec> b;
    for (std::size_t i = 0, k = g() % 6; i < k; ++i) a.push_back(testing::random_bits(g, n));
    for (std::size_t i = 0, k = g() % 6; i < k; ++i) b.push_back(testing::random_bits(g, n));
    const Subspace s = Subspace::span(n, a);
    const Subspace t = Subspace::span(n, b);
    const Subspace sum = s + t;
    const Subspace meet = intersect(s, t);
    CHECK(s.dim() + t.dim() == sum.dim() + meet.dim());
    // Brute-force intersection over all elements of s.
    const testing::XorBasis tb = testing::oracle_basis(t);
    std::size_t common = 0;
    for (auto x : testing::elements(s)) {
      if (tb.contains(x)) ++common;
    }
    CHECK(common == (std::size_t{1} << meet.dim()));
    CHECK(s.contains(meet));
    CHECK(t.contains(meet));
  }
}

TEST_CASE("coordinates and combine invert each other") {
  auto g = testing::rng(18);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + g() % 12;
    std::vector<BitVec> vs;
    for (int i = 0; i < 4; ++i) vs.push_back(testing::random_bits(g, n));
    const Subspace s = Subspace::span(n, vs);
    const BitVec c = testing::random_bits(g, s.dim());
    CHECK(s.coordinates(s.combine(c)) == c);
  }
}

TEST_CASE("subspace_mul examples") {
  const Phase dual = square_zero_extend(unit_phase(), 1);
  const BilinearProduct mul = dual.product_fn();
  const Subspace line = Subspace::span(2, {dual.unit});
  const Subspace eps = dual.layer(1);
  CHECK(subspace_mul(eps, Subspace(2), mul).is_zero());
  CHECK(subspace_mul(line, eps, mul) == eps);
  CHECK(subspace_mul(line, Subspace::full(2), mul) == Subspace::full(2));
  CHECK(subspace_mul(eps, eps, mul).is_zero());
  CHECK_THROWS_AS(subspace_mul(eps, Subspace(3), mul), DimensionError);
}

TEST_CASE("boundary ideal of the flagship squares to dimension 8") {
  const Phase p = heisenberg_phase({1, 2, Cocycle::Alternating});
  const Subspace ideal = p.layer(1);
  const Subspace square = subspace_mul(ideal, ideal, p.product_fn());
  CHECK(square.dim() == 8);
  // Oracle: products of basis pairs from the structure table, ranked independently.
  std::vector<std::uint64_t> prods;
  for (const auto& x : ideal.basis()) {
    for (const auto& y : ideal.basis()) prods.push_back(testing::table_product(p, to_u64(x), to_u64(y)));
  }
  CHECK(oracle_rank(prods) == 8);
}

TEST_CASE("nil ring arithmetic") {
  const auto u = NilRingElem::u(2);
  const auto one = NilRingElem::one(2);
  CHECK(nr_mul(u, u).is_zero());
  const NilRingElem x(2, 0b11);
  CHECK(nr_mul(one, x) == x);
  CHECK(nr_mul(x, x) == one);
  CHECK_THROWS_AS(nr_mul(NilRingElem::u(2), NilRingElem::u(3)), DimensionError);

  for (unsigned k = 1; k <= 5; ++k) {
    // Oracle: schoolbook polynomial product, truncated at degree k.
    for (std::uint64_t a = 0; a < (1U << k); ++a) {
      for (std::uint64_t b = 0; b < (1U << k); ++b) {
        std::uint64_t expect = 0;
        for (unsigned i = 0; i < k; ++i) {
          for (unsigned j = 0; i + j < k; ++j) {
            if (((a >> i) & 1U) && ((b >> j) & 1U)) expect ^= std::uint64_t{1} << (i + j);
          }
        }
        CHECK(nr_mul({k, a}, {k, b}).coeffs() == expect);
        CHECK(nr_mul({k, a}, {k, b}) == nr_mul({k, b}, {k, a}));
      }
    }
    NilRingElem pw = NilRingElem::one(k);
    for (unsigned i = 0; i < k; ++i) pw = pw * NilRingElem::u(k);
    CHECK(pw.is_zero());
  }
}

TEST_CASE("nil ring multiplication is associative") {
  for (unsigned k = 1; k <= 4; ++k) {
    for (std::uint64_t a = 0; a < (1U << k); ++a) {
      for (std::uint64_t b = 0; b < (1U << k); ++b) {
        for (std::uint64_t c = 0; c < (1U << k); ++c) {
          const NilRingElem x(k, a);
          const NilRingElem y(k, b);
          const NilRingElem z(k, c);
          CHECK((x * y) * z == x * (y * z));
          CHECK(x * (y + z) == x * y + x * z);
        }
      }
    }
  }
}

TEST_CASE("frobenius lambda") {
  CHECK(frobenius_lambda(NilRingElem::u(2)));
  CHECK_FALSE(frobenius_lambda(NilRingElem::zero(2)));
  CHECK(frobenius_lambda(NilRingElem(2, 0b11)));
  CHECK_FALSE(frobenius_lambda(NilRingElem::one(2)));
  CHECK(frobenius_lambda(NilRingElem::one(1)));

  for (unsigned k = 1; k <= 4; ++k) {
    const std::uint64_t n = 1U << k;
    for (std::uint64_t a = 0; a < n; ++a) {
      for (std::uint64_t b = 0; b < n; ++b) {
        CHECK(frobenius_lambda(NilRingElem(k, a ^ b)) ==
              (frobenius_lambda(NilRingElem(k, a)) != frobenius_lambda(NilRingElem(k, b))));
      }
    }
    // The pairing (a, b) -> λ(ab) is nondegenerate.
    for (std::uint64_t a = 1; a < n; ++a) {
      bool witnessed = false;
      for (std::uint64_t b = 0; b < n && !witnessed; ++b) witnessed = frobenius_lambda(NilRingElem(k, a) * NilRingElem(k, b));
      CHECK(witnessed);
    }
  }
}
