#pragma once

// Bit-exact linear algebra over GF(2): packed bit vectors, dense matrices,
// row reduction and canonical (RREF) subspaces.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phasealg/error.hpp"

namespace phasealg {

/// Fixed-length vector over GF(2), packed 64 bits per word.
///
/// Ordering is lexicographic starting at bit 0: at the first differing
/// position the vector holding 0 compares less. Vectors of different length
/// order by length first.
class BitVec {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_bits = 64;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BitVec() = default;
  explicit BitVec(std::size_t n) : size_(n), words_((n + word_bits - 1) / word_bits, 0) {}

  static BitVec unit(std::size_t n, std::size_t i) {
    BitVec v(n);
    v.set(i);
    return v;
  }
  static BitVec ones(std::size_t n);
  static BitVec from_bits(std::span<const int> bits);
  /// Low `n` bits of `value`, bit i of the integer becoming coordinate i.
  static BitVec from_integer(std::size_t n, std::uint64_t value);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool test(std::size_t i) const noexcept {
    return (words_[i / word_bits] >> (i % word_bits)) & 1U;
  }
  bool operator[](std::size_t i) const noexcept { return test(i); }
  void set(std::size_t i, bool value = true) noexcept {
    const word_type mask = word_type{1} << (i % word_bits);
    if (value) {
      words_[i / word_bits] |= mask;
    } else {
      words_[i / word_bits] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i / word_bits] ^= word_type{1} << (i % word_bits); }
  void clear() noexcept { std::fill(words_.begin(), words_.end(), word_type{0}); }

  BitVec& operator^=(const BitVec& other);
  BitVec& operator&=(const BitVec& other);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }

  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  std::size_t count() const noexcept;
  /// Index of the lowest set bit, or npos.
  std::size_t first() const noexcept { return next(0); }
  /// Index of the lowest set bit at position >= i, or npos.
  std::size_t next(std::size_t i) const noexcept;
  /// Parity of the bitwise AND, i.e. the GF(2) inner product.
  bool dot(const BitVec& other) const;

  /// Calls f(i) for every set bit in increasing order.
  template <class F>
  void for_each_set(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      word_type word = words_[w];
      while (word != 0) {
        const auto bit = static_cast<std::size_t>(std::countr_zero(word));
        f(w * word_bits + bit);
        word &= word - 1;
      }
    }
  }

  BitVec slice(std::size_t offset, std::size_t length) const;
  /// Copy of this vector widened (zero padded) or truncated to `n` bits.
  BitVec resized(std::size_t n) const;
  static BitVec concat(const BitVec& a, const BitVec& b);

  std::vector<int> bits() const;
  std::string to_string() const;
  std::span<const word_type> words() const noexcept { return words_; }

  friend bool operator==(const BitVec&, const BitVec&) = default;
  friend std::strong_ordering operator<=>(const BitVec& a, const BitVec& b);

 private:
  std::size_t size_ = 0;
  std::vector<word_type> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const noexcept;
};

/// Dense row-major matrix over GF(2). Vectors are treated as columns, so
/// `apply(v)` computes M·v.
class GF2Matrix {
 public:
  GF2Matrix() = default;
  GF2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows, BitVec(cols)) {}

  static GF2Matrix identity(std::size_t n);
  static GF2Matrix from_rows(std::size_t cols, std::vector<BitVec> rows);
  static GF2Matrix from_columns(std::size_t rows, const std::vector<BitVec>& columns);
  /// Inverse of flatten(): row-major bit layout.
  static GF2Matrix from_flat(std::size_t rows, std::size_t cols, const BitVec& flat);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool operator()(std::size_t r, std::size_t c) const noexcept { return data_[r].test(c); }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept { data_[r].set(c, value); }
  const BitVec& row(std::size_t r) const noexcept { return data_[r]; }
  BitVec& row(std::size_t r) noexcept { return data_[r]; }
  const std::vector<BitVec>& row_data() const noexcept { return data_; }
  BitVec column(std::size_t c) const;

  BitVec apply(const BitVec& v) const;
  GF2Matrix transpose() const;
  BitVec flatten() const;

  bool is_zero() const noexcept;
  bool is_identity() const noexcept;

  GF2Matrix& operator+=(const GF2Matrix& other);
  friend GF2Matrix operator+(GF2Matrix a, const GF2Matrix& b) { return a += b; }
  friend GF2Matrix operator*(const GF2Matrix& a, const GF2Matrix& b);

  friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BitVec> data_;
};

struct RrefResult {
  GF2Matrix matrix;  // same shape as the input, zero rows last
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const GF2Matrix& m);
std::size_t rank(const GF2Matrix& m);
/// Basis (canonical RREF rows) of { x : m·x = 0 }.
std::vector<BitVec> null_space(const GF2Matrix& m);
std::optional<GF2Matrix> inverse(const GF2Matrix& m);
/// m^e by repeated squaring.
GF2Matrix power(const GF2Matrix& m, std::size_t e);

/// Subspace of GF(2)^n stored as canonical RREF rows, so subspace equality
/// is bit-equality of the stored basis.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace full(std::size_t n);
  static Subspace span(std::size_t ambient, std::span<const BitVec> vectors);
  static Subspace span(std::size_t ambient, std::initializer_list<BitVec> vectors) {
    return span(ambient, std::span<const BitVec>(vectors.begin(), vectors.size()));
  }

  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  bool is_zero() const noexcept { return basis_.empty(); }
  bool is_full() const noexcept { return basis_.size() == ambient_; }
  const std::vector<BitVec>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  std::vector<std::size_t> non_pivots() const;

  /// Residue of v after eliminating every pivot column.
  BitVec reduce(BitVec v) const;
  bool contains(const BitVec& v) const;
  bool contains(const Subspace& other) const;
  /// Adds v to the span; returns false if it was already contained.
  bool insert(const BitVec& v);

  /// Coordinates of v (assumed in the span) with respect to basis().
  BitVec coordinates(const BitVec& v) const;
  BitVec combine(const BitVec& coords) const;

  friend Subspace operator+(const Subspace& a, const Subspace& b);
  friend bool operator==(const Subspace&, const Subspace&) = default;
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

 private:
  void check_ambient(std::size_t n) const;

  std::size_t ambient_ = 0;
  std::vector<BitVec> basis_;
  std::vector<std::size_t> pivots_;
};

Subspace intersect(const Subspace& a, const Subspace& b);
/// Image of a subspace under a linear map given as a matrix.
Subspace image(const GF2Matrix& m, const Subspace& s);
bool subspace_contains(const Subspace& s, const BitVec& v);

using BilinearProduct = std::function<BitVec(const BitVec&, const BitVec&)>;

/// Canonical span of { x·y : x in basis(s), y in basis(t) }.
Subspace subspace_mul(const Subspace& s, const Subspace& t, const BilinearProduct& mul);

}  // namespace phasealg
