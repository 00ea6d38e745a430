#include "phasealg/gf2.hpp"

#include <algorithm>
#include <utility>

namespace phasealg {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": size mismatch " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}

}  // namespace

BitVec BitVec::ones(std::size_t n) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i);
  return v;
}

BitVec BitVec::from_bits(std::span<const int> bits) {
  BitVec v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw InvalidInput("bit vector entries must be 0 or 1");
    v.set(i, bits[i] == 1);
  }
  return v;
}

BitVec BitVec::from_integer(std::size_t n, std::uint64_t value) {
  BitVec v(n);
  for (std::size_t i = 0; i < n && i < word_bits; ++i) v.set(i, (value >> i) & 1U);
  return v;
}

BitVec& BitVec::operator^=(const BitVec& other) {
  require_same_size(size_, other.size_, "BitVec xor");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

BitVec& BitVec::operator&=(const BitVec& other) {
  require_same_size(size_, other.size_, "BitVec and");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

bool BitVec::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](word_type w) { return w != 0; });
}

std::size_t BitVec::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t BitVec::next(std::size_t i) const noexcept {
  if (i >= size_) return npos;
  std::size_t w = i / word_bits;
  word_type word = words_[w] & (~word_type{0} << (i % word_bits));
  while (true) {
    if (word != 0) return w * word_bits + static_cast<std::size_t>(std::countr_zero(word));
    if (++w == words_.size()) return npos;
    word = words_[w];
  }
}

bool BitVec::dot(const BitVec& other) const {
  require_same_size(size_, other.size_, "BitVec dot");
  word_type acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return (std::popcount(acc) & 1) != 0;
}

BitVec BitVec::slice(std::size_t offset, std::size_t length) const {
  if (offset + length > size_) throw DimensionError("BitVec slice out of range");
  BitVec out(length);
  for (std::size_t i = next(offset); i != npos && i < offset + length; i = next(i + 1)) {
    out.set(i - offset);
  }
  return out;
}

BitVec BitVec::resized(std::size_t n) const {
  BitVec out(n);
  for_each_set([&](std::size_t i) {
    if (i < n) out.set(i);
  });
  return out;
}

BitVec BitVec::concat(const BitVec& a, const BitVec& b) {
  BitVec out = a.resized(a.size() + b.size());
  b.for_each_set([&](std::size_t i) { out.set(a.size() + i); });
  return out;
}

std::vector<int> BitVec::bits() const {
  std::vector<int> out(size_, 0);
  for_each_set([&](std::size_t i) { out[i] = 1; });
  return out;
}

std::string BitVec::to_string() const {
  std::string s(size_, '0');
  for_each_set([&](std::size_t i) { s[i] = '1'; });
  return s;
}

std::strong_ordering operator<=>(const BitVec& a, const BitVec& b) {
  if (auto c = a.size_ <=> b.size_; c != 0) return c;
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    const BitVec::word_type diff = a.words_[w] ^ b.words_[w];
    if (diff != 0) {
      const auto bit = std::countr_zero(diff);
      return ((a.words_[w] >> bit) & 1U) != 0 ? std::strong_ordering::greater
                                              : std::strong_ordering::less;
    }
  }
  return std::strong_ordering::equal;
}

std::size_t BitVecHash::operator()(const BitVec& v) const noexcept {
  std::size_t h = std::hash<std::size_t>{}(v.size());
  for (auto w : v.words()) h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

// ---------------------------------------------------------------------------

GF2Matrix GF2Matrix::identity(std::size_t n) {
  GF2Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

GF2Matrix GF2Matrix::from_rows(std::size_t cols, std::vector<BitVec> rows) {
  GF2Matrix m;
  m.rows_ = rows.size();
  m.cols_ = cols;
  for (const auto& r : rows) require_same_size(r.size(), cols, "GF2Matrix::from_rows");
  m.data_ = std::move(rows);
  return m;
}

GF2Matrix GF2Matrix::from_columns(std::size_t rows, const std::vector<BitVec>& columns) {
  GF2Matrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    require_same_size(columns[c].size(), rows, "GF2Matrix::from_columns");
    columns[c].for_each_set([&](std::size_t r) { m.set(r, c); });
  }
  return m;
}

GF2Matrix GF2Matrix::from_flat(std::size_t rows, std::size_t cols, const BitVec& flat) {
  require_same_size(flat.size(), rows * cols, "GF2Matrix::from_flat");
  GF2Matrix m(rows, cols);
  flat.for_each_set([&](std::size_t i) { m.set(i / cols, i % cols); });
  return m;
}

BitVec GF2Matrix::column(std::size_t c) const {
  BitVec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.set(r, data_[r].test(c));
  return out;
}

BitVec GF2Matrix::apply(const BitVec& v) const {
  require_same_size(v.size(), cols_, "GF2Matrix::apply");
  BitVec out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.set(r, data_[r].dot(v));
  return out;
}

GF2Matrix GF2Matrix::transpose() const {
  GF2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) data_[r].for_each_set([&](std::size_t c) { t.set(c, r); });
  return t;
}

BitVec GF2Matrix::flatten() const {
  BitVec out(rows_ * cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    data_[r].for_each_set([&](std::size_t c) { out.set(r * cols_ + c); });
  }
  return out;
}

bool GF2Matrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const BitVec& r) { return r.none(); });
}

bool GF2Matrix::is_identity() const noexcept {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r) {
    if (data_[r].count() != 1 || !data_[r].test(r)) return false;
  }
  return true;
}

GF2Matrix& GF2Matrix::operator+=(const GF2Matrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("GF2Matrix add: shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r) data_[r] ^= other.data_[r];
  return *this;
}

GF2Matrix operator*(const GF2Matrix& a, const GF2Matrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("GF2Matrix multiply: shape mismatch");
  GF2Matrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    a.data_[r].for_each_set([&](std::size_t k) { out.data_[r] ^= b.data_[k]; });
  }
  return out;
}

RrefResult rref(const GF2Matrix& m) {
  std::vector<BitVec> rows = m.row_data();
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < m.cols() && lead < rows.size(); ++col) {
    std::size_t sel = lead;
    while (sel < rows.size() && !rows[sel].test(col)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[lead]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != lead && rows[r].test(col)) rows[r] ^= rows[lead];
    }
    pivots.push_back(col);
    ++lead;
  }
  RrefResult out;
  out.rank = lead;
  out.pivots = std::move(pivots);
  out.matrix = GF2Matrix::from_rows(m.cols(), std::move(rows));
  return out;
}

std::size_t rank(const GF2Matrix& m) { return rref(m).rank; }

std::vector<BitVec> null_space(const GF2Matrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<BitVec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    BitVec v(m.cols());
    v.set(free);
    for (std::size_t i = 0; i < r.rank; ++i) {
      if (r.matrix(i, free)) v.set(r.pivots[i]);
    }
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.cols(), basis).basis();
}

std::optional<GF2Matrix> inverse(const GF2Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  std::vector<BitVec> aug;
  aug.reserve(n);
  for (std::size_t r = 0; r < n; ++r) aug.push_back(BitVec::concat(m.row(r), BitVec::unit(n, r)));
  const RrefResult red = rref(GF2Matrix::from_rows(2 * n, std::move(aug)));
  if (red.rank < n || red.pivots[n - 1] != n - 1) return std::nullopt;
  std::vector<BitVec> inv;
  for (std::size_t r = 0; r < n; ++r) inv.push_back(red.matrix.row(r).slice(n, n));
  return GF2Matrix::from_rows(n, std::move(inv));
}

GF2Matrix power(const GF2Matrix& m, std::size_t e) {
  if (m.rows() != m.cols()) throw DimensionError("matrix power needs a square matrix");
  GF2Matrix result = GF2Matrix::identity(m.rows());
  GF2Matrix base = m;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

// ---------------------------------------------------------------------------

Subspace Subspace::full(std::size_t n) {
  Subspace s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.basis_.push_back(BitVec::unit(n, i));
    s.pivots_.push_back(i);
  }
  return s;
}

Subspace Subspace::span(std::size_t ambient, std::span<const BitVec> vectors) {
  Subspace s(ambient);
  for (const auto& v : vectors) s.insert(v);
  return s;
}

void Subspace::check_ambient(std::size_t n) const {
  if (n != ambient_) {
    throw DimensionError("subspace ambient dimension " + std::to_string(ambient_) + " vs vector length " +
                         std::to_string(n));
  }
}

std::vector<std::size_t> Subspace::non_pivots() const {
  std::vector<std::size_t> out;
  std::size_t next_pivot = 0;
  for (std::size_t c = 0; c < ambient_; ++c) {
    if (next_pivot < pivots_.size() && pivots_[next_pivot] == c) {
      ++next_pivot;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

BitVec Subspace::reduce(BitVec v) const {
  check_ambient(v.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (v.test(pivots_[i])) v ^= basis_[i];
  }
  return v;
}

bool Subspace::contains(const BitVec& v) const { return reduce(v).none(); }

bool Subspace::contains(const Subspace& other) const {
  check_ambient(other.ambient_);
  return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const BitVec& v) { return contains(v); });
}

bool Subspace::insert(const BitVec& v) {
  BitVec r = reduce(v);
  const std::size_t p = r.first();
  if (p == BitVec::npos) return false;
  for (auto& row : basis_) {
    if (row.test(p)) row ^= r;
  }
  const auto pos = static_cast<std::size_t>(std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin());
  pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), p);
  basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(r));
  return true;
}

BitVec Subspace::coordinates(const BitVec& v) const {
  check_ambient(v.size());
  BitVec c(basis_.size());
  for (std::size_t i = 0; i < pivots_.size(); ++i) c.set(i, v.test(pivots_[i]));
  return c;
}

BitVec Subspace::combine(const BitVec& coords) const {
  if (coords.size() != basis_.size()) throw DimensionError("coordinate vector length mismatch");
  BitVec v(ambient_);
  coords.for_each_set([&](std::size_t i) { v ^= basis_[i]; });
  return v;
}

Subspace operator+(const Subspace& a, const Subspace& b) {
  a.check_ambient(b.ambient_);
  Subspace s = a;
  for (const auto& v : b.basis_) s.insert(v);
  return s;
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
  if (auto c = a.basis_.size() <=> b.basis_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.basis_.size(); ++i) {
    if (auto c = a.basis_[i] <=> b.basis_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw DimensionError("intersect: ambient mismatch");
  const std::size_t n = a.ambient();
  // Zassenhaus: rows [u|u] for u in a, [v|0] for v in b; rows with zero left
  // half after reduction span a ∩ b in their right half.
  std::vector<BitVec> rows;
  for (const auto& u : a.basis()) rows.push_back(BitVec::concat(u, u));
  for (const auto& v : b.basis()) rows.push_back(BitVec::concat(v, BitVec(n)));
  const RrefResult red = rref(GF2Matrix::from_rows(2 * n, std::move(rows)));
  std::vector<BitVec> out;
  for (std::size_t r = 0; r < red.rank; ++r) {
    if (red.pivots[r] >= n) out.push_back(red.matrix.row(r).slice(n, n));
  }
  return Subspace::span(n, out);
}

Subspace image(const GF2Matrix& m, const Subspace& s) {
  if (m.cols() != s.ambient()) throw DimensionError("image: matrix/subspace mismatch");
  Subspace out(m.rows());
  for (const auto& v : s.basis()) out.insert(m.apply(v));
  return out;
}

bool subspace_contains(const Subspace& s, const BitVec& v) { return s.contains(v); }

Subspace subspace_mul(const Subspace& s, const Subspace& t, const BilinearProduct& mul) {
  if (s.ambient() != t.ambient()) throw DimensionError("subspace_mul: ambient mismatch");
  Subspace out(s.ambient());
  for (const auto& x : s.basis()) {
    for (const auto& y : t.basis()) out.insert(mul(x, y));
  }
  return out;
}

}  // namespace phasealg
