#pragma once

#include <cstdint>
#include <string>

#include "phasealg/error.hpp"

namespace phasealg {

/// Element of the truncated polynomial ring GF(2)[u]/(u^k).
///
/// Bit i of the coefficient word is the coefficient of u^i. The order k is
/// part of the value, and mixing elements of different rings throws.
class NilRingElem {
 public:
  static constexpr unsigned max_order = 32;

  NilRingElem(unsigned order, std::uint64_t coeffs);

  static NilRingElem zero(unsigned order) { return {order, 0}; }
  static NilRingElem one(unsigned order) { return {order, 1}; }
  static NilRingElem u(unsigned order) { return {order, order > 1 ? 2U : 0U}; }

  unsigned order() const noexcept { return order_; }
  std::uint64_t coeffs() const noexcept { return coeffs_; }
  bool coeff(unsigned i) const noexcept { return i < order_ && ((coeffs_ >> i) & 1U) != 0; }
  bool is_zero() const noexcept { return coeffs_ == 0; }

  /// "0", "1", "u", "1+u^2", ...
  std::string to_string() const;

  friend NilRingElem operator+(const NilRingElem& a, const NilRingElem& b);
  friend NilRingElem operator*(const NilRingElem& a, const NilRingElem& b);
  friend bool operator==(const NilRingElem&, const NilRingElem&) = default;

 private:
  unsigned order_;
  std::uint64_t coeffs_;
};

NilRingElem nr_mul(const NilRingElem& a, const NilRingElem& b);

/// Frobenius functional: the coefficient of u^(k-1). For k = 1 this is the
/// identity on GF(2); for k = 2 it is the u-coefficient.
bool frobenius_lambda(const NilRingElem& a);

}  // namespace phasealg
