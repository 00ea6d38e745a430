#include "phasealg/nilring.hpp"

namespace phasealg {

namespace {

std::uint64_t mask_for(unsigned order) {
  return order >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order) - 1;
}

void require_same_ring(const NilRingElem& a, const NilRingElem& b) {
  if (a.order() != b.order()) {
    throw DimensionError("ring mismatch: GF(2)[u]/(u^" + std::to_string(a.order()) + ") vs GF(2)[u]/(u^" +
                         std::to_string(b.order()) + ")");
  }
}

}  // namespace

NilRingElem::NilRingElem(unsigned order, std::uint64_t coeffs) : order_(order), coeffs_(coeffs) {
  if (order == 0 || order > max_order) {
    throw InvalidInput("nilpotency order must lie in [1, " + std::to_string(max_order) + "]");
  }
  if ((coeffs & ~mask_for(order)) != 0) throw InvalidInput("coefficient beyond u^(k-1)");
}

std::string NilRingElem::to_string() const {
  if (coeffs_ == 0) return "0";
  std::string s;
  for (unsigned i = 0; i < order_; ++i) {
    if (!coeff(i)) continue;
    if (!s.empty()) s += '+';
    if (i == 0) {
      s += '1';
    } else if (i == 1) {
      s += 'u';
    } else {
      s += "u^" + std::to_string(i);
    }
  }
  return s;
}

NilRingElem operator+(const NilRingElem& a, const NilRingElem& b) {
  require_same_ring(a, b);
  return {a.order_, a.coeffs_ ^ b.coeffs_};
}

NilRingElem operator*(const NilRingElem& a, const NilRingElem& b) {
  require_same_ring(a, b);
  // Carry-less product; both factors have < 32 bits so nothing overflows.
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < a.order_; ++i) {
    if (a.coeff(i)) acc ^= b.coeffs_ << i;
  }
  return {a.order_, acc & mask_for(a.order_)};
}

NilRingElem nr_mul(const NilRingElem& a, const NilRingElem& b) { return a * b; }

bool frobenius_lambda(const NilRingElem& a) { return a.coeff(a.order() - 1); }

}  // namespace phasealg
