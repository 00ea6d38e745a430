#pragma once

// Incremental construction of multiplicative maps out of a phase: the map is
// known on the subalgebra generated so far and extended by closure.

#include <algorithm>
#include <utility>
#include <vector>

#include "phasealg/phase.hpp"

namespace phasealg::detail {

/// RREF basis of a subspace of the source together with the images of its
/// rows under a partial linear map.
struct TrackedBasis {
  std::vector<BitVec> src;
  std::vector<BitVec> img;
  std::vector<std::size_t> pivots;

  void reduce(BitVec& x, BitVec& y) const {
    for (std::size_t r = 0; r < src.size(); ++r) {
      if (x.test(pivots[r])) {
        x ^= src[r];
        y ^= img[r];
      }
    }
  }

  void insert(BitVec x, BitVec y) {
    const std::size_t p = x.first();
    for (std::size_t r = 0; r < src.size(); ++r) {
      if (src[r].test(p)) {
        src[r] ^= x;
        img[r] ^= y;
      }
    }
    const auto pos = static_cast<std::ptrdiff_t>(std::lower_bound(pivots.begin(), pivots.end(), p) - pivots.begin());
    pivots.insert(pivots.begin() + pos, p);
    src.insert(src.begin() + pos, std::move(x));
    img.insert(img.begin() + pos, std::move(y));
  }

  BitVec map(BitVec x, std::size_t target_dim) const {
    BitVec y(target_dim);
    reduce(x, y);
    return y;
  }
};

/// Partial multiplicative map defined on the subalgebra generated so far.
/// `Target` supplies the product and the injectivity policy.
template <class Target>
struct PartialHom {
  const Phase* source = nullptr;
  const Target* target = nullptr;
  TrackedBasis basis;
  Subspace image_span;
  std::vector<std::pair<BitVec, BitVec>> spanning;

  bool add(const BitVec& x, const BitVec& y) {
    std::vector<std::pair<BitVec, BitVec>> queue{{x, y}};
    while (!queue.empty()) {
      auto [sx, sy] = std::move(queue.back());
      queue.pop_back();
      BitVec rx = sx;
      BitVec ry = sy;
      basis.reduce(rx, ry);
      if (rx.none()) {
        if (ry.any()) return false;
        continue;
      }
      if (Target::injective && !image_span.insert(ry)) return false;
      basis.insert(std::move(rx), std::move(ry));
      spanning.emplace_back(sx, sy);
      const std::size_t n = spanning.size();
      for (std::size_t i = 0; i < n; ++i) {
        const auto& [wx, wy] = spanning[i];
        queue.emplace_back(source->multiply(sx, wx), target->multiply(sy, wy));
        if (i + 1 != n) queue.emplace_back(source->multiply(wx, sx), target->multiply(wy, sy));
      }
    }
    return true;
  }

  std::size_t dim() const { return basis.src.size(); }
};

}  // namespace phasealg::detail
