#pragma once

// Heisenberg-type phases over GF(2)[u]/(u^k): basis symbols Z^a D(w) for
// w in W = V ⊕ V, V = R^n, with D(w)D(w') = Z^{Ω(w,w')} D(w+w') and Z a
// central involution.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "phasealg/nilring.hpp"
#include "phasealg/phase.hpp"

namespace phasealg {

enum class Cocycle {
  /// Ω = λ(ξ·x' − ξ'·x).
  Alternating,
  /// Ω = λ(ξ·x'); noncommutative.
  Polarized,
};

std::string to_string(Cocycle c);
Cocycle parse_cocycle(const std::string& s);

struct HeisenbergSpec {
  std::size_t n = 1;
  unsigned k = 2;
  Cocycle cocycle = Cocycle::Alternating;

  /// |W| = 2^(2nk).
  std::size_t point_count() const;
  std::size_t phase_dim() const { return 2 * point_count(); }
  /// "heisenberg:n=<n>,k=<k>,cocycle=<c>"
  std::string to_string() const;
  static HeisenbergSpec parse(const std::string& s);

  friend bool operator==(const HeisenbergSpec&, const HeisenbergSpec&) = default;
};

/// w = (x, ξ) in W.
struct PhasePoint {
  std::vector<NilRingElem> x;
  std::vector<NilRingElem> xi;

  /// Point number `index` in the basis enumeration: bit (j·k + c) is the
  /// u^c coefficient of component j, components ordered x_1..x_n, ξ_1..ξ_n.
  static PhasePoint from_index(const HeisenbergSpec& spec, std::size_t index);
  std::size_t index() const;
  PhasePoint scaled(const NilRingElem& r) const;

  friend PhasePoint operator+(const PhasePoint& a, const PhasePoint& b);
  friend bool operator==(const PhasePoint&, const PhasePoint&) = default;
};

/// ξ·x' − ξ'·x in R.
NilRingElem omega(const PhasePoint& w, const PhasePoint& w2);
/// λ ∘ ω.
bool capital_omega(const PhasePoint& w, const PhasePoint& w2);
/// The cocycle selected by `cocycle`: capital_omega or λ(ξ·x').
bool cocycle_value(Cocycle cocycle, const PhasePoint& w, const PhasePoint& w2);

/// Basis label "D(x;xi)" or "Z*D(x;xi)".
std::string heisenberg_label(bool z, const PhasePoint& w);

/// Unfiltered twisted group algebra on the symbols Z^a D(w).
Phase heisenberg_algebra(const HeisenbergSpec& spec);

/// Labels of D(uw) for w in W: the boundary subgroup generating F[1].
std::vector<std::string> boundary_subgroup_labels(const HeisenbergSpec& spec);

/// Heisenberg phase filtered by the powers of the ideal generated by
/// {D(uw) − D(0)}.
Phase heisenberg_phase(const HeisenbergSpec& spec);

struct FlagshipSuite {
  std::size_t n = 1;
  std::size_t b_dim = 1;
  /// Strong phase over GF(2).
  Phase r_strong;
  /// Weak phase over GF(2)[u]/(u^2).
  Phase p_weak;
  /// square_zero_extend(p_weak, b_dim).
  Phase p_ext;
  /// square_zero_extend(r_strong, b_dim): the strong/extension pair.
  Phase r_ext;
  /// Certified iso from boundary_quotient(p_weak) to r_strong, when found.
  std::optional<PhaseMap> quotient_iso;
  Verdict quotient_iso_verdict = Verdict::Unknown;
};

FlagshipSuite flagship_suite(std::size_t n, std::size_t b_dim, std::uint64_t budget = kDefaultIsoBudget);

}  // namespace phasealg
