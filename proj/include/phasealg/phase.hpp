#pragma once

// Finite algebraic phases: unital associative GF(2)-algebras given by
// structure constants, carrying a descending chain of two-sided nilpotent
// ideals F[0] = A ⊇ F[1] ⊇ ... ⊇ F[d+1] = 0 (the defect filtration).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phasealg/gf2.hpp"

namespace phasealg {

using PhaseElem = BitVec;

/// Defect degree; the zero element has degree kInfiniteDegree.
using Degree = std::size_t;
inline constexpr Degree kInfiniteDegree = std::numeric_limits<Degree>::max();

struct Phase {
  std::size_t dim = 0;
  std::vector<std::string> labels;
  BitVec unit;
  /// table[i * dim + j] = b_i · b_j
  std::vector<BitVec> table;
  /// F[0], ..., F[d+1]; F[0] is the full space and the last entry is zero.
  std::vector<Subspace> filtration;
  /// A recorded unital subalgebra complementing F[1], when one is known.
  std::optional<Subspace> witness_island;
  /// A recorded unital algebra map to GF(2), as a row vector.
  std::optional<BitVec> augmentation;

  const BitVec& product(std::size_t i, std::size_t j) const { return table[i * dim + j]; }
  BitVec multiply(const BitVec& x, const BitVec& y) const;
  BitVec basis_element(std::size_t i) const { return BitVec::unit(dim, i); }
  BitVec zero() const { return BitVec(dim); }
  /// F[k] for any k; layers past the stored chain are zero.
  Subspace layer(std::size_t k) const;
  /// Matrix of y ↦ x·y.
  GF2Matrix left_multiplication(const BitVec& x) const;
  /// Matrix of y ↦ y·x.
  GF2Matrix right_multiplication(const BitVec& x) const;
  BilinearProduct product_fn() const;

  friend bool operator==(const Phase&, const Phase&) = default;
};

/// Unfiltered algebra from structure constants: filtration is A ⊇ 0.
Phase make_algebra(std::vector<std::string> labels, BitVec unit, std::vector<BitVec> table);

/// The 1-dimensional unit algebra GF(2).
Phase unit_phase();

/// Group algebra GF(2)[C_m] with basis g^0, ..., g^(m-1); unfiltered.
Phase cyclic_group_algebra(std::size_t order);

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<Check> checks;

  bool ok() const;
  const Check* first_failure() const;
  const Check* find(const std::string& name) const;
};

/// Checks every phase invariant and cites a counterexample for each failure.
ValidationReport validate_phase(const Phase& p);

Degree defect_degree(const Phase& p, const PhaseElem& x);

/// Largest k with F[k] ≠ 0; zero exactly for strong phases.
std::size_t boundary_depth(const Phase& p);

/// dim F[0], dim F[1], ..., dim F[d+1].
std::vector<std::size_t> layer_dimensions(const Phase& p);

bool is_two_sided_ideal(const Phase& p, const Subspace& s);

/// The two-sided ideal generated by `generators`.
Subspace ideal_closure(const Phase& p, std::span<const BitVec> generators);

/// The subalgebra generated by `generators` and the unit.
Subspace subalgebra_closure(const Phase& p, std::span<const BitVec> generators);

/// Replaces the filtration by the ideal powers F[k] = I^k.
Phase ideal_power_filtration(const Phase& p, const Subspace& ideal);

/// Linear map between phases, matrix of shape target.dim × source.dim.
struct PhaseMap {
  Phase source;
  Phase target;
  GF2Matrix matrix;

  BitVec operator()(const BitVec& x) const { return matrix.apply(x); }
};

PhaseMap identity_map(const Phase& p);
PhaseMap compose(const PhaseMap& outer, const PhaseMap& inner);

struct QuotientResult {
  Phase quotient;
  PhaseMap projection;
};

/// A/F[1] on the basis of non-pivot coordinates of F[1], with the trivial
/// filtration, and the projection onto it.
QuotientResult boundary_quotient(const Phase& p);

/// Resolves the augmentation used for extensions: an explicit one, the
/// recorded one, or the parity functional when that is an algebra map.
std::optional<BitVec> find_augmentation(const Phase& p);
bool is_augmentation(const Phase& p, const BitVec& eps);

/// Adjoins a central square-zero ideal B of dimension b_dim with
/// a·b = b·a = ε(a)·b and F'[k] = F[k] + B for 1 ≤ k ≤ max(d, 1).
Phase square_zero_extend(const Phase& p, std::size_t b_dim,
                         const std::optional<BitVec>& augmentation = std::nullopt);

/// Inclusion of p into square_zero_extend(p, ...) as the first p.dim coordinates.
PhaseMap extension_inclusion(const Phase& base, const Phase& extension);

struct Certificate {
  bool ok = true;
  std::string failure;

  explicit operator bool() const { return ok; }
};

/// Unital, multiplicative on basis pairs, F_s[k] mapped into F_t[k].
Certificate hom_certify(const PhaseMap& m);
/// Bijective homomorphism mapping each F_s[k] onto F_t[k].
Certificate iso_certify(const PhaseMap& m);

struct PhaseInvariants {
  std::size_t dim = 0;
  std::vector<std::size_t> layer_dims;
  bool commutative = false;
  std::size_t center_dim = 0;
  /// Number of elements x with x² = 0; only computed for dim ≤ 16.
  std::optional<std::uint64_t> square_zero_count;

  friend bool operator==(const PhaseInvariants&, const PhaseInvariants&) = default;
};

PhaseInvariants phase_invariants(const Phase& p);

enum class Verdict { Yes, No, Unknown };
std::string to_string(Verdict v);

struct IsoSearchResult {
  Verdict verdict = Verdict::Unknown;
  std::optional<PhaseMap> map;
  std::string reason;
  std::uint64_t steps = 0;
};

inline constexpr std::uint64_t kDefaultIsoBudget = 1'000'000;

/// Invariant screen followed by a backtracking search over images of
/// algebra generators; any returned map passes iso_certify.
IsoSearchResult iso_search(const Phase& p, const Phase& q, std::uint64_t budget = kDefaultIsoBudget);

/// Group structure of the basis when every basis product is a single basis
/// vector, the unit is a basis vector, and every basis element is invertible.
/// Entry [i][j] is the index of b_i·b_j.
std::optional<std::vector<std::vector<std::size_t>>> group_table(const Phase& p);

struct IslandResult {
  enum class Status { Found, NoneWithinBudget };
  Status status = Status::NoneWithinBudget;
  std::optional<Subspace> island;
  std::string method;
  std::uint64_t steps = 0;
};

/// True when s contains the unit, is closed under products and complements F[1].
bool is_rigidity_island(const Phase& p, const Subspace& s);
IslandResult rigidity_island(const Phase& p, std::uint64_t budget = kDefaultIsoBudget);

/// Per layer k, canonical lifts of a basis of F[k]/F[k+1], computed with the
/// basis sorted by label so the result is stable under relabeling.
std::vector<PhaseElem> canonical_generators(const Phase& p);

/// Greedy algebra-generating subset of canonical_generators, in order,
/// dropping the unit and anything already generated.
std::vector<PhaseElem> algebra_generators(const Phase& p);

struct ObstructionObject {
  /// Least k ≥ 1 with F[k] ≠ 0; 0 for the zero object of a strong phase.
  std::size_t layer = 0;
  std::size_t dim = 0;
  /// Canonical lifts of the basis of F[k]/F[k+1].
  std::vector<PhaseElem> basis;
  /// Per phase basis element, left and right action on F[k]/F[k+1].
  std::vector<GF2Matrix> left_action;
  std::vector<GF2Matrix> right_action;

  bool is_zero() const { return dim == 0; }
};

ObstructionObject obstruction_object(const Phase& p);

struct GroupSubsetHint {
  std::vector<std::string> labels;
};
struct IdealHint {
  Subspace ideal;
};
using InductionHint = std::variant<GroupSubsetHint, IdealHint>;

/// Filters an unfiltered algebra by the powers of the hinted ideal: either
/// generated by {g − 1} for labeled basis group elements or given directly.
Phase induce_phase(const Phase& algebra, const InductionHint& hint);

struct SubalgebraResult {
  Phase phase;
  PhaseMap inclusion;
};

/// The subalgebra s on its RREF basis, with the induced filtration.
SubalgebraResult restrict_to_subalgebra(const Phase& p, const Subspace& s);

/// Relabels the basis: new basis element i is old basis element perm[i].
/// Returns the permuted phase and the isomorphism from p to it.
PhaseMap permute_basis(const Phase& p, const std::vector<std::size_t>& perm);

}  // namespace phasealg
