#pragma once

// Filtered representations of phases, the evaluation map Φ into operator
// algebras, representation enumeration and testing-object search.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "phasealg/phase.hpp"

namespace phasealg {

using PhasePtr = std::shared_ptr<const Phase>;

enum class Admissibility {
  /// Degree-k elements shift the module filtration by at least k.
  Weak,
  /// Additionally F[1] acts as zero.
  Terminating,
};

std::string to_string(Admissibility a);

struct FilteredRep {
  PhasePtr phase;
  std::size_t mdim = 0;
  /// One mdim × mdim matrix per phase basis element.
  std::vector<GF2Matrix> action;
  /// G[0] = V ⊇ G[1] ⊇ ... ⊇ G[N+1] = 0.
  std::vector<Subspace> vfilt;
  Admissibility level = Admissibility::Terminating;

  /// Action of an arbitrary element, extended linearly.
  GF2Matrix act(const BitVec& x) const;
  /// G[i] for any i; past the chain this is zero.
  Subspace layer(std::size_t i) const;
  /// N + 1, the index of the first zero layer.
  std::size_t length() const;
};

/// V ⊇ 0.
std::vector<Subspace> trivial_module_filtration(std::size_t mdim);

ValidationReport rep_validate(const FilteredRep& r);

/// Left regular representation of boundary_quotient(p), precomposed with
/// the projection; level terminating, filtration V ⊇ 0.
FilteredRep regular_rep(const PhasePtr& p);

/// Pulls a representation of m.target back along m.
FilteredRep restrict_rep(const FilteredRep& r, const PhaseMap& m);

struct PhiMap {
  PhasePtr phase;
  std::vector<FilteredRep> reps;
  /// Columns indexed by phase basis, rows by stacked operator entries.
  GF2Matrix matrix;

  /// Φ(x) as the stacked flattened operators.
  BitVec evaluate(const BitVec& x) const { return matrix.apply(x); }
};

struct PhiResult {
  PhiMap phi;
  Subspace kernel;
};

PhiResult phi_assemble(const PhasePtr& p, const std::vector<FilteredRep>& reps);

struct ImageResult {
  Phase image;
  /// Certified isomorphism from boundary_quotient(p) onto the image.
  PhaseMap from_quotient;
  Certificate certificate;
};

/// Operator algebra spanned by Φ's image, on its canonical RREF basis.
ImageResult image_algebra(const PhiMap& phi);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 50'000'000;

/// Every unital algebra map from boundary_quotient(p) into mdim × mdim
/// matrices, lifted to p. Deterministic order.
std::vector<FilteredRep> enumerate_reps(const PhasePtr& p, std::size_t mdim,
                                        std::uint64_t budget = kDefaultEnumerationBudget);

inline constexpr std::uint64_t kDefaultLatticeBudget = 100'000;

/// All action-invariant subspaces, sorted by (dim, basis).
std::vector<Subspace> subrep_lattice(const FilteredRep& r, std::uint64_t budget = kDefaultLatticeBudget);

/// The subrepresentation on an invariant subspace, on its RREF basis.
FilteredRep subrep(const FilteredRep& r, const Subspace& s);
/// The quotient representation V/s on the non-pivot coordinates of s.
FilteredRep quotient_rep(const FilteredRep& r, const Subspace& s);

/// Whether the kernel of Φ over `reps` is exactly F[1]; `witness`
/// receives an element of the kernel outside F[1] when it is not.
bool separates_modulo_boundary(const PhasePtr& p, const std::vector<FilteredRep>& reps,
                               BitVec* witness = nullptr);

struct MinimalityCertificate {
  struct Entry {
    Subspace subspace;
    /// Element outside F[1] acting as zero on the subrepresentation.
    BitVec witness;
  };
  /// One entry per maximal proper subrepresentation.
  std::vector<Entry> maximal_subreps;
  bool complete = false;
};

struct TestingObjectResult {
  FilteredRep rep;
  MinimalityCertificate certificate;
  /// How the object was reached from the regular representation.
  std::vector<std::string> path;
};

TestingObjectResult testing_object_search(const PhasePtr& p, std::uint64_t budget = kDefaultLatticeBudget);

/// Whether restricting `ext_reps` along `inclusion` hits every element of
/// `base_reps` exactly once, compared by action_key.
bool restriction_bijective(const std::vector<FilteredRep>& ext_reps, const PhaseMap& inclusion,
                           const std::vector<FilteredRep>& base_reps);

/// Canonical byte key of a representation's action, for ordering and
/// comparing representation lists.
std::string action_key(const FilteredRep& r);

}  // namespace phasealg
