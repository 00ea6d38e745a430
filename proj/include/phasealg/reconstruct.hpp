#pragma once

// Rebuilding phases from operator data, the strong/weak dichotomy, local
// reconstruction on rigidity islands and invariant-based comparison.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phasealg/filtrep.hpp"
#include "phasealg/phase.hpp"

namespace phasealg {

/// Largest k with op·G[i] ⊆ G[i+k] for all i; kInfiniteDegree for the zero
/// operator and nullopt when op does not preserve the filtration.
std::optional<Degree> operator_defect_degree(const GF2Matrix& op, const std::vector<Subspace>& vfilt);

/// A representation of an unknown phase: one operator per generator.
struct RawRep {
  std::vector<GF2Matrix> ops;
  std::vector<Subspace> vfilt;
};

RawRep raw_rep(const FilteredRep& r);

inline constexpr std::uint64_t kDefaultClosureBudget = 1'000'000;

struct Reconstruction {
  /// Operator algebra on its RREF basis, filtered by operator defect degree.
  Phase operator_phase;
  /// operator_phase modulo its degree ≥ 1 stratum.
  Phase phase;
  PhaseMap projection;
  /// Image in `phase` of each input generator.
  std::vector<BitVec> generator_images;
  std::uint64_t steps = 0;
};

/// All reps must carry the same number of operators; operator i of every
/// rep is the action of the same abstract generator.
Reconstruction reconstruct_phase(const std::vector<RawRep>& reps, std::uint64_t budget = kDefaultClosureBudget);

struct RoundTrip {
  Reconstruction reconstruction;
  /// Candidate map from boundary_quotient(p) to the reconstructed phase.
  std::optional<PhaseMap> map;
  Certificate certificate;
};

/// Reconstructs from reps of p (operators indexed by p's basis) and
/// certifies the induced map out of boundary_quotient(p).
RoundTrip reconstruct_round_trip(const PhasePtr& p, const std::vector<FilteredRep>& reps,
                                 std::uint64_t budget = kDefaultClosureBudget);

struct Strong {
  friend bool operator==(const Strong&, const Strong&) = default;
};
struct Weak {
  std::size_t depth = 1;
  friend bool operator==(const Weak&, const Weak&) = default;
};
using Dichotomy = std::variant<Strong, Weak>;

Dichotomy dichotomy_classify(const Phase& p);
/// "Strong" or "Weak(d)".
std::string to_string(const Dichotomy& d);

struct LocalReconstructionReport {
  /// "found" or "island unknown".
  std::string island_status;
  std::string island_method;
  std::optional<Subspace> island;
  std::size_t island_dim = 0;
  std::size_t global_kernel_dim = 0;
  std::size_t island_kernel_dim = 0;
  std::optional<PhaseMap> witness;
  Certificate certificate{false, "not attempted"};

  bool ok() const { return island.has_value() && island_kernel_dim == 0 && certificate.ok; }
};

LocalReconstructionReport local_reconstruction_check(const Phase& p, std::uint64_t budget = kDefaultIsoBudget);

enum class Equivalence { Equivalent, Distinguished, Unknown };
std::string to_string(Equivalence e);

struct SideInvariants {
  std::vector<std::size_t> layer_dims;
  /// Terminating rep count per module dimension 1..mdim_max; nullopt when
  /// enumeration hit its budget.
  std::vector<std::optional<std::size_t>> rep_counts;
  std::size_t image_dim = 0;
};

struct HiddenStructureReport {
  Equivalence verdict = Equivalence::Unknown;
  /// Name of the first invariant that differs, when distinguished.
  std::string distinguished_by;
  std::string detail;
  SideInvariants left;
  SideInvariants right;
  Verdict image_iso = Verdict::Unknown;
  std::optional<PhaseMap> witness;
};

struct HiddenStructureBudgets {
  std::size_t mdim_max = 2;
  std::uint64_t enumeration = kDefaultEnumerationBudget;
  std::uint64_t iso = kDefaultIsoBudget;
};

HiddenStructureReport no_hidden_structure_check(const Phase& p, const Phase& q, const HiddenStructureBudgets& budgets = {});

}  // namespace phasealg
