#pragma once

// The built-in corpus of small phases used by the demo and test suites.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "phasealg/phase.hpp"

namespace phasealg {

struct CorpusEntry {
  std::string name;
  Phase phase;
  /// For square-zero extensions: the corpus name of the base and b_dim.
  std::optional<std::string> base;
  std::size_t b_dim = 0;
};

/// GF(2)[C_4] filtered by powers of its augmentation ideal.
Phase c4_phase();

/// Unit algebra, dual numbers, GF(2)[C_4], the flagship and polarized
/// Heisenberg phases for n = 1, k ∈ {1, 2}, and square-zero extensions of
/// these with b_dim ∈ {1, 2}. Deterministic order.
std::vector<CorpusEntry> builtin_corpus();

const CorpusEntry& corpus_entry(const std::vector<CorpusEntry>& corpus, const std::string& name);

}  // namespace phasealg
