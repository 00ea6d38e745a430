#include "phasealg/corpus.hpp"

#include <algorithm>

#include "phasealg/heisenberg.hpp"

namespace phasealg {

Phase c4_phase() { return induce_phase(cyclic_group_algebra(4), GroupSubsetHint{{"g^0", "g^1", "g^2", "g^3"}}); }

std::vector<CorpusEntry> builtin_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back({"unit", unit_phase(), std::nullopt, 0});
  out.push_back({"dual", square_zero_extend(unit_phase(), 1), "unit", 1});
  out.push_back({"c4", c4_phase(), std::nullopt, 0});
  out.push_back({"flagship_k1", heisenberg_phase({1, 1, Cocycle::Alternating}), std::nullopt, 0});
  out.push_back({"flagship_k2", heisenberg_phase({1, 2, Cocycle::Alternating}), std::nullopt, 0});
  out.push_back({"polarized_k1", heisenberg_phase({1, 1, Cocycle::Polarized}), std::nullopt, 0});
  out.push_back({"polarized_k2", heisenberg_phase({1, 2, Cocycle::Polarized}), std::nullopt, 0});
  const std::vector<std::pair<std::string, std::size_t>> extensions = {
      {"c4", 1},          {"flagship_k1", 1}, {"flagship_k1", 2}, {"flagship_k2", 1},
      {"flagship_k2", 2}, {"polarized_k1", 1}, {"polarized_k2", 1},
  };
  for (const auto& [base, b] : extensions) {
    const Phase& p = corpus_entry(out, base).phase;
    out.push_back({base + "_ext" + std::to_string(b), square_zero_extend(p, b), base, b});
  }
  return out;
}

const CorpusEntry& corpus_entry(const std::vector<CorpusEntry>& corpus, const std::string& name) {
  const auto it = std::find_if(corpus.begin(), corpus.end(), [&](const CorpusEntry& e) { return e.name == name; });
  if (it == corpus.end()) throw InvalidInput("no corpus phase named '" + name + "'");
  return *it;
}

}  // namespace phasealg
