#pragma once

// End-to-end run over the flagship phases with a consolidated JSON report.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "phasealg/filtrep.hpp"
#include "phasealg/io.hpp"
#include "phasealg/phase.hpp"

namespace phasealg {

struct DemoBudgets {
  std::size_t mdim_max = 2;
  std::uint64_t iso = kDefaultIsoBudget;
  std::uint64_t enumeration = kDefaultEnumerationBudget;
  std::uint64_t lattice = kDefaultLatticeBudget;
};

enum class CheckStatus { Pass, Fail, Unknown };
std::string to_string(CheckStatus s);

struct DemoCheck {
  std::string stage;
  std::string name;
  CheckStatus status = CheckStatus::Unknown;
  std::string detail;
};

struct DemoReport {
  Json report;
  std::vector<DemoCheck> checks;

  std::size_t count(CheckStatus s) const;
  /// One line per check followed by a totals line.
  std::string summary() const;
};

/// Builds R = heisenberg(n, k=1), P = heisenberg(n, k=2) and their
/// square-zero extensions, then runs every stage of the pipeline. Errors
/// inside a stage are rethrown as Error naming the stage.
DemoReport demo_flagship(std::size_t n, std::size_t b_dim, const DemoBudgets& budgets = {});

}  // namespace phasealg
