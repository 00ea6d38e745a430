#pragma once

// JSON serialization of phases, representations, maps and reports. Bit
// vectors are arrays of 0/1 integers; matrices and subspaces are arrays of
// rows, subspaces always in RREF.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "phasealg/filtrep.hpp"
#include "phasealg/phase.hpp"

namespace phasealg {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const BitVec& v);
Json to_json(const GF2Matrix& m);
Json to_json(const Subspace& s);
Json to_json(const ValidationReport& r);

BitVec bits_from_json(const Json& j, std::size_t length, const std::string& what);
GF2Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& what);
Subspace subspace_from_json(const Json& j, std::size_t ambient, const std::string& what);

/// {"dim", "labels", "unit", "mul", "filtration", ["witness_island"], ["augmentation"]}.
/// "mul" lists only nonzero products as [i, j, bits], sorted by (i, j).
Json phase_to_json(const Phase& p);
/// Shape errors throw InvalidInput; algebraic axioms are left to validate_phase.
Phase phase_from_json(const Json& j);

/// {"phase", "mdim", "action", "vfilt", "level"} with the phase inline.
Json rep_to_json(const FilteredRep& r);
/// "phase" may be inline or a path resolved against `base_dir`.
FilteredRep rep_from_json(const Json& j, const std::filesystem::path& base_dir = {});

/// Source and target inline, so the map can be re-certified standalone.
Json phase_map_to_json(const PhaseMap& m);
PhaseMap phase_map_from_json(const Json& j);

Json parse_json(const std::string& text, const std::string& what);
std::string read_text(const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);
Phase read_phase_file(const std::filesystem::path& path);
FilteredRep read_rep_file(const std::filesystem::path& path);
/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace phasealg
