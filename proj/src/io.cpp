#include "phasealg/io.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

namespace phasealg {

namespace {

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(what + ": missing field '" + key + "'");
  return j.at(key);
}

std::size_t count_from_json(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw InvalidInput(what + ": expected a non-negative integer");
  }
  return j.get<std::size_t>();
}

}  // namespace

Json to_json(const BitVec& v) {
  Json a = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) a.push_back(v.test(i) ? 1 : 0);
  return a;
}

Json to_json(const GF2Matrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
  return a;
}

Json to_json(const Subspace& s) {
  Json a = Json::array();
  for (const auto& v : s.basis()) a.push_back(to_json(v));
  return a;
}

Json to_json(const ValidationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    if (!c.passed) e["detail"] = c.detail;
    checks.push_back(e);
  }
  Json out;
  out["ok"] = r.ok();
  out["checks"] = checks;
  return out;
}

BitVec bits_from_json(const Json& j, std::size_t length, const std::string& what) {
  if (!j.is_array()) throw InvalidInput(what + ": expected an array of bits");
  if (j.size() != length) {
    throw InvalidInput(what + ": expected " + std::to_string(length) + " bits, got " + std::to_string(j.size()));
  }
  BitVec v(length);
  for (std::size_t i = 0; i < length; ++i) {
    const Json& b = j[i];
    if (!b.is_number_integer() || (b.get<long long>() != 0 && b.get<long long>() != 1)) {
      throw InvalidInput(what + ": entry " + std::to_string(i) + " is not 0 or 1");
    }
    v.set(i, b.get<long long>() == 1);
  }
  return v;
}

GF2Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& what) {
  if (!j.is_array() || j.size() != rows) throw InvalidInput(what + ": expected " + std::to_string(rows) + " rows");
  std::vector<BitVec> rs;
  for (std::size_t r = 0; r < rows; ++r) rs.push_back(bits_from_json(j[r], cols, what + " row " + std::to_string(r)));
  return GF2Matrix::from_rows(cols, rs);
}

Subspace subspace_from_json(const Json& j, std::size_t ambient, const std::string& what) {
  if (!j.is_array()) throw InvalidInput(what + ": expected an array of rows");
  std::vector<BitVec> rows;
  for (std::size_t r = 0; r < j.size(); ++r) rows.push_back(bits_from_json(j[r], ambient, what + " row " + std::to_string(r)));
  return Subspace::span(ambient, rows);
}

Json phase_to_json(const Phase& p) {
  Json out;
  out["dim"] = p.dim;
  out["labels"] = p.labels;
  out["unit"] = to_json(p.unit);
  Json mul = Json::array();
  for (std::size_t i = 0; i < p.dim; ++i) {
    for (std::size_t j = 0; j < p.dim; ++j) {
      if (p.product(i, j).any()) mul.push_back(Json::array({i, j, to_json(p.product(i, j))}));
    }
  }
  out["mul"] = mul;
  Json layers = Json::array();
  for (const auto& f : p.filtration) layers.push_back(to_json(f));
  out["filtration"] = layers;
  if (p.witness_island) out["witness_island"] = to_json(*p.witness_island);
  if (p.augmentation) out["augmentation"] = to_json(*p.augmentation);
  return out;
}

Phase phase_from_json(const Json& j) {
  const std::string what = "phase";
  if (!j.is_object()) throw InvalidInput("phase: expected a JSON object");
  Phase p;
  p.dim = count_from_json(field(j, "dim", what), "phase.dim");
  if (p.dim == 0) throw InvalidInput("phase.dim: must be positive");
  const Json& labels = field(j, "labels", what);
  if (!labels.is_array() || labels.size() != p.dim) throw InvalidInput("phase.labels: expected dim strings");
  for (const auto& l : labels) {
    if (!l.is_string()) throw InvalidInput("phase.labels: expected strings");
    p.labels.push_back(l.get<std::string>());
  }
  p.unit = bits_from_json(field(j, "unit", what), p.dim, "phase.unit");
  p.table.assign(p.dim * p.dim, BitVec(p.dim));
  const Json& mul = field(j, "mul", what);
  if (!mul.is_array()) throw InvalidInput("phase.mul: expected an array");
  long long last = -1;
  for (const auto& e : mul) {
    if (!e.is_array() || e.size() != 3) throw InvalidInput("phase.mul: entries must be [i, j, bits]");
    const std::size_t i = count_from_json(e[0], "phase.mul index");
    const std::size_t k = count_from_json(e[1], "phase.mul index");
    if (i >= p.dim || k >= p.dim) throw InvalidInput("phase.mul: index out of range");
    const long long key = static_cast<long long>(i * p.dim + k);
    if (key <= last) throw InvalidInput("phase.mul: entries must be sorted by (i, j) without repeats");
    last = key;
    p.table[i * p.dim + k] =
        bits_from_json(e[2], p.dim, "phase.mul[" + std::to_string(i) + "," + std::to_string(k) + "]");
  }
  const Json& layers = field(j, "filtration", what);
  if (!layers.is_array() || layers.empty()) throw InvalidInput("phase.filtration: expected a non-empty array of layers");
  for (std::size_t k = 0; k < layers.size(); ++k) {
    p.filtration.push_back(subspace_from_json(layers[k], p.dim, "phase.filtration[" + std::to_string(k) + "]"));
  }
  if (j.contains("witness_island")) p.witness_island = subspace_from_json(j["witness_island"], p.dim, "phase.witness_island");
  if (j.contains("augmentation")) p.augmentation = bits_from_json(j["augmentation"], p.dim, "phase.augmentation");
  return p;
}

Json rep_to_json(const FilteredRep& r) {
  Json out;
  out["phase"] = phase_to_json(*r.phase);
  out["mdim"] = r.mdim;
  Json action = Json::array();
  for (const auto& a : r.action) action.push_back(to_json(a));
  out["action"] = action;
  Json vfilt = Json::array();
  for (const auto& g : r.vfilt) vfilt.push_back(to_json(g));
  out["vfilt"] = vfilt;
  out["level"] = to_string(r.level);
  return out;
}

FilteredRep rep_from_json(const Json& j, const std::filesystem::path& base_dir) {
  const std::string what = "rep";
  if (!j.is_object()) throw InvalidInput("rep: expected a JSON object");
  FilteredRep r;
  const Json& ph = field(j, "phase", what);
  if (ph.is_string()) {
    r.phase = std::make_shared<const Phase>(read_phase_file(base_dir / ph.get<std::string>()));
  } else {
    r.phase = std::make_shared<const Phase>(phase_from_json(ph));
  }
  r.mdim = count_from_json(field(j, "mdim", what), "rep.mdim");
  const Json& action = field(j, "action", what);
  if (!action.is_array() || action.size() != r.phase->dim) {
    throw InvalidInput("rep.action: expected one matrix per phase basis element");
  }
  for (std::size_t i = 0; i < action.size(); ++i) {
    r.action.push_back(matrix_from_json(action[i], r.mdim, r.mdim, "rep.action[" + std::to_string(i) + "]"));
  }
  const Json& vfilt = field(j, "vfilt", what);
  if (!vfilt.is_array() || vfilt.empty()) throw InvalidInput("rep.vfilt: expected a non-empty array of layers");
  for (std::size_t i = 0; i < vfilt.size(); ++i) {
    r.vfilt.push_back(subspace_from_json(vfilt[i], r.mdim, "rep.vfilt[" + std::to_string(i) + "]"));
  }
  const Json& level = field(j, "level", what);
  if (level == "weak") {
    r.level = Admissibility::Weak;
  } else if (level == "terminating") {
    r.level = Admissibility::Terminating;
  } else {
    throw InvalidInput("rep.level: expected \"weak\" or \"terminating\"");
  }
  return r;
}

Json phase_map_to_json(const PhaseMap& m) {
  Json out;
  out["source"] = phase_to_json(m.source);
  out["target"] = phase_to_json(m.target);
  out["matrix"] = to_json(m.matrix);
  return out;
}

PhaseMap phase_map_from_json(const Json& j) {
  PhaseMap m;
  m.source = phase_from_json(field(j, "source", "map"));
  m.target = phase_from_json(field(j, "target", "map"));
  m.matrix = matrix_from_json(field(j, "matrix", "map"), m.target.dim, m.source.dim, "map.matrix");
  return m;
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(what + ": malformed JSON: " + e.what());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json_file(const std::filesystem::path& path) { return parse_json(read_text(path), path.string()); }

Phase read_phase_file(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return phase_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

FilteredRep read_rep_file(const std::filesystem::path& path) {
  const Json j = read_json_file(path);
  try {
    return rep_from_json(j, path.parent_path());
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

namespace {

bool scalar_array(const Json& j) {
  return j.is_array() && std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
}

// Scalars plus at most scalar arrays, such as a [i, j, bits] table entry.
bool flat_array(const Json& j) {
  return j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return !e.is_structured(); }) &&
         std::all_of(j.begin(), j.end(), [](const Json& e) { return !e.is_structured() || scalar_array(e); });
}

// Indented like dump(2), except arrays of scalars (bit rows) stay on one line.
void write_json(std::string& out, const Json& j, std::size_t indent) {
  const std::string pad(indent + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : j.items()) {
      out += pad + Json(key).dump() + ": ";
      write_json(out, value, indent + 2);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "}";
  } else if (j.is_array() && !j.empty() && !flat_array(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += pad;
      write_json(out, j[i], indent + 2);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += std::string(indent, ' ') + "]";
  } else if (j.is_array() && !j.empty()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += i ? ", " : "";
      write_json(out, j[i], indent);
    }
    out += "]";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  write_json(out, j, 0);
  return out + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
  if (!out) throw InvalidInput("failed writing " + path.string());
}

}  // namespace phasealg
