#include "phasealg/heisenberg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace phasealg {

namespace {

constexpr std::size_t kMaxPhaseDim = std::size_t{1} << 12;

void require_same_spec(const PhasePoint& a, const PhasePoint& b) {
  if (a.x.size() != b.x.size() || a.xi.size() != b.xi.size() || a.x.size() != a.xi.size()) {
    throw DimensionError("phase points have different n");
  }
  if (!a.x.empty() && a.x.front().order() != b.x.front().order()) throw DimensionError("phase points over different rings");
}

NilRingElem dot(const std::vector<NilRingElem>& a, const std::vector<NilRingElem>& b, unsigned k) {
  NilRingElem acc = NilRingElem::zero(k);
  for (std::size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

}  // namespace

std::string to_string(Cocycle c) { return c == Cocycle::Alternating ? "alternating" : "polarized"; }

Cocycle parse_cocycle(const std::string& s) {
  if (s == "alternating") return Cocycle::Alternating;
  if (s == "polarized") return Cocycle::Polarized;
  throw InvalidInput("unknown cocycle '" + s + "' (expected alternating or polarized)");
}

std::size_t HeisenbergSpec::point_count() const {
  if (n == 0 || k == 0) throw InvalidInput("heisenberg spec needs n >= 1 and k >= 1");
  const std::size_t bits = 2 * n * k;
  if (bits + 1 > 12) throw InvalidInput("heisenberg phase would exceed dimension 2^12");
  return std::size_t{1} << bits;
}

std::string HeisenbergSpec::to_string() const {
  return "heisenberg:n=" + std::to_string(n) + ",k=" + std::to_string(k) + ",cocycle=" + phasealg::to_string(cocycle);
}

HeisenbergSpec HeisenbergSpec::parse(const std::string& s) {
  const std::string prefix = "heisenberg";
  if (s.rfind(prefix, 0) != 0) throw InvalidInput("spec must start with 'heisenberg'");
  HeisenbergSpec spec;
  std::string rest = s.substr(prefix.size());
  if (rest.empty()) return spec;
  if (rest.front() != ':') throw InvalidInput("expected ':' after 'heisenberg'");
  rest.erase(0, 1);
  std::stringstream ss(rest);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("malformed spec entry '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "n") {
        spec.n = std::stoul(value);
      } else if (key == "k") {
        spec.k = static_cast<unsigned>(std::stoul(value));
      } else if (key == "cocycle") {
        spec.cocycle = parse_cocycle(value);
      } else {
        throw InvalidInput("unknown spec key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw InvalidInput("bad value for '" + key + "': '" + value + "'");
    }
  }
  (void)spec.point_count();
  return spec;
}

PhasePoint PhasePoint::from_index(const HeisenbergSpec& spec, std::size_t index) {
  const unsigned k = spec.k;
  const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
  PhasePoint w;
  for (std::size_t j = 0; j < spec.n; ++j) w.x.emplace_back(k, (index >> (j * k)) & mask);
  for (std::size_t j = 0; j < spec.n; ++j) w.xi.emplace_back(k, (index >> ((spec.n + j) * k)) & mask);
  return w;
}

std::size_t PhasePoint::index() const {
  if (x.empty()) return 0;
  const unsigned k = x.front().order();
  const std::size_t n = x.size();
  std::size_t idx = 0;
  for (std::size_t j = 0; j < n; ++j) {
    idx |= static_cast<std::size_t>(x[j].coeffs()) << (j * k);
    idx |= static_cast<std::size_t>(xi[j].coeffs()) << ((n + j) * k);
  }
  return idx;
}

PhasePoint PhasePoint::scaled(const NilRingElem& r) const {
  PhasePoint w = *this;
  for (auto& c : w.x) c = r * c;
  for (auto& c : w.xi) c = r * c;
  return w;
}

PhasePoint operator+(const PhasePoint& a, const PhasePoint& b) {
  require_same_spec(a, b);
  PhasePoint w = a;
  for (std::size_t j = 0; j < a.x.size(); ++j) {
    w.x[j] = a.x[j] + b.x[j];
    w.xi[j] = a.xi[j] + b.xi[j];
  }
  return w;
}

NilRingElem omega(const PhasePoint& w, const PhasePoint& w2) {
  require_same_spec(w, w2);
  const unsigned k = w.x.empty() ? 1 : w.x.front().order();
  // Characteristic 2: the difference is a sum.
  return dot(w.xi, w2.x, k) + dot(w2.xi, w.x, k);
}

bool capital_omega(const PhasePoint& w, const PhasePoint& w2) { return frobenius_lambda(omega(w, w2)); }

bool cocycle_value(Cocycle cocycle, const PhasePoint& w, const PhasePoint& w2) {
  if (cocycle == Cocycle::Alternating) return capital_omega(w, w2);
  require_same_spec(w, w2);
  const unsigned k = w.x.empty() ? 1 : w.x.front().order();
  return frobenius_lambda(dot(w.xi, w2.x, k));
}

std::string heisenberg_label(bool z, const PhasePoint& w) {
  auto join = [](const std::vector<NilRingElem>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += v[i].to_string();
    }
    return s;
  };
  return std::string(z ? "Z*" : "") + "D(" + join(w.x) + ";" + join(w.xi) + ")";
}

Phase heisenberg_algebra(const HeisenbergSpec& spec) {
  const std::size_t points = spec.point_count();
  const std::size_t dim = 2 * points;
  if (dim > kMaxPhaseDim) throw InvalidInput("heisenberg phase would exceed dimension 2^12");
  std::vector<PhasePoint> w;
  w.reserve(points);
  for (std::size_t i = 0; i < points; ++i) w.push_back(PhasePoint::from_index(spec, i));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t i = 0; i < points; ++i) labels.push_back(heisenberg_label(a == 1, w[i]));
  }
  std::vector<BitVec> table(dim * dim);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t i = 0; i < points; ++i) {
      for (std::size_t b = 0; b < 2; ++b) {
        for (std::size_t j = 0; j < points; ++j) {
          const std::size_t z = a ^ b ^ (cocycle_value(spec.cocycle, w[i], w[j]) ? 1U : 0U);
          table[(a * points + i) * dim + (b * points + j)] = BitVec::unit(dim, z * points + (i ^ j));
        }
      }
    }
  }
  return make_algebra(std::move(labels), BitVec::unit(dim, 0), std::move(table));
}

std::vector<std::string> boundary_subgroup_labels(const HeisenbergSpec& spec) {
  const std::size_t points = spec.point_count();
  const NilRingElem u = NilRingElem::u(spec.k);
  std::set<std::size_t> indices;
  for (std::size_t i = 0; i < points; ++i) indices.insert(PhasePoint::from_index(spec, i).scaled(u).index());
  std::vector<std::string> labels;
  for (auto idx : indices) labels.push_back(heisenberg_label(false, PhasePoint::from_index(spec, idx)));
  return labels;
}

Phase heisenberg_phase(const HeisenbergSpec& spec) {
  return induce_phase(heisenberg_algebra(spec), GroupSubsetHint{boundary_subgroup_labels(spec)});
}

FlagshipSuite flagship_suite(std::size_t n, std::size_t b_dim, std::uint64_t budget) {
  if (n == 0 || b_dim == 0) throw InvalidInput("flagship suite needs n >= 1 and b_dim >= 1");
  FlagshipSuite s;
  s.n = n;
  s.b_dim = b_dim;
  s.r_strong = heisenberg_phase({n, 1, Cocycle::Alternating});
  s.p_weak = heisenberg_phase({n, 2, Cocycle::Alternating});
  s.p_ext = square_zero_extend(s.p_weak, b_dim);
  s.r_ext = square_zero_extend(s.r_strong, b_dim);
  for (const Phase* p : {&s.r_strong, &s.p_weak, &s.p_ext, &s.r_ext}) {
    const ValidationReport report = validate_phase(*p);
    if (!report.ok()) throw InvalidInput("flagship phase failed validation: " + report.first_failure()->detail);
  }
  const IsoSearchResult iso = iso_search(boundary_quotient(s.p_weak).quotient, s.r_strong, budget);
  s.quotient_iso_verdict = iso.verdict;
  s.quotient_iso = iso.map;
  return s;
}

}  // namespace phasealg
