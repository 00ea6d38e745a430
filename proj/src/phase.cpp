#include "phasealg/phase.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>

namespace phasealg {

namespace {

Subspace embed(const Subspace& s, std::size_t ambient) {
  std::vector<BitVec> rows;
  rows.reserve(s.dim());
  for (const auto& v : s.basis()) rows.push_back(v.resized(ambient));
  return Subspace::span(ambient, rows);
}

std::vector<Subspace> trivial_filtration(std::size_t dim) { return {Subspace::full(dim), Subspace(dim)}; }

std::string bits_str(const BitVec& v) { return v.to_string(); }

}  // namespace

BitVec Phase::multiply(const BitVec& x, const BitVec& y) const {
  if (x.size() != dim || y.size() != dim) throw DimensionError("phase element length mismatch");
  BitVec out(dim);
  x.for_each_set([&](std::size_t i) { y.for_each_set([&](std::size_t j) { out ^= product(i, j); }); });
  return out;
}

Subspace Phase::layer(std::size_t k) const {
  if (k < filtration.size()) return filtration[k];
  return Subspace(dim);
}

GF2Matrix Phase::left_multiplication(const BitVec& x) const {
  std::vector<BitVec> cols;
  cols.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) cols.push_back(multiply(x, basis_element(j)));
  return GF2Matrix::from_columns(dim, cols);
}

GF2Matrix Phase::right_multiplication(const BitVec& x) const {
  std::vector<BitVec> cols;
  cols.reserve(dim);
  for (std::size_t j = 0; j < dim; ++j) cols.push_back(multiply(basis_element(j), x));
  return GF2Matrix::from_columns(dim, cols);
}

BilinearProduct Phase::product_fn() const {
  return [this](const BitVec& x, const BitVec& y) { return multiply(x, y); };
}

Phase make_algebra(std::vector<std::string> labels, BitVec unit, std::vector<BitVec> table) {
  Phase p;
  p.dim = labels.size();
  p.labels = std::move(labels);
  p.unit = std::move(unit);
  p.table = std::move(table);
  p.filtration = trivial_filtration(p.dim);
  return p;
}

Phase unit_phase() { return make_algebra({"1"}, BitVec::unit(1, 0), {BitVec::unit(1, 0)}); }

Phase cyclic_group_algebra(std::size_t order) {
  if (order == 0) throw InvalidInput("cyclic group order must be positive");
  std::vector<std::string> labels;
  std::vector<BitVec> table;
  for (std::size_t i = 0; i < order; ++i) labels.push_back("g^" + std::to_string(i));
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) table.push_back(BitVec::unit(order, (i + j) % order));
  }
  return make_algebra(std::move(labels), BitVec::unit(order, 0), std::move(table));
}

// ---------------------------------------------------------------------------

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* ValidationReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

const Check* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

Check check_structure(const Phase& p) {
  Check c{"structure", true, ""};
  auto fail = [&](std::string why) {
    c.passed = false;
    c.detail = std::move(why);
    return c;
  };
  if (p.labels.size() != p.dim) return fail("label count differs from dim");
  if (p.unit.size() != p.dim) return fail("unit length differs from dim");
  if (p.table.size() != p.dim * p.dim) return fail("structure table must have dim^2 entries");
  for (std::size_t i = 0; i < p.table.size(); ++i) {
    if (p.table[i].size() != p.dim) return fail("product (" + std::to_string(i / p.dim) + "," +
                                               std::to_string(i % p.dim) + ") has wrong length");
  }
  std::set<std::string> seen;
  for (const auto& l : p.labels) {
    if (l.empty()) return fail("empty basis label");
    if (!seen.insert(l).second) return fail("duplicate basis label '" + l + "'");
  }
  if (p.filtration.empty()) return fail("filtration has no layers");
  for (std::size_t k = 0; k < p.filtration.size(); ++k) {
    if (p.filtration[k].ambient() != p.dim) return fail("layer " + std::to_string(k) + " has wrong ambient dim");
  }
  if (p.witness_island && p.witness_island->ambient() != p.dim) return fail("witness island has wrong ambient dim");
  if (p.augmentation && p.augmentation->size() != p.dim) return fail("augmentation has wrong length");
  return c;
}

Check check_associativity(const Phase& p) {
  Check c{"associativity", true, ""};
  const std::size_t n = p.dim;
  BitVec left(n);
  BitVec right(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const BitVec& ij = p.product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        left.clear();
        right.clear();
        ij.for_each_set([&](std::size_t l) { left ^= p.product(l, k); });
        p.product(j, k).for_each_set([&](std::size_t l) { right ^= p.product(i, l); });
        if (left != right) {
          c.passed = false;
          c.detail = "(" + p.labels[i] + "*" + p.labels[j] + ")*" + p.labels[k] + " != " + p.labels[i] + "*(" +
                     p.labels[j] + "*" + p.labels[k] + ") at basis triple (" + std::to_string(i) + "," +
                     std::to_string(j) + "," + std::to_string(k) + ")";
          return c;
        }
      }
    }
  }
  return c;
}

Check check_unit(const Phase& p) {
  Check c{"unit", true, ""};
  for (std::size_t i = 0; i < p.dim; ++i) {
    const BitVec e = p.basis_element(i);
    if (p.multiply(p.unit, e) != e || p.multiply(e, p.unit) != e) {
      c.passed = false;
      c.detail = "unit is not a two-sided identity on basis element " + std::to_string(i) + " (" + p.labels[i] + ")";
      return c;
    }
  }
  return c;
}

Check check_chain(const Phase& p) {
  Check c{"filtration_chain", true, ""};
  if (!p.filtration.front().is_full()) {
    c.passed = false;
    c.detail = "F[0] is not the full space";
    return c;
  }
  for (std::size_t k = 0; k + 1 < p.filtration.size(); ++k) {
    if (!p.filtration[k].contains(p.filtration[k + 1])) {
      c.passed = false;
      c.detail = "F[" + std::to_string(k + 1) + "] is not contained in F[" + std::to_string(k) + "]";
      return c;
    }
  }
  return c;
}

Check check_termination(const Phase& p) {
  Check c{"termination", true, ""};
  if (p.filtration.size() < 2 || !p.filtration.back().is_zero()) {
    c.passed = false;
    c.detail = "last filtration layer F[" + std::to_string(p.filtration.size() - 1) + "] is not zero";
  }
  return c;
}

Check check_ideals(const Phase& p) {
  Check c{"ideal", true, ""};
  for (std::size_t k = 1; k < p.filtration.size(); ++k) {
    const Subspace& f = p.filtration[k];
    for (std::size_t b = 0; b < f.dim(); ++b) {
      for (std::size_t i = 0; i < p.dim; ++i) {
        const BitVec e = p.basis_element(i);
        const bool left_ok = f.contains(p.multiply(e, f.basis()[b]));
        const bool right_ok = f.contains(p.multiply(f.basis()[b], e));
        if (!left_ok || !right_ok) {
          c.passed = false;
          c.detail = "F[" + std::to_string(k) + "] is not a two-sided ideal: " + (left_ok ? "right" : "left") +
                     " product of basis element " + std::to_string(i) + " (" + p.labels[i] + ") with layer vector " +
                     bits_str(f.basis()[b]) + " leaves the layer";
          return c;
        }
      }
    }
  }
  return c;
}

Check check_multiplicativity(const Phase& p) {
  Check c{"multiplicativity", true, ""};
  const std::size_t top = p.filtration.size() - 1;
  for (std::size_t i = 1; i < top; ++i) {
    for (std::size_t j = 1; j < top; ++j) {
      const Subspace& target = p.filtration[std::min(i + j, top)];
      for (const auto& x : p.filtration[i].basis()) {
        for (const auto& y : p.filtration[j].basis()) {
          if (!target.contains(p.multiply(x, y))) {
            c.passed = false;
            c.detail = "F[" + std::to_string(i) + "]*F[" + std::to_string(j) + "] not inside F[" +
                       std::to_string(std::min(i + j, top)) + "]: " + bits_str(x) + " * " + bits_str(y);
            return c;
          }
        }
      }
    }
  }
  return c;
}

Check check_unit_outside(const Phase& p) {
  Check c{"unit_outside_boundary", true, ""};
  if (p.dim > 0 && p.layer(1).contains(p.unit)) {
    c.passed = false;
    c.detail = "unit lies in F[1]";
  }
  return c;
}

}  // namespace

ValidationReport validate_phase(const Phase& p) {
  ValidationReport r;
  r.checks.push_back(check_structure(p));
  if (!r.checks.back().passed) return r;
  r.checks.push_back(check_associativity(p));
  r.checks.push_back(check_unit(p));
  r.checks.push_back(check_chain(p));
  r.checks.push_back(check_termination(p));
  r.checks.push_back(check_ideals(p));
  r.checks.push_back(check_multiplicativity(p));
  r.checks.push_back(check_unit_outside(p));
  if (p.augmentation) {
    Check c{"augmentation", is_augmentation(p, *p.augmentation), ""};
    if (!c.passed) c.detail = "recorded augmentation is not a unital algebra map to GF(2)";
    r.checks.push_back(c);
  }
  if (p.witness_island) {
    Check c{"witness_island", is_rigidity_island(p, *p.witness_island), ""};
    if (!c.passed) c.detail = "recorded island is not a unital subalgebra complementing F[1]";
    r.checks.push_back(c);
  }
  return r;
}

Degree defect_degree(const Phase& p, const PhaseElem& x) {
  if (x.size() != p.dim) throw DimensionError("defect_degree: element length mismatch");
  if (x.none()) return kInfiniteDegree;
  Degree k = 0;
  while (k + 1 < p.filtration.size() && p.filtration[k + 1].contains(x)) ++k;
  return k;
}

std::size_t boundary_depth(const Phase& p) {
  std::size_t d = 0;
  for (std::size_t k = 1; k < p.filtration.size(); ++k) {
    if (!p.filtration[k].is_zero()) d = k;
  }
  return d;
}

std::vector<std::size_t> layer_dimensions(const Phase& p) {
  std::vector<std::size_t> dims;
  const std::size_t d = boundary_depth(p);
  for (std::size_t k = 0; k <= d + 1; ++k) dims.push_back(p.layer(k).dim());
  return dims;
}

bool is_two_sided_ideal(const Phase& p, const Subspace& s) {
  if (s.ambient() != p.dim) throw DimensionError("ideal ambient mismatch");
  for (const auto& v : s.basis()) {
    for (std::size_t i = 0; i < p.dim; ++i) {
      const BitVec e = p.basis_element(i);
      if (!s.contains(p.multiply(e, v)) || !s.contains(p.multiply(v, e))) return false;
    }
  }
  return true;
}

Subspace ideal_closure(const Phase& p, std::span<const BitVec> generators) {
  Subspace ideal(p.dim);
  std::vector<BitVec> queue;
  for (const auto& g : generators) {
    if (ideal.insert(g)) queue.push_back(g);
  }
  while (!queue.empty()) {
    const BitVec v = std::move(queue.back());
    queue.pop_back();
    for (std::size_t i = 0; i < p.dim; ++i) {
      const BitVec e = p.basis_element(i);
      for (BitVec w : {p.multiply(e, v), p.multiply(v, e)}) {
        if (ideal.insert(w)) queue.push_back(std::move(w));
      }
    }
  }
  return ideal;
}

Subspace subalgebra_closure(const Phase& p, std::span<const BitVec> generators) {
  Subspace sub(p.dim);
  std::vector<BitVec> spanning;
  std::vector<BitVec> queue;
  auto add = [&](const BitVec& v) {
    if (sub.insert(v)) {
      spanning.push_back(v);
      queue.push_back(v);
    }
  };
  add(p.unit);
  for (const auto& g : generators) add(g);
  while (!queue.empty()) {
    const BitVec v = std::move(queue.back());
    queue.pop_back();
    const std::size_t n = spanning.size();
    for (std::size_t i = 0; i < n; ++i) {
      const BitVec w = spanning[i];
      add(p.multiply(v, w));
      add(p.multiply(w, v));
    }
  }
  return sub;
}

Phase ideal_power_filtration(const Phase& p, const Subspace& ideal) {
  if (ideal.ambient() != p.dim) throw DimensionError("ideal_power_filtration: ambient mismatch");
  if (p.dim > 0 && ideal.contains(p.unit)) throw InvalidInput("ideal contains the unit");
  if (!is_two_sided_ideal(p, ideal)) throw InvalidInput("subspace is not a two-sided ideal");
  std::vector<Subspace> layers{Subspace::full(p.dim)};
  Subspace power = ideal;
  while (!power.is_zero()) {
    if (layers.size() > p.dim + 1) throw InvalidInput("ideal is not nilpotent");
    layers.push_back(power);
    Subspace next = subspace_mul(power, ideal, p.product_fn());
    if (next == power) throw InvalidInput("ideal is not nilpotent: power chain stabilises at dimension " +
                                          std::to_string(power.dim()));
    power = std::move(next);
  }
  layers.emplace_back(p.dim);
  Phase out = p;
  out.filtration = std::move(layers);
  if (out.witness_island && !is_rigidity_island(out, *out.witness_island)) out.witness_island.reset();
  return out;
}

// ---------------------------------------------------------------------------

PhaseMap identity_map(const Phase& p) { return {p, p, GF2Matrix::identity(p.dim)}; }

PhaseMap compose(const PhaseMap& outer, const PhaseMap& inner) {
  if (outer.source.dim != inner.target.dim) throw DimensionError("compose: dimension mismatch");
  return {inner.source, outer.target, outer.matrix * inner.matrix};
}

QuotientResult boundary_quotient(const Phase& p) {
  const Subspace boundary = p.layer(1);
  if (boundary.is_zero()) return {p, identity_map(p)};
  const std::vector<std::size_t> keep = boundary.non_pivots();
  const std::size_t q = keep.size();
  auto project = [&](const BitVec& x) {
    const BitVec r = boundary.reduce(x);
    BitVec out(q);
    for (std::size_t a = 0; a < q; ++a) out.set(a, r.test(keep[a]));
    return out;
  };
  Phase quotient;
  quotient.dim = q;
  for (auto c : keep) quotient.labels.push_back(p.labels[c]);
  quotient.unit = project(p.unit);
  quotient.table.reserve(q * q);
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) quotient.table.push_back(project(p.product(keep[a], keep[b])));
  }
  quotient.filtration = trivial_filtration(q);
  std::vector<BitVec> cols;
  cols.reserve(p.dim);
  for (std::size_t j = 0; j < p.dim; ++j) cols.push_back(project(p.basis_element(j)));
  return {quotient, PhaseMap{p, quotient, GF2Matrix::from_columns(q, cols)}};
}

bool is_augmentation(const Phase& p, const BitVec& eps) {
  if (eps.size() != p.dim) return false;
  if (!eps.dot(p.unit)) return false;
  for (std::size_t i = 0; i < p.dim; ++i) {
    for (std::size_t j = 0; j < p.dim; ++j) {
      if (eps.dot(p.product(i, j)) != (eps.test(i) && eps.test(j))) return false;
    }
  }
  return true;
}

std::optional<BitVec> find_augmentation(const Phase& p) {
  if (p.augmentation && is_augmentation(p, *p.augmentation)) return p.augmentation;
  BitVec parity = BitVec::ones(p.dim);
  if (is_augmentation(p, parity)) return parity;
  return std::nullopt;
}

Phase square_zero_extend(const Phase& p, std::size_t b_dim, const std::optional<BitVec>& augmentation) {
  if (b_dim == 0) throw InvalidInput("square_zero_extend needs b_dim >= 1");
  std::optional<BitVec> eps = augmentation;
  if (eps) {
    if (!is_augmentation(p, *eps)) throw InvalidInput("supplied augmentation is not a unital algebra map to GF(2)");
  } else {
    eps = find_augmentation(p);
    if (!eps) throw InvalidInput("phase admits no known augmentation; supply one explicitly");
  }
  const std::size_t n = p.dim + b_dim;
  Phase out;
  out.dim = n;
  out.labels = p.labels;
  std::set<std::string> used(p.labels.begin(), p.labels.end());
  for (std::size_t t = 0; t < b_dim; ++t) {
    std::string name = "B" + std::to_string(t);
    while (used.count(name) != 0) name += "'";
    used.insert(name);
    out.labels.push_back(name);
  }
  out.unit = p.unit.resized(n);
  out.table.assign(n * n, BitVec(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      BitVec& cell = out.table[i * n + j];
      if (i < p.dim && j < p.dim) {
        cell = p.product(i, j).resized(n);
      } else if (i < p.dim && j >= p.dim) {
        if (eps->test(i)) cell.set(j);
      } else if (i >= p.dim && j < p.dim) {
        if (eps->test(j)) cell.set(i);
      }
    }
  }
  std::vector<BitVec> b_vectors;
  for (std::size_t t = p.dim; t < n; ++t) b_vectors.push_back(BitVec::unit(n, t));
  const Subspace b_space = Subspace::span(n, b_vectors);
  const std::size_t depth = std::max<std::size_t>(boundary_depth(p), 1);
  out.filtration.push_back(Subspace::full(n));
  for (std::size_t k = 1; k <= depth; ++k) out.filtration.push_back(embed(p.layer(k), n) + b_space);
  out.filtration.emplace_back(n);
  if (p.layer(1).is_zero()) {
    out.witness_island = embed(Subspace::full(p.dim), n);
  } else if (const IslandResult island = rigidity_island(p); island.island) {
    out.witness_island = embed(*island.island, n);
  }
  out.augmentation = eps->resized(n);
  return out;
}

PhaseMap extension_inclusion(const Phase& base, const Phase& extension) {
  if (extension.dim < base.dim) throw DimensionError("extension smaller than base");
  GF2Matrix m(extension.dim, base.dim);
  for (std::size_t i = 0; i < base.dim; ++i) m.set(i, i);
  return {base, extension, m};
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> label_order(const Phase& p) {
  std::vector<std::size_t> order(p.dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p.labels[a] < p.labels[b]; });
  return order;
}

/// Canonical lifts of a basis of upper/lower, both already in the working
/// coordinates: RREF of the residues modulo `lower`.
Subspace layer_lifts(const Subspace& upper, const Subspace& lower) {
  Subspace lifts(upper.ambient());
  for (const auto& v : upper.basis()) lifts.insert(lower.reduce(v));
  return lifts;
}

}  // namespace

PhaseMap permute_basis(const Phase& p, const std::vector<std::size_t>& perm) {
  if (perm.size() != p.dim) throw DimensionError("permutation length mismatch");
  std::vector<bool> seen(p.dim, false);
  for (auto v : perm) {
    if (v >= p.dim || seen[v]) throw InvalidInput("not a permutation");
    seen[v] = true;
  }
  GF2Matrix m(p.dim, p.dim);
  for (std::size_t i = 0; i < p.dim; ++i) m.set(i, perm[i]);
  Phase q;
  q.dim = p.dim;
  for (std::size_t i = 0; i < p.dim; ++i) q.labels.push_back(p.labels[perm[i]]);
  q.unit = m.apply(p.unit);
  q.table.reserve(p.dim * p.dim);
  for (std::size_t i = 0; i < p.dim; ++i) {
    for (std::size_t j = 0; j < p.dim; ++j) q.table.push_back(m.apply(p.product(perm[i], perm[j])));
  }
  for (const auto& f : p.filtration) q.filtration.push_back(image(m, f));
  if (p.witness_island) q.witness_island = image(m, *p.witness_island);
  if (p.augmentation) {
    BitVec eps(p.dim);
    for (std::size_t i = 0; i < p.dim; ++i) eps.set(i, p.augmentation->test(perm[i]));
    q.augmentation = eps;
  }
  return {p, q, m};
}

std::vector<PhaseElem> canonical_generators(const Phase& p) {
  const std::vector<std::size_t> order = label_order(p);
  const PhaseMap to_sorted = permute_basis(p, order);
  const Phase& sorted = to_sorted.target;
  const GF2Matrix back = to_sorted.matrix.transpose();
  std::vector<PhaseElem> gens;
  const std::size_t d = boundary_depth(sorted);
  for (std::size_t k = 0; k <= d; ++k) {
    const Subspace lifts = layer_lifts(sorted.layer(k), sorted.layer(k + 1));
    for (const auto& v : lifts.basis()) gens.push_back(back.apply(v));
  }
  return gens;
}

std::vector<PhaseElem> algebra_generators(const Phase& p) {
  std::vector<PhaseElem> chosen;
  Subspace generated = subalgebra_closure(p, chosen);
  for (const auto& g : canonical_generators(p)) {
    if (generated.contains(g)) continue;
    chosen.push_back(g);
    generated = subalgebra_closure(p, chosen);
  }
  return chosen;
}

ObstructionObject obstruction_object(const Phase& p) {
  ObstructionObject out;
  if (p.layer(1).is_zero()) return out;
  out.layer = 1;
  const std::vector<std::size_t> order = label_order(p);
  const PhaseMap to_sorted = permute_basis(p, order);
  const Phase& sorted = to_sorted.target;
  const GF2Matrix back = to_sorted.matrix.transpose();
  const Subspace upper = sorted.layer(out.layer);
  const Subspace lower = sorted.layer(out.layer + 1);
  const Subspace lifts = layer_lifts(upper, lower);
  out.dim = lifts.dim();
  for (const auto& v : lifts.basis()) out.basis.push_back(back.apply(v));
  for (std::size_t i = 0; i < p.dim; ++i) {
    const BitVec e = to_sorted.matrix.apply(p.basis_element(i));
    std::vector<BitVec> left_cols;
    std::vector<BitVec> right_cols;
    for (const auto& v : lifts.basis()) {
      left_cols.push_back(lifts.coordinates(lower.reduce(sorted.multiply(e, v))));
      right_cols.push_back(lifts.coordinates(lower.reduce(sorted.multiply(v, e))));
    }
    out.left_action.push_back(GF2Matrix::from_columns(out.dim, left_cols));
    out.right_action.push_back(GF2Matrix::from_columns(out.dim, right_cols));
  }
  // Rigidity criterion: the obstruction vanishes exactly for strong phases.
  if (out.is_zero() != (boundary_depth(p) == 0)) throw std::logic_error("obstruction/depth mismatch");
  return out;
}

std::optional<std::vector<std::vector<std::size_t>>> group_table(const Phase& p) {
  if (p.dim == 0 || p.unit.count() != 1) return std::nullopt;
  const std::size_t e = p.unit.first();
  std::vector<std::vector<std::size_t>> table(p.dim, std::vector<std::size_t>(p.dim));
  for (std::size_t i = 0; i < p.dim; ++i) {
    bool has_inverse = false;
    for (std::size_t j = 0; j < p.dim; ++j) {
      const BitVec& prod = p.product(i, j);
      if (prod.count() != 1) return std::nullopt;
      table[i][j] = prod.first();
      has_inverse = has_inverse || table[i][j] == e;
    }
    if (!has_inverse) return std::nullopt;
  }
  return table;
}

Phase induce_phase(const Phase& algebra, const InductionHint& hint) {
  Phase base = algebra;
  base.filtration = trivial_filtration(algebra.dim);
  base.witness_island.reset();
  const ValidationReport report = validate_phase(base);
  if (!report.ok()) throw InvalidInput("induce_phase: not an associative unital algebra (" +
                                       report.first_failure()->name + ")");
  Subspace ideal(algebra.dim);
  if (const auto* group = std::get_if<GroupSubsetHint>(&hint)) {
    if (!group_table(base)) throw InvalidInput("group hint given but the basis is not a group");
    std::vector<BitVec> gens;
    for (const auto& label : group->labels) {
      const auto it = std::find(base.labels.begin(), base.labels.end(), label);
      if (it == base.labels.end()) throw InvalidInput("unknown group element label '" + label + "'");
      gens.push_back(base.basis_element(static_cast<std::size_t>(it - base.labels.begin())) ^ base.unit);
    }
    ideal = ideal_closure(base, gens);
  } else {
    ideal = std::get<IdealHint>(hint).ideal;
  }
  return ideal_power_filtration(base, ideal);
}

SubalgebraResult restrict_to_subalgebra(const Phase& p, const Subspace& s) {
  if (s.ambient() != p.dim) throw DimensionError("restrict_to_subalgebra: ambient mismatch");
  if (!s.contains(p.unit)) throw InvalidInput("subspace does not contain the unit");
  const auto& basis = s.basis();
  const std::size_t m = basis.size();
  Phase sub;
  sub.dim = m;
  for (std::size_t a = 0; a < m; ++a) {
    if (basis[a].count() == 1) {
      sub.labels.push_back(p.labels[basis[a].first()]);
    } else {
      sub.labels.push_back("[" + basis[a].to_string() + "]");
    }
  }
  sub.unit = s.coordinates(p.unit);
  sub.table.reserve(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const BitVec prod = p.multiply(basis[a], basis[b]);
      if (!s.contains(prod)) throw InvalidInput("subspace is not closed under multiplication");
      sub.table.push_back(s.coordinates(prod));
    }
  }
  sub.filtration.push_back(Subspace::full(m));
  for (std::size_t k = 1;; ++k) {
    const Subspace meet = intersect(p.layer(k), s);
    std::vector<BitVec> coords;
    for (const auto& v : meet.basis()) coords.push_back(s.coordinates(v));
    sub.filtration.push_back(Subspace::span(m, coords));
    if (meet.is_zero()) break;
  }
  if (p.augmentation) {
    BitVec eps(m);
    for (std::size_t a = 0; a < m; ++a) eps.set(a, p.augmentation->dot(basis[a]));
    sub.augmentation = eps;
  }
  return {sub, PhaseMap{sub, p, GF2Matrix::from_columns(p.dim, basis)}};
}

}  // namespace phasealg
