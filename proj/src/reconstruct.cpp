#include "phasealg/reconstruct.hpp"

#include <algorithm>
#include <memory>
#include <utility>

namespace phasealg {

std::optional<Degree> operator_defect_degree(const GF2Matrix& op, const std::vector<Subspace>& vfilt) {
  if (op.rows() != op.cols()) throw DimensionError("operator_defect_degree: operator is not square");
  if (vfilt.empty()) throw InvalidInput("operator_defect_degree: empty filtration");
  for (const auto& g : vfilt) {
    if (g.ambient() != op.rows()) throw DimensionError("operator_defect_degree: filtration ambient mismatch");
  }
  if (op.is_zero()) return kInfiniteDegree;
  auto layer = [&](std::size_t i) { return i < vfilt.size() ? vfilt[i] : Subspace(op.rows()); };
  auto shifts_by = [&](std::size_t k) {
    for (std::size_t i = 0; i < vfilt.size(); ++i) {
      const Subspace target = layer(i + k);
      for (const auto& v : vfilt[i].basis()) {
        if (!target.contains(op.apply(v))) return false;
      }
    }
    return true;
  };
  if (!shifts_by(0)) return std::nullopt;
  Degree k = 0;
  // A nonzero operator cannot shift past the chain length.
  while (k + 1 <= vfilt.size() && shifts_by(k + 1)) ++k;
  return k;
}

RawRep raw_rep(const FilteredRep& r) { return {r.action, r.vfilt}; }

namespace {

/// Direct sum of the input reps, with operators stored as stacked flattened
/// blocks.
class StackedSpace {
 public:
  explicit StackedSpace(const std::vector<RawRep>& reps) : reps_(reps) {
    for (const auto& r : reps) {
      if (r.vfilt.empty()) throw InvalidInput("reconstruct_phase: representation without a filtration");
      const std::size_t m = r.vfilt.front().ambient();
      for (const auto& g : r.vfilt) {
        if (g.ambient() != m) throw DimensionError("reconstruct_phase: filtration ambient mismatch");
      }
      for (const auto& op : r.ops) {
        if (op.rows() != m || op.cols() != m) throw DimensionError("reconstruct_phase: operator shape mismatch");
      }
      dims_.push_back(m);
      offsets_.push_back(total_);
      total_ += m * m;
      length_ = std::max(length_, r.vfilt.size());
    }
  }

  std::size_t total() const { return total_; }
  std::size_t length() const { return length_; }

  BitVec stack(std::size_t generator) const {
    BitVec out(total_);
    for (std::size_t r = 0; r < reps_.size(); ++r) place(out, r, reps_[r].ops[generator]);
    return out;
  }

  BitVec identity() const {
    BitVec out(total_);
    for (std::size_t r = 0; r < reps_.size(); ++r) place(out, r, GF2Matrix::identity(dims_[r]));
    return out;
  }

  GF2Matrix block(const BitVec& x, std::size_t r) const {
    return GF2Matrix::from_flat(dims_[r], dims_[r], x.slice(offsets_[r], dims_[r] * dims_[r]));
  }

  BitVec multiply(const BitVec& a, const BitVec& b) const {
    BitVec out(total_);
    for (std::size_t r = 0; r < reps_.size(); ++r) place(out, r, block(a, r) * block(b, r));
    return out;
  }

  /// Concatenated residues of x·G[i] modulo G[i+k]; zero exactly when x
  /// shifts the direct-sum filtration by at least k.
  BitVec residue(const BitVec& x, std::size_t k) const {
    std::vector<BitVec> parts;
    for (std::size_t r = 0; r < reps_.size(); ++r) {
      const GF2Matrix op = block(x, r);
      const auto& vf = reps_[r].vfilt;
      for (std::size_t i = 0; i < vf.size(); ++i) {
        const Subspace target = i + k < vf.size() ? vf[i + k] : Subspace(dims_[r]);
        for (const auto& v : vf[i].basis()) parts.push_back(target.reduce(op.apply(v)));
      }
    }
    BitVec out;
    for (const auto& p : parts) out = BitVec::concat(out, p);
    return out;
  }

 private:
  void place(BitVec& out, std::size_t r, const GF2Matrix& m) const {
    m.flatten().for_each_set([&](std::size_t e) { out.set(offsets_[r] + e); });
  }

  const std::vector<RawRep>& reps_;
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
  std::size_t length_ = 0;
};

/// Largest two-sided ideal of p inside s.
Subspace ideal_core(const Phase& p, Subspace s) {
  while (true) {
    const auto& basis = s.basis();
    if (basis.empty()) return s;
    // Column c of the constraint matrix collects residues of b·x_c and x_c·b.
    std::vector<BitVec> cols;
    for (const auto& x : basis) {
      BitVec col;
      for (std::size_t b = 0; b < p.dim; ++b) {
        col = BitVec::concat(col, s.reduce(p.multiply(p.basis_element(b), x)));
        col = BitVec::concat(col, s.reduce(p.multiply(x, p.basis_element(b))));
      }
      cols.push_back(std::move(col));
    }
    const GF2Matrix m = GF2Matrix::from_columns(cols.front().size(), cols);
    std::vector<BitVec> kept;
    for (const auto& c : null_space(m)) kept.push_back(s.combine(c));
    Subspace next = Subspace::span(p.dim, kept);
    if (next == s) return s;
    s = std::move(next);
  }
}

}  // namespace

Reconstruction reconstruct_phase(const std::vector<RawRep>& reps, std::uint64_t budget) {
  if (reps.empty()) throw InvalidInput("reconstruct_phase: no representations");
  const std::size_t gens = reps.front().ops.size();
  for (const auto& r : reps) {
    if (r.ops.size() != gens) throw InvalidInput("reconstruct_phase: representations disagree on generator count");
  }
  const StackedSpace space(reps);
  Reconstruction out;

  Subspace span(space.total());
  span.insert(space.identity());
  for (std::size_t g = 0; g < gens; ++g) span.insert(space.stack(g));
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<BitVec> basis = span.basis();
    for (const auto& a : basis) {
      for (const auto& b : basis) {
        if (++out.steps > budget) throw BudgetExceeded("reconstruct_phase: closure did not stabilize", budget);
        if (span.insert(space.multiply(a, b))) grew = true;
      }
    }
  }

  const auto& basis = span.basis();
  const std::size_t m = basis.size();
  Phase ops;
  ops.dim = m;
  for (std::size_t a = 0; a < m; ++a) ops.labels.push_back("op" + std::to_string(a));
  ops.unit = span.coordinates(space.identity());
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) ops.table.push_back(span.coordinates(space.multiply(basis[a], basis[b])));
  }

  for (const auto& x : basis) {
    if (space.residue(x, 0).any()) throw InvalidInput("reconstruct_phase: an operator does not preserve its filtration");
  }
  ops.filtration.push_back(Subspace::full(m));
  for (std::size_t k = 1;; ++k) {
    std::vector<BitVec> cols;
    for (const auto& x : basis) cols.push_back(space.residue(x, k));
    const GF2Matrix constraint = GF2Matrix::from_columns(cols.front().size(), cols);
    const Subspace stratum = ideal_core(ops, Subspace::span(m, null_space(constraint)));
    ops.filtration.push_back(stratum);
    if (stratum.is_zero()) break;
    if (k > space.length()) throw std::logic_error("reconstruct_phase: operator strata do not terminate");
  }

  QuotientResult q = boundary_quotient(ops);
  for (std::size_t g = 0; g < gens; ++g) out.generator_images.push_back(q.projection(span.coordinates(space.stack(g))));
  out.operator_phase = std::move(ops);
  out.phase = std::move(q.quotient);
  out.projection = std::move(q.projection);
  return out;
}

RoundTrip reconstruct_round_trip(const PhasePtr& p, const std::vector<FilteredRep>& reps, std::uint64_t budget) {
  std::vector<RawRep> raw;
  for (const auto& r : reps) {
    if (r.action.size() != p->dim) throw InvalidInput("reconstruct_round_trip: representation over a different phase");
    raw.push_back(raw_rep(r));
  }
  RoundTrip out{reconstruct_phase(raw, budget), std::nullopt, Certificate{}};
  const QuotientResult q = boundary_quotient(*p);
  const std::vector<std::size_t> keep = p->layer(1).non_pivots();
  std::vector<BitVec> cols;
  for (auto c : keep) cols.push_back(out.reconstruction.generator_images[c]);
  out.map = PhaseMap{q.quotient, out.reconstruction.phase, GF2Matrix::from_columns(out.reconstruction.phase.dim, cols)};
  out.certificate = iso_certify(*out.map);
  return out;
}

Dichotomy dichotomy_classify(const Phase& p) {
  const std::size_t depth = boundary_depth(p);
  if (depth == 0) return Strong{};
  return Weak{depth};
}

std::string to_string(const Dichotomy& d) {
  if (std::holds_alternative<Strong>(d)) return "Strong";
  return "Weak(" + std::to_string(std::get<Weak>(d).depth) + ")";
}

LocalReconstructionReport local_reconstruction_check(const Phase& p, std::uint64_t budget) {
  LocalReconstructionReport out;
  const auto pp = std::make_shared<const Phase>(p);
  out.global_kernel_dim = phi_assemble(pp, {regular_rep(pp)}).kernel.dim();
  const IslandResult island = rigidity_island(p, budget);
  out.island_method = island.method;
  if (island.status != IslandResult::Status::Found || !island.island) {
    out.island_status = "island unknown";
    out.certificate = {false, "no rigidity island within budget"};
    return out;
  }
  out.island_status = "found";
  out.island = island.island;
  out.island_dim = island.island->dim();
  const auto sub = std::make_shared<const Phase>(restrict_to_subalgebra(p, *island.island).phase);
  const FilteredRep reg = regular_rep(sub);
  out.island_kernel_dim = phi_assemble(sub, {reg}).kernel.dim();
  RoundTrip rt = reconstruct_round_trip(sub, {reg});
  out.witness = std::move(rt.map);
  out.certificate = rt.certificate;
  return out;
}

std::string to_string(Equivalence e) {
  switch (e) {
    case Equivalence::Equivalent:
      return "equivalent";
    case Equivalence::Distinguished:
      return "distinguished";
    case Equivalence::Unknown:
      break;
  }
  return "unknown";
}

namespace {

SideInvariants side_invariants(const PhasePtr& p, const HiddenStructureBudgets& budgets, Phase& image) {
  SideInvariants s;
  s.layer_dims = layer_dimensions(*p);
  for (std::size_t m = 1; m <= budgets.mdim_max; ++m) {
    try {
      s.rep_counts.push_back(enumerate_reps(p, m, budgets.enumeration).size());
    } catch (const BudgetExceeded&) {
      s.rep_counts.push_back(std::nullopt);
    }
  }
  image = image_algebra(phi_assemble(p, {regular_rep(p)}).phi).image;
  s.image_dim = image.dim;
  return s;
}

std::string join(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

}  // namespace

HiddenStructureReport no_hidden_structure_check(const Phase& p, const Phase& q, const HiddenStructureBudgets& budgets) {
  HiddenStructureReport out;
  const auto pp = std::make_shared<const Phase>(p);
  const auto qq = std::make_shared<const Phase>(q);
  Phase image_p;
  Phase image_q;
  out.left = side_invariants(pp, budgets, image_p);
  out.right = side_invariants(qq, budgets, image_q);
  out.image_iso = iso_search(image_p, image_q, budgets.iso).verdict;

  if (out.left.layer_dims != out.right.layer_dims) {
    out.verdict = Equivalence::Distinguished;
    out.distinguished_by = "layer_dimensions";
    out.detail = join(out.left.layer_dims) + " vs " + join(out.right.layer_dims);
    return out;
  }
  for (std::size_t m = 0; m < budgets.mdim_max; ++m) {
    const auto& a = out.left.rep_counts[m];
    const auto& b = out.right.rep_counts[m];
    if (a && b && *a != *b) {
      out.verdict = Equivalence::Distinguished;
      out.distinguished_by = "rep_counts";
      out.detail = "mdim " + std::to_string(m + 1) + ": " + std::to_string(*a) + " vs " + std::to_string(*b);
      return out;
    }
  }
  if (out.image_iso == Verdict::No) {
    out.verdict = Equivalence::Distinguished;
    out.distinguished_by = "image_algebra";
    out.detail = "operator images are not isomorphic";
    return out;
  }
  IsoSearchResult iso = iso_search(p, q, budgets.iso);
  if (iso.verdict == Verdict::Yes) {
    out.verdict = Equivalence::Equivalent;
    out.witness = std::move(iso.map);
  } else if (iso.verdict == Verdict::No) {
    out.verdict = Equivalence::Distinguished;
    out.distinguished_by = "iso_search";
    out.detail = iso.reason;
  } else {
    out.verdict = Equivalence::Unknown;
    out.detail = iso.reason;
  }
  return out;
}

}  // namespace phasealg
