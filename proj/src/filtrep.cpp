#include "phasealg/filtrep.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "partial_hom.hpp"

namespace phasealg {

std::string to_string(Admissibility a) { return a == Admissibility::Weak ? "weak" : "terminating"; }

GF2Matrix FilteredRep::act(const BitVec& x) const {
  if (x.size() != action.size()) throw DimensionError("element length does not match the phase");
  GF2Matrix out(mdim, mdim);
  x.for_each_set([&](std::size_t i) { out += action[i]; });
  return out;
}

Subspace FilteredRep::layer(std::size_t i) const {
  if (i < vfilt.size()) return vfilt[i];
  return Subspace(mdim);
}

std::size_t FilteredRep::length() const {
  for (std::size_t i = 0; i < vfilt.size(); ++i) {
    if (vfilt[i].is_zero()) return i;
  }
  return vfilt.size();
}

std::vector<Subspace> trivial_module_filtration(std::size_t mdim) {
  return {Subspace::full(mdim), Subspace(mdim)};
}

namespace {

std::vector<Subspace> trim_chain(std::vector<Subspace> chain) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    if (chain[i].is_zero()) {
      chain.resize(i + 1);
      break;
    }
  }
  return chain;
}

std::string pos(std::size_t i) { return std::to_string(i); }

}  // namespace

ValidationReport rep_validate(const FilteredRep& r) {
  ValidationReport report;
  Check shape{"structure", true, ""};
  if (!r.phase) {
    shape = {"structure", false, "representation has no phase"};
  } else if (r.action.size() != r.phase->dim) {
    shape = {"structure", false, "one action matrix per phase basis element is required"};
  } else if (r.vfilt.empty()) {
    shape = {"structure", false, "module filtration has no layers"};
  } else {
    for (std::size_t i = 0; i < r.action.size() && shape.passed; ++i) {
      if (r.action[i].rows() != r.mdim || r.action[i].cols() != r.mdim) {
        shape = {"structure", false, "action matrix " + pos(i) + " is not mdim x mdim"};
      }
    }
    for (std::size_t i = 0; i < r.vfilt.size() && shape.passed; ++i) {
      if (r.vfilt[i].ambient() != r.mdim) shape = {"structure", false, "layer G[" + pos(i) + "] has wrong ambient"};
    }
  }
  report.checks.push_back(shape);
  if (!shape.passed) return report;
  const Phase& p = *r.phase;

  Check unital{"unital", r.act(p.unit).is_identity() || r.mdim == 0, ""};
  if (!unital.passed) unital.detail = "the unit does not act as the identity";
  report.checks.push_back(unital);

  Check hom{"homomorphism", true, ""};
  for (std::size_t i = 0; i < p.dim && hom.passed; ++i) {
    for (std::size_t j = 0; j < p.dim; ++j) {
      if (r.action[i] * r.action[j] != r.act(p.product(i, j))) {
        hom.passed = false;
        hom.detail = "action(" + p.labels[i] + ")*action(" + p.labels[j] + ") != action(" + p.labels[i] + "*" +
                     p.labels[j] + ")";
        break;
      }
    }
  }
  report.checks.push_back(hom);

  Check chain{"module_filtration", true, ""};
  if (!r.vfilt.front().is_full()) {
    chain = {"module_filtration", false, "G[0] is not the whole module"};
  } else if (!r.vfilt.back().is_zero()) {
    chain = {"module_filtration", false, "last layer is not zero"};
  } else {
    for (std::size_t i = 0; i + 1 < r.vfilt.size(); ++i) {
      if (!r.vfilt[i].contains(r.vfilt[i + 1])) {
        chain = {"module_filtration", false, "G[" + pos(i + 1) + "] is not inside G[" + pos(i) + "]"};
        break;
      }
    }
  }
  report.checks.push_back(chain);

  Check compat{"compatibility", true, ""};
  const std::size_t depth = boundary_depth(p);
  for (std::size_t k = 0; k <= depth && compat.passed; ++k) {
    const Subspace f = p.layer(k);
    for (const auto& x : f.basis()) {
      const GF2Matrix op = r.act(x);
      for (std::size_t i = 0; i < r.vfilt.size(); ++i) {
        const Subspace target = r.layer(i + k);
        const bool ok = std::all_of(r.vfilt[i].basis().begin(), r.vfilt[i].basis().end(),
                                    [&](const BitVec& v) { return target.contains(op.apply(v)); });
        if (!ok) {
          compat.passed = false;
          compat.detail = "degree-" + pos(k) + " element " + x.to_string() + " maps G[" + pos(i) +
                          "] outside G[" + pos(i + k) + "]";
          break;
        }
      }
      if (!compat.passed) break;
    }
  }
  report.checks.push_back(compat);

  if (r.level == Admissibility::Terminating) {
    Check term{"t_admissible", true, ""};
    const Subspace boundary = p.layer(1);
    for (const auto& x : boundary.basis()) {
      if (!r.act(x).is_zero()) {
        term.passed = false;
        std::string name = x.to_string();
        if (x.count() == 1) name = p.labels[x.first()];
        term.detail = "boundary generator " + name + " acts nonzero";
        break;
      }
    }
    report.checks.push_back(term);
  }
  return report;
}

FilteredRep regular_rep(const PhasePtr& p) {
  const QuotientResult q = boundary_quotient(*p);
  FilteredRep r;
  r.phase = p;
  r.mdim = q.quotient.dim;
  r.level = Admissibility::Terminating;
  r.vfilt = trivial_module_filtration(r.mdim);
  r.action.reserve(p->dim);
  for (std::size_t i = 0; i < p->dim; ++i) {
    r.action.push_back(q.quotient.left_multiplication(q.projection(p->basis_element(i))));
  }
  return r;
}

FilteredRep restrict_rep(const FilteredRep& r, const PhaseMap& m) {
  if (m.target.dim != r.phase->dim || m.matrix.cols() != m.source.dim) {
    throw DimensionError("restrict_rep: map target does not match the representation's phase");
  }
  FilteredRep out;
  out.phase = std::make_shared<const Phase>(m.source);
  out.mdim = r.mdim;
  out.vfilt = r.vfilt;
  out.level = r.level;
  for (std::size_t i = 0; i < m.source.dim; ++i) out.action.push_back(r.act(m.matrix.column(i)));
  return out;
}

PhiResult phi_assemble(const PhasePtr& p, const std::vector<FilteredRep>& reps) {
  std::size_t rows = 0;
  for (const auto& r : reps) {
    if (r.phase != p && !(r.phase && *r.phase == *p)) throw InvalidInput("representation over a different phase");
    rows += r.mdim * r.mdim;
  }
  GF2Matrix m(rows, p->dim);
  std::size_t offset = 0;
  for (const auto& r : reps) {
    for (std::size_t j = 0; j < p->dim; ++j) {
      r.action[j].flatten().for_each_set([&](std::size_t e) { m.set(offset + e, j); });
    }
    offset += r.mdim * r.mdim;
  }
  PhiResult out{PhiMap{p, reps, m}, Subspace::span(p->dim, null_space(m))};
  const bool terminating = std::all_of(reps.begin(), reps.end(),
                                       [](const FilteredRep& r) { return r.level == Admissibility::Terminating; });
  if (terminating && !out.kernel.contains(p->layer(1))) {
    throw InvalidInput("kernel of the evaluation map misses part of F[1]; a representation is not terminating");
  }
  return out;
}

namespace {

/// Blockwise product of stacked flattened operators.
BitVec stacked_product(const std::vector<FilteredRep>& reps, const BitVec& a, const BitVec& b) {
  BitVec out(a.size());
  std::size_t offset = 0;
  for (const auto& r : reps) {
    const std::size_t len = r.mdim * r.mdim;
    const GF2Matrix prod =
        GF2Matrix::from_flat(r.mdim, r.mdim, a.slice(offset, len)) * GF2Matrix::from_flat(r.mdim, r.mdim, b.slice(offset, len));
    prod.flatten().for_each_set([&](std::size_t e) { out.set(offset + e); });
    offset += len;
  }
  return out;
}

BitVec stacked_identity(const std::vector<FilteredRep>& reps, std::size_t total) {
  BitVec out(total);
  std::size_t offset = 0;
  for (const auto& r : reps) {
    for (std::size_t i = 0; i < r.mdim; ++i) out.set(offset + i * r.mdim + i);
    offset += r.mdim * r.mdim;
  }
  return out;
}

}  // namespace

ImageResult image_algebra(const PhiMap& phi) {
  const Phase& p = *phi.phase;
  const std::size_t total = phi.matrix.rows();
  std::vector<BitVec> columns;
  for (std::size_t j = 0; j < p.dim; ++j) columns.push_back(phi.matrix.column(j));
  const Subspace span = Subspace::span(total, columns);
  const auto& basis = span.basis();
  const std::size_t m = basis.size();

  Phase img;
  img.dim = m;
  for (std::size_t a = 0; a < m; ++a) img.labels.push_back("op" + std::to_string(a));
  const BitVec identity = stacked_identity(phi.reps, total);
  if (!span.contains(identity)) throw InvalidInput("image of the evaluation map does not contain the identity");
  img.unit = span.coordinates(identity);
  img.table.reserve(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const BitVec prod = stacked_product(phi.reps, basis[a], basis[b]);
      if (!span.contains(prod)) throw InvalidInput("operator products leave the image span; Φ is not a homomorphism");
      img.table.push_back(span.coordinates(prod));
    }
  }
  img.filtration = {Subspace::full(m), Subspace(m)};

  const QuotientResult q = boundary_quotient(p);
  const std::vector<std::size_t> keep = p.layer(1).non_pivots();
  std::vector<BitVec> cols;
  for (auto c : keep) cols.push_back(span.coordinates(columns[c]));
  PhaseMap from_quotient{q.quotient, img, GF2Matrix::from_columns(m, cols)};
  Certificate cert = iso_certify(from_quotient);
  return {std::move(img), std::move(from_quotient), std::move(cert)};
}

namespace {

struct MatrixTarget {
  static constexpr bool injective = false;
  std::size_t mdim;
  BitVec multiply(const BitVec& a, const BitVec& b) const {
    return (GF2Matrix::from_flat(mdim, mdim, a) * GF2Matrix::from_flat(mdim, mdim, b)).flatten();
  }
};

class RepEnumerator {
 public:
  RepEnumerator(const PhasePtr& p, std::size_t mdim, std::uint64_t budget)
      : p_(p), q_(boundary_quotient(*p)), mdim_(mdim), budget_(budget), target_{mdim} {
    gens_ = algebra_generators(q_.quotient);
    const std::size_t bits = mdim * mdim;
    bound_ = 1;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      const std::uint64_t per = std::uint64_t{1} << bits;
      bound_ = bound_ > UINT64_MAX / per ? UINT64_MAX : bound_ * per;
    }
  }

  std::vector<FilteredRep> run() {
    detail::PartialHom<MatrixTarget> start{&q_.quotient, &target_, {}, Subspace(mdim_ * mdim_), {}};
    if (!start.add(q_.quotient.unit, GF2Matrix::identity(mdim_).flatten())) return {};
    dfs(start, 0);
    return std::move(out_);
  }

 private:
  void emit(const detail::PartialHom<MatrixTarget>& state) {
    const Phase& q = q_.quotient;
    std::vector<GF2Matrix> on_quotient;
    for (std::size_t c = 0; c < q.dim; ++c) {
      on_quotient.push_back(GF2Matrix::from_flat(mdim_, mdim_, state.basis.map(q.basis_element(c), mdim_ * mdim_)));
    }
    FilteredRep r;
    r.phase = p_;
    r.mdim = mdim_;
    r.level = Admissibility::Terminating;
    r.vfilt = trivial_module_filtration(mdim_);
    for (std::size_t i = 0; i < p_->dim; ++i) {
      GF2Matrix a(mdim_, mdim_);
      q_.projection(p_->basis_element(i)).for_each_set([&](std::size_t c) { a += on_quotient[c]; });
      r.action.push_back(std::move(a));
    }
    out_.push_back(std::move(r));
  }

  void dfs(const detail::PartialHom<MatrixTarget>& state, std::size_t g) {
    if (state.dim() == q_.quotient.dim) {
      emit(state);
      return;
    }
    if (g == gens_.size()) return;
    const std::uint64_t candidates = std::uint64_t{1} << (mdim_ * mdim_);
    for (std::uint64_t c = 0; c < candidates; ++c) {
      if (++steps_ > budget_) throw BudgetExceeded("enumerate_reps: candidate budget exceeded", bound_);
      detail::PartialHom<MatrixTarget> next = state;
      if (!next.add(gens_[g], BitVec::from_integer(mdim_ * mdim_, c))) continue;
      dfs(next, g + 1);
    }
  }

  PhasePtr p_;
  QuotientResult q_;
  std::size_t mdim_;
  std::uint64_t budget_;
  MatrixTarget target_;
  std::vector<PhaseElem> gens_;
  std::uint64_t bound_ = 1;
  std::uint64_t steps_ = 0;
  std::vector<FilteredRep> out_;
};

}  // namespace

std::vector<FilteredRep> enumerate_reps(const PhasePtr& p, std::size_t mdim, std::uint64_t budget) {
  if (mdim == 0 || mdim > 3) throw InvalidInput("enumerate_reps supports module dimensions 1..3");
  return RepEnumerator(p, mdim, budget).run();
}

// ---------------------------------------------------------------------------

std::vector<Subspace> subrep_lattice(const FilteredRep& r, std::uint64_t budget) {
  const std::size_t m = r.mdim;
  if (m > 16) throw BudgetExceeded("subrep_lattice: module dimension too large", std::uint64_t{1} << 16);
  std::vector<GF2Matrix> ops;
  for (const auto& a : r.action) {
    if (!a.is_zero() && !a.is_identity() && std::find(ops.begin(), ops.end(), a) == ops.end()) ops.push_back(a);
  }
  auto cyclic = [&](const BitVec& v) {
    Subspace s(m);
    std::vector<BitVec> queue{v};
    s.insert(v);
    while (!queue.empty()) {
      const BitVec w = std::move(queue.back());
      queue.pop_back();
      for (const auto& op : ops) {
        BitVec img = op.apply(w);
        if (s.insert(img)) queue.push_back(std::move(img));
      }
    }
    return s;
  };
  std::set<Subspace> cyclics;
  for (std::uint64_t c = 1; c < (std::uint64_t{1} << m); ++c) cyclics.insert(cyclic(BitVec::from_integer(m, c)));

  std::set<Subspace> lattice{Subspace(m)};
  std::vector<Subspace> queue{Subspace(m)};
  while (!queue.empty()) {
    const Subspace s = std::move(queue.back());
    queue.pop_back();
    for (const auto& c : cyclics) {
      Subspace t = s + c;
      if (lattice.insert(t).second) {
        if (lattice.size() > budget) throw BudgetExceeded("subrep_lattice: lattice budget exceeded", budget);
        queue.push_back(std::move(t));
      }
    }
  }
  return {lattice.begin(), lattice.end()};
}

FilteredRep subrep(const FilteredRep& r, const Subspace& s) {
  if (s.ambient() != r.mdim) throw DimensionError("subrep: ambient mismatch");
  FilteredRep out;
  out.phase = r.phase;
  out.mdim = s.dim();
  out.level = r.level;
  for (const auto& a : r.action) {
    std::vector<BitVec> cols;
    for (const auto& v : s.basis()) {
      const BitVec img = a.apply(v);
      if (!s.contains(img)) throw InvalidInput("subspace is not invariant under the action");
      cols.push_back(s.coordinates(img));
    }
    out.action.push_back(GF2Matrix::from_columns(out.mdim, cols));
  }
  for (const auto& g : r.vfilt) {
    std::vector<BitVec> coords;
    const Subspace meet = intersect(g, s);
    for (const auto& v : meet.basis()) coords.push_back(s.coordinates(v));
    out.vfilt.push_back(Subspace::span(out.mdim, coords));
  }
  out.vfilt = trim_chain(std::move(out.vfilt));
  return out;
}

FilteredRep quotient_rep(const FilteredRep& r, const Subspace& s) {
  if (s.ambient() != r.mdim) throw DimensionError("quotient_rep: ambient mismatch");
  const std::vector<std::size_t> keep = s.non_pivots();
  auto project = [&](const BitVec& v) {
    const BitVec red = s.reduce(v);
    BitVec out(keep.size());
    for (std::size_t a = 0; a < keep.size(); ++a) out.set(a, red.test(keep[a]));
    return out;
  };
  FilteredRep out;
  out.phase = r.phase;
  out.mdim = keep.size();
  out.level = r.level;
  for (const auto& a : r.action) {
    std::vector<BitVec> cols;
    for (auto c : keep) {
      const BitVec img = a.apply(BitVec::unit(r.mdim, c));
      cols.push_back(project(img));
    }
    out.action.push_back(GF2Matrix::from_columns(out.mdim, cols));
  }
  for (const auto& g : r.vfilt) {
    std::vector<BitVec> imgs;
    for (const auto& v : g.basis()) imgs.push_back(project(v));
    out.vfilt.push_back(Subspace::span(out.mdim, imgs));
  }
  out.vfilt = trim_chain(std::move(out.vfilt));
  return out;
}

bool separates_modulo_boundary(const PhasePtr& p, const std::vector<FilteredRep>& reps, BitVec* witness) {
  const PhiResult phi = phi_assemble(p, reps);
  const Subspace boundary = p->layer(1);
  if (phi.kernel == boundary) return true;
  if (witness) {
    for (const auto& v : phi.kernel.basis()) {
      if (!boundary.contains(v)) {
        *witness = v;
        break;
      }
    }
  }
  return false;
}

TestingObjectResult testing_object_search(const PhasePtr& p, std::uint64_t budget) {
  TestingObjectResult out;
  out.rep = regular_rep(p);
  out.path.push_back("regular representation (dim " + std::to_string(out.rep.mdim) + ")");
  while (true) {
    std::vector<Subspace> lattice;
    try {
      lattice = subrep_lattice(out.rep, budget);
    } catch (const BudgetExceeded&) {
      out.certificate.complete = false;
      return out;
    }
    const std::size_t m = out.rep.mdim;
    std::optional<FilteredRep> best;
    std::string best_step;
    for (const auto& s : lattice) {
      if (s.is_zero() || s.is_full()) continue;
      for (bool sub : {true, false}) {
        FilteredRep cand = sub ? subrep(out.rep, s) : quotient_rep(out.rep, s);
        if (best && cand.mdim >= best->mdim) continue;
        if (separates_modulo_boundary(p, {cand})) {
          best_step = std::string(sub ? "subrepresentation" : "quotient") + " of dim " + std::to_string(cand.mdim);
          best = std::move(cand);
        }
      }
    }
    if (best) {
      out.rep = std::move(*best);
      out.path.push_back(best_step);
      continue;
    }
    // Minimal: certify every maximal proper subrepresentation fails to separate.
    out.certificate.maximal_subreps.clear();
    for (const auto& s : lattice) {
      if (s.dim() == m) continue;
      const bool maximal = std::none_of(lattice.begin(), lattice.end(), [&](const Subspace& t) {
        return t.dim() > s.dim() && t.dim() < m && t.contains(s);
      });
      if (!maximal) continue;
      BitVec witness(p->dim);
      if (separates_modulo_boundary(p, {subrep(out.rep, s)}, &witness)) {
        throw std::logic_error("testing_object_search: a maximal subrepresentation separates");
      }
      out.certificate.maximal_subreps.push_back({s, witness});
    }
    out.certificate.complete = true;
    return out;
  }
}

std::string action_key(const FilteredRep& r) {
  std::string key;
  for (const auto& a : r.action) key += a.flatten().to_string();
  return key;
}

bool restriction_bijective(const std::vector<FilteredRep>& ext_reps, const PhaseMap& inclusion,
                           const std::vector<FilteredRep>& base_reps) {
  std::vector<std::string> restricted;
  for (const auto& r : ext_reps) restricted.push_back(action_key(restrict_rep(r, inclusion)));
  std::vector<std::string> base;
  for (const auto& r : base_reps) base.push_back(action_key(r));
  std::sort(restricted.begin(), restricted.end());
  std::sort(base.begin(), base.end());
  return std::adjacent_find(restricted.begin(), restricted.end()) == restricted.end() && restricted == base;
}

}  // namespace phasealg
