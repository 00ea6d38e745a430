#include <algorithm>
#include <functional>
#include <utility>

#include "phasealg/phase.hpp"
#include "partial_hom.hpp"

namespace phasealg {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

Certificate hom_certify(const PhaseMap& m) {
  const Phase& s = m.source;
  const Phase& t = m.target;
  auto fail = [](std::string why) { return Certificate{false, std::move(why)}; };
  if (m.matrix.rows() != t.dim || m.matrix.cols() != s.dim) return fail("matrix shape does not match the phases");
  if (m(s.unit) != t.unit) return fail("map is not unital");
  std::vector<BitVec> images;
  images.reserve(s.dim);
  for (std::size_t j = 0; j < s.dim; ++j) images.push_back(m.matrix.column(j));
  for (std::size_t i = 0; i < s.dim; ++i) {
    for (std::size_t j = 0; j < s.dim; ++j) {
      if (m(s.product(i, j)) != t.multiply(images[i], images[j])) {
        return fail("not multiplicative on basis pair (" + std::to_string(i) + "," + std::to_string(j) + ") = (" +
                    s.labels[i] + "," + s.labels[j] + ")");
      }
    }
  }
  const std::size_t layers = std::max(s.filtration.size(), t.filtration.size());
  for (std::size_t k = 1; k < layers; ++k) {
    if (!t.layer(k).contains(image(m.matrix, s.layer(k)))) {
      return fail("F[" + std::to_string(k) + "] of the source is not mapped into F[" + std::to_string(k) +
                  "] of the target");
    }
  }
  return {};
}

Certificate iso_certify(const PhaseMap& m) {
  if (m.source.dim != m.target.dim) return {false, "dimensions differ"};
  if (auto c = hom_certify(m); !c) return c;
  if (rank(m.matrix) != m.source.dim) return {false, "map is not bijective"};
  const std::size_t layers = std::max(m.source.filtration.size(), m.target.filtration.size());
  for (std::size_t k = 1; k < layers; ++k) {
    if (image(m.matrix, m.source.layer(k)) != m.target.layer(k)) {
      return {false, "F[" + std::to_string(k) + "] of the target is not the image of F[" + std::to_string(k) +
                         "] of the source"};
    }
  }
  return {};
}

PhaseInvariants phase_invariants(const Phase& p) {
  PhaseInvariants inv;
  inv.dim = p.dim;
  inv.layer_dims = layer_dimensions(p);
  inv.commutative = true;
  for (std::size_t i = 0; i < p.dim && inv.commutative; ++i) {
    for (std::size_t j = i + 1; j < p.dim; ++j) {
      if (p.product(i, j) != p.product(j, i)) {
        inv.commutative = false;
        break;
      }
    }
  }
  // Center = kernel of x ↦ (x·b_i − b_i·x)_i.
  std::vector<BitVec> rows;
  rows.reserve(p.dim * p.dim);
  for (std::size_t i = 0; i < p.dim; ++i) {
    const BitVec e = p.basis_element(i);
    const GF2Matrix commutator = p.left_multiplication(e) + p.right_multiplication(e);
    for (std::size_t r = 0; r < p.dim; ++r) rows.push_back(commutator.row(r));
  }
  inv.center_dim = null_space(GF2Matrix::from_rows(p.dim, std::move(rows))).size();
  if (p.dim <= 16) {
    std::uint64_t count = 0;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << p.dim); ++c) {
      const BitVec x = BitVec::from_integer(p.dim, c);
      if (p.multiply(x, x).none()) ++count;
    }
    inv.square_zero_count = count;
  }
  return inv;
}

namespace {

using detail::PartialHom;

struct PhaseTarget {
  static constexpr bool injective = true;
  const Phase* phase;
  BitVec multiply(const BitVec& a, const BitVec& b) const { return phase->multiply(a, b); }
};

class IsoSearcher {
 public:
  IsoSearcher(const Phase& p, const Phase& q, std::uint64_t budget) : p_(p), q_(q), budget_(budget), tq_{&q} {
    gens_ = algebra_generators(p);
    for (const auto& g : gens_) degrees_.push_back(defect_degree(p, g));
    layers_ = std::max(p.filtration.size(), q.filtration.size());
  }

  /// Runs one DFS pass. Returns true if a certified iso was found.
  bool run(bool monomial_only) {
    monomial_ = monomial_only;
    PartialHom<PhaseTarget> start{&p_, &tq_, {}, Subspace(q_.dim), {}};
    if (!start.add(p_.unit, q_.unit)) return false;
    return dfs(start, 0);
  }

  std::uint64_t steps() const { return steps_; }
  bool exhausted() const { return out_of_budget_; }
  bool complete() const { return complete_; }
  const std::optional<PhaseMap>& result() const { return result_; }

 private:
  bool filtration_consistent(const PartialHom<PhaseTarget>& state) const {
    const Subspace s = Subspace::span(p_.dim, state.basis.src);
    for (std::size_t k = 1; k < layers_; ++k) {
      const Subspace meet = intersect(s, p_.layer(k));
      const Subspace target_layer = q_.layer(k);
      for (const auto& v : meet.basis()) {
        if (!target_layer.contains(state.basis.map(v, q_.dim))) return false;
      }
      if (intersect(state.image_span, target_layer).dim() != meet.dim()) return false;
    }
    return true;
  }

  bool dfs(const PartialHom<PhaseTarget>& state, std::size_t g) {
    if (out_of_budget_) return false;
    if (g == gens_.size() || state.dim() == p_.dim) {
      if (state.dim() != p_.dim) return false;
      std::vector<BitVec> cols;
      for (std::size_t j = 0; j < p_.dim; ++j) cols.push_back(state.basis.map(p_.basis_element(j), q_.dim));
      PhaseMap m{p_, q_, GF2Matrix::from_columns(q_.dim, cols)};
      if (iso_certify(m)) {
        result_ = std::move(m);
        return true;
      }
      return false;
    }
    // Generator already inside the generated subalgebra: nothing to choose.
    {
      BitVec x = gens_[g];
      BitVec y(q_.dim);
      state.basis.reduce(x, y);
      if (x.none()) return dfs(state, g + 1);
    }
    const Degree k = degrees_[g];
    const Subspace upper = q_.layer(k);
    const Subspace lower = q_.layer(k + 1);
    auto try_candidate = [&](const BitVec& y) -> bool {
      if (lower.contains(y) || state.image_span.contains(y)) return false;
      if (++steps_ > budget_) {
        out_of_budget_ = true;
        return false;
      }
      PartialHom<PhaseTarget> next = state;
      if (!next.add(gens_[g], y)) return false;
      if (!filtration_consistent(next)) return false;
      return dfs(next, g + 1);
    };
    if (monomial_) {
      for (std::size_t j = 0; j < q_.dim; ++j) {
        const BitVec e = q_.basis_element(j);
        if (upper.contains(e) && try_candidate(e)) return true;
        if (out_of_budget_) return false;
      }
      return false;
    }
    if (upper.dim() >= 40) {
      complete_ = false;
      return false;
    }
    const std::uint64_t total = std::uint64_t{1} << upper.dim();
    for (std::uint64_t c = 1; c < total; ++c) {
      if (try_candidate(upper.combine(BitVec::from_integer(upper.dim(), c)))) return true;
      if (out_of_budget_) return false;
    }
    return false;
  }

  const Phase& p_;
  const Phase& q_;
  std::uint64_t budget_;
  PhaseTarget tq_;
  std::vector<PhaseElem> gens_;
  std::vector<Degree> degrees_;
  std::size_t layers_ = 0;
  bool monomial_ = false;
  bool out_of_budget_ = false;
  bool complete_ = true;
  std::uint64_t steps_ = 0;
  std::optional<PhaseMap> result_;
};

// Basis products that are single basis elements or zero, as integer tables.
constexpr int kZero = -1;

std::optional<std::vector<int>> monomial_table(const Phase& p) {
  if (p.unit.count() != 1) return std::nullopt;
  std::vector<int> t(p.dim * p.dim);
  for (std::size_t i = 0; i < p.dim * p.dim; ++i) {
    const BitVec& v = p.table[i];
    const std::size_t c = v.count();
    if (c > 1) return std::nullopt;
    t[i] = c == 0 ? kZero : static_cast<int>(v.first());
  }
  return t;
}

// Searches basis permutations that preserve a monomial table. Each step costs
// integer work only, so permuted copies of large phases resolve quickly.
class MonomialSearch {
 public:
  MonomialSearch(const Phase& p, const Phase& q, std::vector<int> tp, std::vector<int> tq, std::uint64_t budget)
      : p_(p), q_(q), n_(p.dim), tp_(std::move(tp)), tq_(std::move(tq)), budget_(budget) {
    sp_ = signatures(p_, tp_);
    sq_ = signatures(q_, tq_);
    choose_generators();
  }

  std::optional<PhaseMap> run() {
    std::vector<int> map(n_, -1);
    std::vector<int> inv(n_, -1);
    std::vector<std::size_t> mapped;
    if (sp_[p_.unit.first()] != sq_[q_.unit.first()]) return std::nullopt;
    if (!assign(p_.unit.first(), q_.unit.first(), map, inv, mapped)) return std::nullopt;
    return dfs(0, map, inv, mapped);
  }

  std::uint64_t steps() const { return steps_; }
  bool exhausted() const { return out_of_budget_; }

 private:
  using Signature = std::vector<std::size_t>;

  std::vector<Signature> signatures(const Phase& p, const std::vector<int>& t) const {
    std::vector<Signature> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      Signature& s = out[i];
      s.push_back(static_cast<std::size_t>(defect_degree(p, p.basis_element(i)) + 1));
      s.push_back(static_cast<std::size_t>(defect_degree(p, p.basis_element(i) ^ p.unit) + 1));
      // Length of the power sequence and whether it dies.
      std::size_t len = 1;
      int x = static_cast<int>(i);
      std::vector<bool> seen(n_, false);
      while (x != kZero && !seen[x]) {
        seen[x] = true;
        x = t[x * n_ + i];
        ++len;
      }
      s.push_back(len);
      s.push_back(x == kZero ? 1 : 0);
      std::size_t zero = 0;
      std::size_t central = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        zero += t[i * n_ + j] == kZero;
        central += t[i * n_ + j] == t[j * n_ + i];
      }
      s.push_back(zero);
      s.push_back(central);
    }
    return out;
  }

  void choose_generators() {
    std::vector<bool> in(n_, false);
    std::vector<std::size_t> closed{p_.unit.first()};
    in[p_.unit.first()] = true;
    auto close = [&] {
      for (std::size_t a = 0; a < closed.size(); ++a) {
        for (std::size_t b = 0; b <= a; ++b) {
          for (int c : {tp_[closed[a] * n_ + closed[b]], tp_[closed[b] * n_ + closed[a]]}) {
            if (c != kZero && !in[c]) {
              in[c] = true;
              closed.push_back(static_cast<std::size_t>(c));
            }
          }
        }
      }
    };
    // Rare signatures first, so the early levels have few candidates.
    std::vector<std::size_t> order(n_);
    for (std::size_t i = 0; i < n_; ++i) order[i] = i;
    auto freq = [&](std::size_t i) { return std::count(sp_.begin(), sp_.end(), sp_[i]); };
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return freq(a) < freq(b); });
    for (auto i : order) {
      if (in[i]) continue;
      gens_.push_back(i);
      in[i] = true;
      closed.push_back(i);
      close();
    }
  }

  // Records i ↦ j and propagates through products of mapped pairs.
  bool assign(std::size_t i, std::size_t j, std::vector<int>& map, std::vector<int>& inv,
              std::vector<std::size_t>& mapped) const {
    std::vector<std::pair<std::size_t, std::size_t>> queue{{i, j}};
    while (!queue.empty()) {
      const auto [a, b] = queue.back();
      queue.pop_back();
      if (map[a] != -1 || inv[b] != -1) {
        if (map[a] != static_cast<int>(b)) return false;
        continue;
      }
      if (sp_[a] != sq_[b]) return false;
      map[a] = static_cast<int>(b);
      inv[b] = static_cast<int>(a);
      mapped.push_back(a);
      for (auto c : mapped) {
        const std::size_t d = static_cast<std::size_t>(map[c]);
        for (const auto& [x, y] : {std::pair{a * n_ + c, b * n_ + d}, std::pair{c * n_ + a, d * n_ + b}}) {
          const int s = tp_[x];
          const int t = tq_[y];
          if ((s == kZero) != (t == kZero)) return false;
          if (s == kZero) continue;
          if (map[s] != -1 ? map[s] != t : inv[t] != -1) return false;
          if (map[s] == -1) queue.emplace_back(s, t);
        }
      }
    }
    return true;
  }

  std::optional<PhaseMap> dfs(std::size_t g, const std::vector<int>& map, const std::vector<int>& inv,
                              const std::vector<std::size_t>& mapped) {
    if (g == gens_.size()) {
      if (mapped.size() != n_) return std::nullopt;
      GF2Matrix m(n_, n_);
      for (std::size_t i = 0; i < n_; ++i) m.set(static_cast<std::size_t>(map[i]), i);
      PhaseMap candidate{p_, q_, std::move(m)};
      if (iso_certify(candidate)) return candidate;
      return std::nullopt;
    }
    const std::size_t src = gens_[g];
    if (map[src] != -1) return dfs(g + 1, map, inv, mapped);
    for (std::size_t j = 0; j < n_; ++j) {
      if (inv[j] != -1 || sq_[j] != sp_[src]) continue;
      if (++steps_ > budget_) {
        out_of_budget_ = true;
        return std::nullopt;
      }
      std::vector<int> m2 = map;
      std::vector<int> i2 = inv;
      std::vector<std::size_t> mp2 = mapped;
      if (!assign(src, j, m2, i2, mp2)) continue;
      if (auto found = dfs(g + 1, m2, i2, mp2)) return found;
      if (out_of_budget_) return std::nullopt;
    }
    return std::nullopt;
  }

  const Phase& p_;
  const Phase& q_;
  std::size_t n_;
  std::vector<int> tp_;
  std::vector<int> tq_;
  std::uint64_t budget_;
  std::vector<Signature> sp_;
  std::vector<Signature> sq_;
  std::vector<std::size_t> gens_;
  std::uint64_t steps_ = 0;
  bool out_of_budget_ = false;
};

bool same_structure(const Phase& p, const Phase& q) {
  return p.dim == q.dim && p.unit == q.unit && p.table == q.table && layer_dimensions(p) == layer_dimensions(q) &&
         [&] {
           for (std::size_t k = 0; k < std::max(p.filtration.size(), q.filtration.size()); ++k) {
             if (p.layer(k) != q.layer(k)) return false;
           }
           return true;
         }();
}

std::string describe_mismatch(const PhaseInvariants& a, const PhaseInvariants& b) {
  if (a.dim != b.dim) return "dimension";
  if (a.layer_dims != b.layer_dims) return "layer dimension vector";
  if (a.commutative != b.commutative) return "commutativity";
  if (a.center_dim != b.center_dim) return "center dimension";
  return "square-zero element count";
}

}  // namespace

IsoSearchResult iso_search(const Phase& p, const Phase& q, std::uint64_t budget) {
  IsoSearchResult out;
  if (same_structure(p, q)) {
    out.verdict = Verdict::Yes;
    out.map = PhaseMap{p, q, GF2Matrix::identity(p.dim)};
    out.reason = "identical structure constants and filtration";
    return out;
  }
  const PhaseInvariants ip = phase_invariants(p);
  const PhaseInvariants iq = phase_invariants(q);
  if (!(ip == iq)) {
    out.verdict = Verdict::No;
    out.reason = "invariant mismatch: " + describe_mismatch(ip, iq);
    return out;
  }
  std::uint64_t spent = 0;
  if (auto tp = monomial_table(p)) {
    if (auto tq = monomial_table(q)) {
      MonomialSearch fast(p, q, std::move(*tp), std::move(*tq), budget);
      auto found = fast.run();
      spent = fast.steps();
      if (found) {
        out.verdict = Verdict::Yes;
        out.map = std::move(found);
        out.reason = "monomial basis search";
        out.steps = spent;
        return out;
      }
      if (fast.exhausted()) {
        out.steps = spent;
        out.reason = "budget exhausted";
        return out;
      }
    }
  }
  IsoSearcher searcher(p, q, budget - std::min(budget, spent));
  for (bool monomial : {true, false}) {
    if (searcher.run(monomial)) {
      out.verdict = Verdict::Yes;
      out.map = searcher.result();
      out.reason = monomial ? "basis-permutation search" : "generator-image search";
      out.steps = spent + searcher.steps();
      return out;
    }
    if (searcher.exhausted()) break;
  }
  out.steps = spent + searcher.steps();
  if (searcher.exhausted()) {
    out.reason = "budget exhausted";
  } else if (!searcher.complete()) {
    out.reason = "candidate space too large to enumerate";
  } else {
    out.verdict = Verdict::No;
    out.reason = "exhaustive generator-image search found no filtered isomorphism";
  }
  return out;
}

// ---------------------------------------------------------------------------

bool is_rigidity_island(const Phase& p, const Subspace& s) {
  if (s.ambient() != p.dim || !s.contains(p.unit)) return false;
  for (const auto& x : s.basis()) {
    for (const auto& y : s.basis()) {
      if (!s.contains(p.multiply(x, y))) return false;
    }
  }
  const Subspace boundary = p.layer(1);
  return intersect(s, boundary).is_zero() && s.dim() + boundary.dim() == p.dim;
}

namespace {

class ComplementSearch {
 public:
  ComplementSearch(const Phase& p, const std::vector<std::vector<std::size_t>>& table, std::uint64_t budget)
      : p_(p), table_(table), budget_(budget) {
    const std::size_t n = p.dim;
    unit_ = p.unit.first();
    const Subspace boundary = p.layer(1);
    for (std::size_t g = 0; g < n; ++g) {
      if (boundary.contains(p.basis_element(g) ^ p.unit)) normal_.push_back(g);
    }
    coset_.assign(n, 0);
    for (std::size_t g = 0; g < n; ++g) {
      std::size_t rep = g;
      for (auto x : normal_) rep = std::min(rep, table_[g][x]);
      coset_[g] = rep;
    }
  }

  std::optional<Subspace> run() {
    if (normal_.empty() || p_.dim % normal_.size() != 0) return std::nullopt;
    target_size_ = p_.dim / normal_.size();
    return dfs({unit_}, {});
  }

  std::uint64_t steps() const { return steps_; }

 private:
  std::vector<std::size_t> close(std::vector<std::size_t> elems, const std::vector<std::size_t>& gens) const {
    std::vector<bool> in(p_.dim, false);
    for (auto e : elems) in[e] = true;
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (auto g : gens) {
        const std::size_t h = table_[elems[i]][g];
        if (!in[h]) {
          in[h] = true;
          elems.push_back(h);
          if (elems.size() > target_size_) return elems;
        }
      }
    }
    return elems;
  }

  std::optional<Subspace> dfs(const std::vector<std::size_t>& group, const std::vector<std::size_t>& gens) {
    if (group.size() == target_size_) {
      std::vector<BitVec> vecs;
      for (auto h : group) vecs.push_back(p_.basis_element(h));
      Subspace s = Subspace::span(p_.dim, vecs);
      if (is_rigidity_island(p_, s)) return s;
      return std::nullopt;
    }
    std::vector<bool> hit(p_.dim, false);
    for (auto h : group) hit[coset_[h]] = true;
    std::size_t missing = p_.dim;
    for (std::size_t g = 0; g < p_.dim; ++g) {
      if (!hit[coset_[g]]) {
        missing = coset_[g];
        break;
      }
    }
    for (std::size_t g = 0; g < p_.dim; ++g) {
      if (coset_[g] != missing) continue;
      if (++steps_ > budget_) return std::nullopt;
      std::vector<std::size_t> next_gens = gens;
      next_gens.push_back(g);
      const std::vector<std::size_t> next = close(group, next_gens);
      if (next.size() > target_size_) continue;
      std::vector<bool> seen(p_.dim, false);
      bool distinct = true;
      for (auto h : next) {
        if (seen[coset_[h]]) {
          distinct = false;
          break;
        }
        seen[coset_[h]] = true;
      }
      if (!distinct) continue;
      if (auto found = dfs(next, next_gens)) return found;
    }
    return std::nullopt;
  }

  const Phase& p_;
  const std::vector<std::vector<std::size_t>>& table_;
  std::uint64_t budget_;
  std::size_t unit_ = 0;
  std::vector<std::size_t> normal_;
  std::vector<std::size_t> coset_;
  std::size_t target_size_ = 0;
  std::uint64_t steps_ = 0;
};

}  // namespace

IslandResult rigidity_island(const Phase& p, std::uint64_t budget) {
  IslandResult out;
  const Subspace boundary = p.layer(1);
  if (boundary.is_zero()) {
    out.status = IslandResult::Status::Found;
    out.island = Subspace::full(p.dim);
    out.method = "strong phase";
    return out;
  }
  if (p.witness_island && is_rigidity_island(p, *p.witness_island)) {
    out.status = IslandResult::Status::Found;
    out.island = p.witness_island;
    out.method = "recorded witness";
    return out;
  }
  if (const auto table = group_table(p)) {
    ComplementSearch search(p, *table, budget);
    auto found = search.run();
    out.steps += search.steps();
    if (found) {
      out.status = IslandResult::Status::Found;
      out.island = std::move(found);
      out.method = "group complement";
      return out;
    }
  }
  if (p.dim <= 6) {
    const std::vector<std::size_t> keep = boundary.non_pivots();
    const std::size_t f = boundary.dim();
    const std::size_t bits = f * keep.size();
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << bits); ++c) {
      if (++out.steps > budget) break;
      std::vector<BitVec> vecs;
      for (std::size_t a = 0; a < keep.size(); ++a) {
        const BitVec coords = BitVec::from_integer(f, c >> (a * f));
        vecs.push_back(p.basis_element(keep[a]) ^ boundary.combine(coords));
      }
      Subspace s = Subspace::span(p.dim, vecs);
      if (is_rigidity_island(p, s)) {
        out.status = IslandResult::Status::Found;
        out.island = std::move(s);
        out.method = "generic complement search";
        return out;
      }
    }
  }
  out.method = "none within budget";
  return out;
}

}  // namespace phasealg
