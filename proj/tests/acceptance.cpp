// Acceptance suite: one pass/fail line per criterion, each under a pinned
// wall-clock limit. Usage: acceptance <path-to-phasealg-cli>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "phasealg/corpus.hpp"
#include "phasealg/filtrep.hpp"
#include "phasealg/heisenberg.hpp"
#include "phasealg/reconstruct.hpp"

using namespace phasealg;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

PhasePtr share(Phase p) { return std::make_shared<const Phase>(std::move(p)); }

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::string dims(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

std::vector<std::size_t> shuffled(std::size_t n, std::mt19937_64& g) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), g);
  return perm;
}

Outcome flagship_dimensions() {
  const Phase p = heisenberg_phase({1, 2, Cocycle::Alternating});
  const Phase r = heisenberg_phase({1, 1, Cocycle::Alternating});
  const std::size_t q = boundary_quotient(p).quotient.dim;
  std::ostringstream d;
  d << "dim " << p.dim << ", boundary " << p.layer(1).dim() << ", quotient " << q << ", strong " << r.dim;
  if (p.dim != 32 || p.layer(1).dim() != 24 || q != 8 || r.dim != 8) return fail(d.str());
  return {true, d.str()};
}

Outcome axiom_validation() {
  std::mt19937_64 g(2);
  std::size_t phases = 0;
  std::size_t caught = 0;
  std::size_t total = 0;
  for (const auto& e : builtin_corpus()) {
    const ValidationReport r = validate_phase(e.phase);
    if (!r.ok()) return fail(e.name + " fails " + r.first_failure()->name + ": " + r.first_failure()->detail);
    ++phases;
    for (int i = 0; i < 100; ++i) {
      Phase m = e.phase;
      const std::size_t cell = g() % (m.dim * m.dim);
      const std::size_t bit = g() % m.dim;
      m.table[cell].flip(bit);
      ++total;
      if (!validate_phase(m).ok()) {
        ++caught;
      } else {
        return fail(e.name + ": mutation of cell " + std::to_string(cell) + " bit " + std::to_string(bit) + " not caught");
      }
    }
  }
  return {true, std::to_string(phases) + " phases valid, " + std::to_string(caught) + "/" + std::to_string(total) +
                    " mutations caught"};
}

Outcome kernel_law() {
  const auto corpus = builtin_corpus();
  for (const auto& e : corpus) {
    const PhasePtr p = share(e.phase);
    const Subspace kernel = phi_assemble(p, {regular_rep(p)}).kernel;
    if (kernel != p->layer(1)) return fail(e.name + ": kernel differs from F[1]");
    if (e.base) {
      const PhasePtr b = share(corpus_entry(corpus, *e.base).phase);
      const std::size_t base_kernel = phi_assemble(b, {regular_rep(b)}).kernel.dim();
      if (kernel.dim() != base_kernel + e.b_dim) {
        return fail(e.name + ": kernel dim " + std::to_string(kernel.dim()) + " vs base " + std::to_string(base_kernel) +
                    " + " + std::to_string(e.b_dim));
      }
    }
  }
  return {true, std::to_string(corpus.size()) + " phases, kernel == F[1]; extensions add exactly b_dim"};
}

Outcome indistinguishability() {
  const FlagshipSuite f = flagship_suite(1, 1);
  std::ostringstream d;
  struct Pair {
    const char* name;
    const Phase& base;
    const Phase& ext;
  };
  for (const Pair& pair : {Pair{"R", f.r_strong, f.r_ext}, Pair{"P", f.p_weak, f.p_ext}}) {
    const PhasePtr b = share(pair.base);
    const PhasePtr x = share(pair.ext);
    const PhaseMap inc = extension_inclusion(*b, *x);
    d << pair.name << ":";
    for (std::size_t m = 1; m <= 2; ++m) {
      const auto rb = enumerate_reps(b, m);
      const auto rx = enumerate_reps(x, m);
      if (rb.size() != rx.size()) return fail(std::string(pair.name) + ": counts differ at mdim " + std::to_string(m));
      if (!restriction_bijective(rx, inc, rb)) return fail(std::string(pair.name) + ": restriction is not a bijection");
      d << " m" << m << "=" << rb.size();
    }
    d << "; ";
  }
  // R vs R_ext: depths 0 and 1. P vs P_ext share depth 2, so their layer vectors are compared.
  const std::size_t dr = boundary_depth(f.r_strong);
  const std::size_t dre = boundary_depth(f.r_ext);
  if (dr == dre) return fail("R and R_ext have equal depth");
  const auto lp = layer_dimensions(f.p_weak);
  const auto lpe = layer_dimensions(f.p_ext);
  if (lp == lpe) return fail("P and P_ext have equal layer dimensions");
  d << "depth R " << dr << " vs R_ext " << dre << "; layers P " << dims(lp) << " vs P_ext " << dims(lpe);
  return {true, d.str()};
}

Outcome nilpotency_cascade() {
  std::mt19937_64 g(5);
  const auto corpus = builtin_corpus();
  std::size_t reps = 0;
  std::size_t checked = 0;
  std::size_t violations = 0;
  while (reps < 500) {
    for (const auto& e : corpus) {
      if (boundary_depth(e.phase) == 0) continue;
      const PhasePtr p = share(e.phase);
      FilteredRep full;
      full.phase = p;
      full.mdim = p->dim;
      for (std::size_t i = 0; i < p->dim; ++i) full.action.push_back(p->left_multiplication(p->basis_element(i)));
      for (std::size_t k = 0; k <= boundary_depth(*p) + 1; ++k) full.vfilt.push_back(p->layer(k));
      full.level = Admissibility::Weak;
      BitVec v(p->dim);
      for (std::size_t i = 0; i < p->dim; ++i) v.set(i, (g() & 1U) != 0);
      std::vector<BitVec> gens;
      for (std::size_t i = 0; i < p->dim; ++i) gens.push_back(p->multiply(p->basis_element(i), v));
      const Subspace s = Subspace::span(p->dim, gens);
      if (s.is_zero()) continue;
      const FilteredRep r = g() % 2 == 0 ? subrep(full, s) : quotient_rep(full, s);
      if (r.mdim == 0) continue;
      if (!rep_validate(r).ok()) return fail(e.name + ": sampled representation is not weak-admissible");
      ++reps;
      const std::size_t len = r.length();
      for (std::size_t k = 1; k <= boundary_depth(*p); ++k) {
        const Subspace layer = p->layer(k);
        std::vector<BitVec> xs = layer.basis();
        for (int i = 0; i < 8; ++i) {
          BitVec c(layer.dim());
          for (std::size_t b = 0; b < layer.dim(); ++b) c.set(b, (g() & 1U) != 0);
          xs.push_back(layer.combine(c));
        }
        for (const auto& x : xs) {
          const Degree d = defect_degree(*p, x);
          if (d < 1 || d == kInfiniteDegree) continue;
          const auto dk = static_cast<std::size_t>(d);
          GF2Matrix pw = GF2Matrix::identity(r.mdim);
          const GF2Matrix a = r.act(x);
          for (std::size_t t = 0; t < (len + dk - 1) / dk; ++t) pw = pw * a;
          ++checked;
          if (!pw.is_zero()) ++violations;
        }
      }
    }
  }
  std::ostringstream d;
  d << reps << " weak reps, " << checked << " elements, " << violations << " violations";
  return {violations == 0, d.str()};
}

Outcome round_trip() {
  std::size_t strong = 0;
  const auto corpus = builtin_corpus();
  for (const auto& e : corpus) {
    const PhasePtr p = share(e.phase);
    const RoundTrip rt = reconstruct_round_trip(p, {regular_rep(p)});
    if (!rt.certificate.ok || !rt.map || !iso_certify(*rt.map).ok) return fail(e.name + ": " + rt.certificate.failure);
    if (boundary_depth(*p) == 0) {
      const IsoSearchResult back = iso_search(rt.reconstruction.phase, *p);
      if (back.verdict != Verdict::Yes || !iso_certify(*back.map).ok) return fail(e.name + ": not isomorphic to itself");
      ++strong;
    }
  }
  return {true, std::to_string(corpus.size()) + " round trips certified, " + std::to_string(strong) +
                    " strong phases recovered exactly"};
}

Outcome testing_object() {
  const PhasePtr p = share(heisenberg_phase({1, 2, Cocycle::Alternating}));
  const TestingObjectResult t = testing_object_search(p);
  if (phi_assemble(p, {t.rep}).kernel != p->layer(1)) return fail("T1: kernel of Φ_T is not F[1]");
  if (!t.certificate.complete) return fail("T2: certificate incomplete");
  // Independent pass over the lattice: every maximal proper subrep must be listed and fail T1.
  const auto lattice = subrep_lattice(t.rep);
  std::size_t maximal = 0;
  for (const auto& s : lattice) {
    if (s.dim() == t.rep.mdim) continue;
    bool is_max = true;
    for (const auto& u : lattice) is_max = is_max && !(u.dim() > s.dim() && u.dim() < t.rep.mdim && u.contains(s));
    if (!is_max) continue;
    ++maximal;
    if (separates_modulo_boundary(p, {subrep(t.rep, s)})) return fail("T2: a maximal subrepresentation separates");
    const bool listed = std::any_of(t.certificate.maximal_subreps.begin(), t.certificate.maximal_subreps.end(),
                                    [&](const auto& entry) { return entry.subspace == s; });
    if (!listed) return fail("T2: certificate misses a maximal subrepresentation");
  }
  if (maximal != t.certificate.maximal_subreps.size()) return fail("T2: certificate lists non-maximal entries");
  // Dropping T from families of smaller representations.
  std::vector<FilteredRep> smaller = enumerate_reps(p, 1);
  for (auto& r : enumerate_reps(p, 2)) smaller.push_back(std::move(r));
  std::mt19937_64 g(7);
  std::size_t families = 0;
  std::size_t before = 0;
  std::size_t after = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FilteredRep> rest;
    for (const auto& r : smaller) {
      if (trial == 0 || g() % 2 == 0) rest.push_back(r);
    }
    std::vector<FilteredRep> family{t.rep};
    family.insert(family.end(), rest.begin(), rest.end());
    const std::size_t with = phi_assemble(p, family).kernel.dim();
    const std::size_t without = rest.empty() ? p->dim : phi_assemble(p, rest).kernel.dim();
    if (with != p->layer(1).dim() || without <= with) return fail("dropping T did not enlarge the kernel");
    if (trial == 0) {
      before = with;
      after = without;
    }
    ++families;
  }
  std::ostringstream d;
  d << "T dim " << t.rep.mdim << ", " << maximal << " maximal subrep(s) certified, " << families
    << " families: kernel " << before << " -> " << after << " without T";
  return {true, d.str()};
}

Outcome dichotomy() {
  static_assert(std::variant_size_v<Dichotomy> == 2, "exactly two verdicts");
  const auto corpus = builtin_corpus();
  std::mt19937_64 g(8);
  std::vector<Phase> phases;
  for (const auto& e : corpus) phases.push_back(e.phase);
  std::size_t extensions = 0;
  while (extensions < 200) {
    const Phase& base = corpus[g() % corpus.size()].phase;
    if (base.dim > 16) continue;
    phases.push_back(square_zero_extend(base, 1 + g() % 2));
    ++extensions;
  }
  std::size_t strong = 0;
  for (const auto& p : phases) {
    const Dichotomy d = dichotomy_classify(p);
    const bool s = std::holds_alternative<Strong>(d);
    if (s != p.layer(1).is_zero() || s != obstruction_object(p).is_zero()) return fail("verdict disagrees on a phase");
    if (!s && std::get<Weak>(d).depth != boundary_depth(p)) return fail("weak depth disagrees");
    strong += s;
  }
  return {true, std::to_string(phases.size()) + " phases (" + std::to_string(extensions) + " random extensions), " +
                    std::to_string(strong) + " strong"};
}

Outcome no_hidden_structure() {
  const FlagshipSuite f = flagship_suite(1, 1);
  const HiddenStructureReport r = no_hidden_structure_check(f.p_weak, f.p_ext);
  if (r.verdict != Equivalence::Distinguished || r.distinguished_by != "layer_dimensions") {
    return fail("P vs P_ext: " + to_string(r.verdict) + " by " + r.distinguished_by);
  }
  if (r.left.rep_counts != r.right.rep_counts) return fail("P vs P_ext rep counts differ");
  std::mt19937_64 g(9);
  const Phase a = permute_basis(f.p_weak, shuffled(f.p_weak.dim, g)).target;
  const Phase b = permute_basis(f.p_weak, shuffled(f.p_weak.dim, g)).target;
  const HiddenStructureReport e = no_hidden_structure_check(a, b);
  if (e.verdict != Equivalence::Equivalent || !e.witness || !iso_certify(*e.witness).ok) {
    return fail("permuted copies: " + to_string(e.verdict));
  }
  std::ostringstream d;
  d << "P vs P_ext distinguished by layers " << dims(r.left.layer_dims) << " vs " << dims(r.right.layer_dims)
    << " with equal rep counts; permuted copies equivalent with certificate";
  return {true, d.str()};
}

struct Capture {
  int code = 0;
  std::string out;
};

Capture shell(const std::string& cmd) {
  Capture c;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return {-1, ""};
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) c.out.append(buf.data(), n);
  c.code = pclose(pipe);
  return c;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli) {
  const auto root = std::filesystem::temp_directory_path() / "phasealg_acceptance";
  std::filesystem::remove_all(root);
  std::vector<std::string> runs;
  for (const char* tag : {"a", "b"}) {
    const auto dir = root / tag;
    std::filesystem::create_directories(dir);
    const std::string d = dir.string() + "/";
    const std::vector<std::string> cmds{
        "build heisenberg:n=1,k=2 -o " + d + "p.json",
        "build heisenberg:n=1,k=1 -o " + d + "r.json",
        "build heisenberg:n=1,k=2,cocycle=polarized -o " + d + "pol.json",
        "validate " + d + "p.json",
        "invariants " + d + "p.json",
        "extend " + d + "p.json --bdim 1 -o " + d + "pe.json",
        "quotient " + d + "p.json -o " + d + "q.json",
        "rep regular " + d + "p.json -o " + d + "reg.json",
        "rep enumerate " + d + "pe.json --maxdim 2 -o " + d + "enum.json",
        "reconstruct --reps " + d + "reg.json -o " + d + "rec.json",
        "testing-object " + d + "p.json -o " + d + "t.json",
        "iso " + d + "q.json " + d + "r.json",
        "iso " + d + "p.json " + d + "pe.json",
        "demo flagship --n 1 --bdim 1 -o " + d + "demo.json",
    };
    std::string transcript;
    for (const auto& c : cmds) {
      const Capture out = shell("cd " + d + " && " + cli + " " + c);
      std::string text = out.out;
      // Paths differ between the two directories; compare relative output.
      for (std::size_t pos; (pos = text.find(d)) != std::string::npos;) text.erase(pos, d.size());
      transcript += c.substr(0, c.find(' ')) + " exit " + std::to_string(out.code) + "\n" + text;
    }
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file()) transcript += entry.path().filename().string() + "\n" + slurp(entry.path());
    }
    runs.push_back(transcript);
  }
  if (runs[0] != runs[1]) return fail("two runs differ");
  return {true, "14 invocations, stdout, exit codes and files identical across two runs (" +
                    std::to_string(runs[0].size()) + " bytes)"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <phasealg-cli>\n";
    return 2;
  }
  const std::string cli = std::filesystem::absolute(argv[1]).string();
  const std::vector<Criterion> criteria{
      {1, "flagship dimensions", 1, flagship_dimensions},
      {2, "axiom validation and mutation detection", 30, axiom_validation},
      {3, "kernel law", 10, kernel_law},
      {4, "representation indistinguishability", 300, indistinguishability},
      {5, "nilpotency cascade", 60, nilpotency_cascade},
      {6, "reconstruction round trip", 60, round_trip},
      {7, "testing object", 120, testing_object},
      {8, "dichotomy", 30, dichotomy},
      {9, "no hidden structure", 60, no_hidden_structure},
      {10, "determinism", 120, [&] { return determinism(cli); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.limit_seconds) o = fail("over time limit; " + o.detail);
    failures += !o.ok;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.limit_seconds);
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << " [" << timing << "] " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
