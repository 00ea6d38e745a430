#include "phasealg/demo.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

#include "phasealg/heisenberg.hpp"
#include "phasealg/reconstruct.hpp"

namespace phasealg {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Unknown:
      break;
  }
  return "unknown";
}

std::size_t DemoReport::count(CheckStatus s) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [&](const DemoCheck& c) { return c.status == s; }));
}

std::string DemoReport::summary() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << "[" << to_string(c.status) << "] " << c.stage << "/" << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << "\n";
  }
  out << count(CheckStatus::Pass) << " passed, " << count(CheckStatus::Fail) << " failed, "
      << count(CheckStatus::Unknown) << " unknown\n";
  return out.str();
}

namespace {

template <class F>
auto run_stage(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw Error("stage '" + stage + "' failed: " + e.what());
  }
}

Json certificate_json(const Certificate& c) {
  Json j;
  j["ok"] = c.ok;
  if (!c.ok) j["failure"] = c.failure;
  return j;
}

CheckStatus from_bool(bool ok) { return ok ? CheckStatus::Pass : CheckStatus::Fail; }

std::string dims_string(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

Json matrices_json(const std::vector<GF2Matrix>& ms) {
  Json a = Json::array();
  for (const auto& m : ms) a.push_back(to_json(m));
  return a;
}

}  // namespace

DemoReport demo_flagship(std::size_t n, std::size_t b_dim, const DemoBudgets& budgets) {
  DemoReport out;
  Json& report = out.report;
  auto check = [&](const std::string& stage, const std::string& name, CheckStatus status, std::string detail) {
    out.checks.push_back({stage, name, status, std::move(detail)});
  };

  report["schema_version"] = kSchemaVersion;
  report["kind"] = "flagship_demo";
  report["parameters"] = {{"n", n},
                          {"b_dim", b_dim},
                          {"mdim_max", budgets.mdim_max},
                          {"iso_budget", budgets.iso},
                          {"enumeration_budget", budgets.enumeration},
                          {"lattice_budget", budgets.lattice}};

  // Stage: build.
  const FlagshipSuite suite = run_stage("build", [&] { return flagship_suite(n, b_dim, budgets.iso); });
  struct Named {
    std::string name;
    PhasePtr phase;
  };
  const std::vector<Named> phases = {
      {"R_strong", std::make_shared<const Phase>(suite.r_strong)},
      {"P_weak", std::make_shared<const Phase>(suite.p_weak)},
      {"P_ext", std::make_shared<const Phase>(suite.p_ext)},
      {"R_ext", std::make_shared<const Phase>(suite.r_ext)},
  };
  const PhasePtr& r = phases[0].phase;
  const PhasePtr& p = phases[1].phase;
  const PhasePtr& p_ext = phases[2].phase;
  const PhasePtr& r_ext = phases[3].phase;
  run_stage("build", [&] {
    Json j;
    for (const auto& [name, ph] : phases) {
      const ValidationReport v = validate_phase(*ph);
      j[name] = {{"dim", ph->dim},
                 {"layer_dimensions", layer_dimensions(*ph)},
                 {"boundary_depth", boundary_depth(*ph)},
                 {"validation", to_json(v)}};
      check("build", "validate " + name, from_bool(v.ok()),
            "dim " + std::to_string(ph->dim) + ", layers " + dims_string(layer_dimensions(*ph)));
    }
    report["phases"] = j;
    const PhaseMap inc = extension_inclusion(*p, *p_ext);
    const Subspace pushed = image(inc.matrix, p->layer(1));
    const bool strictly_inside = p_ext->layer(1).contains(pushed) && pushed.dim() < p_ext->layer(1).dim();
    check("build", "boundary layer of P strictly inside that of P_ext", from_bool(strictly_inside),
          std::to_string(p->layer(1).dim()) + " vs " + std::to_string(p_ext->layer(1).dim()));
    return 0;
  });

  // Stage: quotient.
  run_stage("quotient", [&] {
    const QuotientResult q = boundary_quotient(*p);
    Json j;
    j["dim"] = q.quotient.dim;
    j["iso_verdict"] = to_string(suite.quotient_iso_verdict);
    CheckStatus status = CheckStatus::Unknown;
    std::string detail = "iso search " + to_string(suite.quotient_iso_verdict);
    if (suite.quotient_iso) {
      const Certificate cert = iso_certify(*suite.quotient_iso);
      j["witness"] = phase_map_to_json(*suite.quotient_iso);
      j["certificate"] = certificate_json(cert);
      status = from_bool(cert.ok);
      detail = cert.ok ? "certified isomorphism onto R_strong" : cert.failure;
    } else if (suite.quotient_iso_verdict == Verdict::No) {
      status = CheckStatus::Fail;
    }
    report["quotient"] = j;
    check("quotient", "dim P/F[1] = dim R", from_bool(q.quotient.dim == r->dim),
          std::to_string(q.quotient.dim) + " vs " + std::to_string(r->dim));
    check("quotient", "P/F[1] isomorphic to R", status, detail);
    return 0;
  });

  // Stage: kernels.
  run_stage("kernels", [&] {
    Json j;
    std::vector<std::size_t> kdim;
    for (const auto& [name, ph] : phases) {
      const Subspace k = phi_assemble(ph, {regular_rep(ph)}).kernel;
      const bool equal = k == ph->layer(1);
      kdim.push_back(k.dim());
      j[name] = {{"kernel_dim", k.dim()}, {"boundary_dim", ph->layer(1).dim()}, {"equals_boundary", equal}};
      check("kernels", "kernel = F[1] for " + name, from_bool(equal), "dim " + std::to_string(k.dim()));
    }
    j["gap_P"] = kdim[2] - kdim[1];
    j["gap_R"] = kdim[3] - kdim[0];
    report["kernels"] = j;
    check("kernels", "kernel gap P_ext - P = b_dim", from_bool(kdim[2] - kdim[1] == b_dim),
          std::to_string(kdim[1]) + " vs " + std::to_string(kdim[2]));
    check("kernels", "kernel gap R_ext - R = b_dim", from_bool(kdim[3] - kdim[0] == b_dim),
          std::to_string(kdim[0]) + " vs " + std::to_string(kdim[3]));
    return 0;
  });

  // Stage: representations.
  run_stage("representations", [&] {
    Json j;
    Json bij;
    const std::vector<std::pair<std::size_t, std::size_t>> pairs = {{1, 2}, {0, 3}};
    for (const auto& [bi, ei] : pairs) {
      const auto& base = phases[bi];
      const auto& ext = phases[ei];
      const PhaseMap inc = extension_inclusion(*base.phase, *ext.phase);
      Json counts_b = Json::array();
      Json counts_e = Json::array();
      Json bijections = Json::array();
      for (std::size_t m = 1; m <= budgets.mdim_max; ++m) {
        const std::string label = base.name + " vs " + ext.name + " at mdim " + std::to_string(m);
        try {
          const auto reps_b = enumerate_reps(base.phase, m, budgets.enumeration);
          const auto reps_e = enumerate_reps(ext.phase, m, budgets.enumeration);
          counts_b.push_back(reps_b.size());
          counts_e.push_back(reps_e.size());
          const bool bijective = restriction_bijective(reps_e, inc, reps_b);
          bijections.push_back(bijective);
          check("representations", "equal counts " + label, from_bool(reps_b.size() == reps_e.size()),
                std::to_string(reps_b.size()) + " vs " + std::to_string(reps_e.size()));
          check("representations", "restriction bijection " + label, from_bool(bijective), "");
        } catch (const BudgetExceeded& e) {
          counts_b.push_back(nullptr);
          counts_e.push_back(nullptr);
          bijections.push_back(nullptr);
          check("representations", "equal counts " + label, CheckStatus::Unknown, e.what());
        }
      }
      j[base.name] = counts_b;
      j[ext.name] = counts_e;
      bij[base.name + "<-" + ext.name] = bijections;
    }
    report["rep_counts"] = j;
    report["restriction_bijection"] = bij;
    const bool depth_differs = boundary_depth(*r) != boundary_depth(*r_ext);
    check("representations", "boundary depths differ for R vs R_ext", from_bool(depth_differs),
          std::to_string(boundary_depth(*r)) + " vs " + std::to_string(boundary_depth(*r_ext)));
    const bool layers_differ = layer_dimensions(*p) != layer_dimensions(*p_ext);
    check("representations", "boundary layers differ for P vs P_ext", from_bool(layers_differ),
          dims_string(layer_dimensions(*p)) + " vs " + dims_string(layer_dimensions(*p_ext)));
    return 0;
  });

  // Stage: reconstruction.
  run_stage("reconstruction", [&] {
    Json j;
    for (const auto& [name, ph] : phases) {
      const RoundTrip rt = reconstruct_round_trip(ph, {regular_rep(ph)});
      j[name] = {{"dim", rt.reconstruction.phase.dim},
                 {"operator_layers", layer_dimensions(rt.reconstruction.operator_phase)},
                 {"certificate", certificate_json(rt.certificate)},
                 {"witness", phase_map_to_json(*rt.map)}};
      check("reconstruction", "round trip " + name, from_bool(rt.certificate.ok),
            rt.certificate.ok ? "certified, dim " + std::to_string(rt.reconstruction.phase.dim) : rt.certificate.failure);
    }
    report["reconstruction"] = j;
    return 0;
  });

  // Stage: testing object.
  run_stage("testing_object", [&] {
    const TestingObjectResult t = testing_object_search(p, budgets.lattice);
    Json j;
    BitVec witness(p->dim);
    const bool t1 = separates_modulo_boundary(p, {t.rep}, &witness);
    j["mdim"] = t.rep.mdim;
    j["t1"] = t1;
    j["certificate_complete"] = t.certificate.complete;
    j["path"] = t.path;
    Json subs = Json::array();
    for (const auto& e : t.certificate.maximal_subreps) {
      subs.push_back({{"subspace", to_json(e.subspace)}, {"witness", to_json(e.witness)}});
    }
    j["maximal_subreps"] = subs;
    j["action"] = matrices_json(t.rep.action);
    check("testing_object", "T1: kernel of T equals F[1]", from_bool(t1), "mdim " + std::to_string(t.rep.mdim));
    check("testing_object", "T2: minimality certificate",
          t.certificate.complete ? CheckStatus::Pass : CheckStatus::Unknown,
          t.certificate.complete ? std::to_string(t.certificate.maximal_subreps.size()) + " maximal proper subreps fail T1"
                                 : "lattice budget exhausted");

    // Removing T from T plus every smaller representation loses separation.
    std::vector<FilteredRep> family{t.rep};
    bool enumerated = true;
    try {
      for (std::size_t m = 1; m <= budgets.mdim_max && m < t.rep.mdim; ++m) {
        for (auto& rep : enumerate_reps(p, m, budgets.enumeration)) family.push_back(std::move(rep));
      }
    } catch (const BudgetExceeded&) {
      enumerated = false;
    }
    if (enumerated) {
      const Subspace full_kernel = phi_assemble(p, family).kernel;
      const std::vector<FilteredRep> reduced(family.begin() + 1, family.end());
      const Subspace reduced_kernel =
          reduced.empty() ? Subspace::full(p->dim) : phi_assemble(p, reduced).kernel;
      const bool enlarges = full_kernel == p->layer(1) && reduced_kernel.dim() > full_kernel.dim();
      j["drop_test"] = {{"family_size", family.size()},
                        {"kernel_dim_with", full_kernel.dim()},
                        {"kernel_dim_without", reduced_kernel.dim()}};
      check("testing_object", "dropping T enlarges the kernel", from_bool(enlarges),
            std::to_string(full_kernel.dim()) + " -> " + std::to_string(reduced_kernel.dim()));
    } else {
      check("testing_object", "dropping T enlarges the kernel", CheckStatus::Unknown, "enumeration budget exhausted");
    }
    report["testing_object"] = j;
    return 0;
  });

  // Stage: islands.
  run_stage("islands", [&] {
    Json j;
    for (const auto& [name, ph] : phases) {
      const LocalReconstructionReport lr = local_reconstruction_check(*ph, budgets.iso);
      Json e{{"status", lr.island_status},
             {"method", lr.island_method},
             {"island_dim", lr.island_dim},
             {"global_kernel_dim", lr.global_kernel_dim},
             {"island_kernel_dim", lr.island_kernel_dim},
             {"certificate", certificate_json(lr.certificate)}};
      if (lr.island) e["island"] = to_json(*lr.island);
      if (lr.witness) e["witness"] = phase_map_to_json(*lr.witness);
      j[name] = e;
      CheckStatus status = lr.island ? from_bool(lr.ok()) : CheckStatus::Unknown;
      check("islands", "local reconstruction " + name, status,
            lr.island ? "island dim " + std::to_string(lr.island_dim) + ", kernel " +
                            std::to_string(lr.island_kernel_dim) + " (global " +
                            std::to_string(lr.global_kernel_dim) + ")"
                      : lr.island_status);
    }
    report["islands"] = j;
    return 0;
  });

  // Stage: dichotomy.
  run_stage("dichotomy", [&] {
    Json j;
    for (const auto& [name, ph] : phases) {
      const Dichotomy d = dichotomy_classify(*ph);
      const bool strong = std::holds_alternative<Strong>(d);
      const bool agrees = strong == ph->layer(1).is_zero() && strong == obstruction_object(*ph).is_zero();
      j[name] = to_string(d);
      check("dichotomy", name + " is " + to_string(d), from_bool(agrees), "");
    }
    report["dichotomy"] = j;
    return 0;
  });

  // Stage: no hidden structure.
  run_stage("no_hidden_structure", [&] {
    HiddenStructureBudgets hb;
    hb.mdim_max = budgets.mdim_max;
    hb.enumeration = budgets.enumeration;
    hb.iso = budgets.iso;
    const HiddenStructureReport h = no_hidden_structure_check(*p, *p_ext, hb);
    auto counts = [](const SideInvariants& s) {
      Json a = Json::array();
      for (const auto& c : s.rep_counts) {
        if (c) {
          a.push_back(*c);
        } else {
          a.push_back(nullptr);
        }
      }
      return a;
    };
    report["no_hidden_structure"] = {{"verdict", to_string(h.verdict)},
                                     {"distinguished_by", h.distinguished_by},
                                     {"detail", h.detail},
                                     {"rep_counts_P", counts(h.left)},
                                     {"rep_counts_P_ext", counts(h.right)},
                                     {"image_iso", to_string(h.image_iso)}};
    check("no_hidden_structure", "P vs P_ext distinguished by boundary layers",
          from_bool(h.verdict == Equivalence::Distinguished && h.distinguished_by == "layer_dimensions"), h.detail);
    return 0;
  });

  Json checks = Json::array();
  for (const auto& c : out.checks) {
    checks.push_back({{"stage", c.stage}, {"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  }
  report["checks"] = checks;
  report["summary"] = {{"pass", out.count(CheckStatus::Pass)},
                       {"fail", out.count(CheckStatus::Fail)},
                       {"unknown", out.count(CheckStatus::Unknown)}};
  return out;
}

}  // namespace phasealg
