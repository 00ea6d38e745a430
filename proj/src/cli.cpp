#include "phasealg/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <memory>
#include <ostream>

#include "phasealg/demo.hpp"
#include "phasealg/heisenberg.hpp"
#include "phasealg/io.hpp"
#include "phasealg/reconstruct.hpp"

namespace phasealg {

namespace {

/// A failed check or unreadable input; maps to exit status 1.
struct Rejected {
  std::string message;
};

Phase build_from_spec(const std::string& spec) {
  if (spec.rfind("heisenberg", 0) == 0) return heisenberg_phase(HeisenbergSpec::parse(spec));
  if (spec == "unit") return unit_phase();
  if (spec.rfind("cyclic:", 0) == 0) {
    std::size_t order = 0;
    try {
      order = std::stoul(spec.substr(7));
    } catch (const std::logic_error&) {
      throw InvalidInput("bad cyclic order in '" + spec + "'");
    }
    Phase g = cyclic_group_algebra(order);
    return induce_phase(g, GroupSubsetHint{g.labels});
  }
  throw InvalidInput("unknown phase spec '" + spec + "' (expected heisenberg:..., unit or cyclic:<m>)");
}

Phase load_valid_phase(const std::string& path) {
  Phase p = read_phase_file(path);
  const ValidationReport v = validate_phase(p);
  if (const Check* f = v.first_failure()) throw Rejected{path + ": " + f->name + ": " + f->detail};
  return p;
}

FilteredRep load_valid_rep(const std::string& path) {
  FilteredRep r = read_rep_file(path);
  const ValidationReport pv = validate_phase(*r.phase);
  if (const Check* f = pv.first_failure()) throw Rejected{path + ": phase " + f->name + ": " + f->detail};
  const ValidationReport v = rep_validate(r);
  if (const Check* f = v.first_failure()) throw Rejected{path + ": " + f->name + ": " + f->detail};
  return r;
}

BitVec parse_bit_string(const std::string& s, std::size_t length, const std::string& what) {
  if (s.size() != length) throw InvalidInput(what + ": expected " + std::to_string(length) + " bits");
  BitVec v(length);
  for (std::size_t i = 0; i < length; ++i) {
    if (s[i] != '0' && s[i] != '1') throw InvalidInput(what + ": expected a string of 0 and 1");
    v.set(i, s[i] == '1');
  }
  return v;
}

Json rep_body_json(const FilteredRep& r) {
  Json j = rep_to_json(r);
  j.erase("phase");
  return j;
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(const std::vector<std::string>& args) {
    CLI::App app{"Finite algebraic phases over GF(2): build, validate, compare and reconstruct.", "phasealg"};
    app.require_subcommand(1);
    app.fallthrough(false);
    configure(app);

    std::vector<std::string> storage{"phasealg"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage) argv.push_back(s.data());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out_, err_);
      return kExitUsage;
    }

    try {
      return action_();
    } catch (const Rejected& r) {
      err_ << "error: " << r.message << "\n";
      return kExitInvalid;
    } catch (const Error& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitInvalid;
    } catch (const nlohmann::json::exception& e) {
      err_ << "error: " << e.what() << "\n";
      return kExitInvalid;
    }
  }

 private:
  void emit(const Json& j) {
    const std::string text = dump(j);
    if (out_path_.empty()) {
      out_ << text;
    } else {
      write_text(out_path_, text);
      out_ << "wrote " << out_path_ << "\n";
    }
  }

  void add_out(CLI::App* cmd) { cmd->add_option("-o,--out", out_path_, "Write the result to this file instead of stdout"); }

  void configure(CLI::App& app) {
    auto* build = app.add_subcommand("build", "Build a phase: heisenberg:n=<n>,k=<k>,cocycle=<c>, unit or cyclic:<m>");
    build->add_option("spec", spec_, "Phase spec")->required();
    build->add_option("--extend", b_dim_, "Square-zero extend the result by this many dimensions")->check(CLI::PositiveNumber);
    add_out(build);
    build->callback([this] { action_ = [this] { return cmd_build(); }; });

    auto* validate = app.add_subcommand("validate", "Validate a phase or representation file");
    validate->add_option("file", file_a_, "Phase or rep file")->required();
    validate->callback([this] { action_ = [this] { return cmd_validate(); }; });

    auto* inv = app.add_subcommand("invariants", "Dimensions, layer dimensions, depth and dichotomy verdict");
    inv->add_option("file", file_a_, "Phase file")->required();
    inv->callback([this] { action_ = [this] { return cmd_invariants(); }; });

    auto* quotient = app.add_subcommand("quotient", "Boundary quotient A/F[1]");
    quotient->add_option("file", file_a_, "Phase file")->required();
    add_out(quotient);
    quotient->callback([this] { action_ = [this] { return cmd_quotient(); }; });

    auto* extend = app.add_subcommand("extend", "Square-zero extension by a central ideal B");
    extend->add_option("file", file_a_, "Phase file")->required();
    extend->add_option("--bdim", b_dim_, "Dimension of B")->required()->check(CLI::PositiveNumber);
    extend->add_option("--augmentation", augmentation_, "Augmentation as a 0/1 string over the basis");
    add_out(extend);
    extend->callback([this] { action_ = [this] { return cmd_extend(); }; });

    auto* rep = app.add_subcommand("rep", "Representations");
    rep->require_subcommand(1);
    auto* regular = rep->add_subcommand("regular", "Regular representation of the boundary quotient");
    regular->add_option("file", file_a_, "Phase file")->required();
    add_out(regular);
    regular->callback([this] { action_ = [this] { return cmd_rep_regular(); }; });
    auto* enumerate = rep->add_subcommand("enumerate", "All terminating representations up to a module dimension");
    enumerate->add_option("file", file_a_, "Phase file")->required();
    enumerate->add_option("--maxdim", maxdim_, "Largest module dimension (1..3)")->required()->check(CLI::Range(1, 3));
    enumerate->add_option("--budget", budget_, "Candidate budget per dimension");
    add_out(enumerate);
    enumerate->callback([this] { action_ = [this] { return cmd_rep_enumerate(); }; });

    auto* recon = app.add_subcommand("reconstruct", "Rebuild a phase from representation files");
    recon->add_option("--reps", rep_files_, "Rep files")->required()->expected(1, -1);
    add_out(recon);
    recon->callback([this] { action_ = [this] { return cmd_reconstruct(); }; });

    auto* testing = app.add_subcommand("testing-object", "Search for a minimal separating representation");
    testing->add_option("file", file_a_, "Phase file")->required();
    testing->add_option("--budget", budget_, "Subrepresentation lattice budget");
    add_out(testing);
    testing->callback([this] { action_ = [this] { return cmd_testing_object(); }; });

    auto* iso = app.add_subcommand("iso", "Decide or certify an isomorphism A -> B");
    iso->add_option("a", file_a_, "Phase file A")->required();
    iso->add_option("b", file_b_, "Phase file B")->required();
    iso->add_option("--witness", witness_, "Map file to certify instead of searching");
    iso->add_option("--budget", budget_, "Search step budget");
    add_out(iso);
    iso->callback([this] { action_ = [this] { return cmd_iso(); }; });

    auto* demo = app.add_subcommand("demo", "End-to-end demonstrations");
    demo->require_subcommand(1);
    auto* flagship = demo->add_subcommand("flagship", "Run the full pipeline on the flagship phases");
    flagship->add_option("--n", n_, "Rank n of V = R^n")->check(CLI::PositiveNumber);
    flagship->add_option("--bdim", b_dim_, "Dimension of the adjoined ideal B")->check(CLI::PositiveNumber);
    flagship->add_option("--maxdim", maxdim_, "Largest module dimension for representation counts")
        ->check(CLI::Range(1, 3));
    flagship->add_option("--budget", budget_, "Override every search budget");
    flagship->add_option("-o,--out", out_path_, "Write the full report here; the summary goes to stdout");
    flagship->callback([this] { action_ = [this] { return cmd_demo(); }; });
  }

  int cmd_build() {
    Phase p = build_from_spec(spec_);
    if (b_dim_ > 0) p = square_zero_extend(p, b_dim_);
    emit(phase_to_json(p));
    return kExitOk;
  }

  int cmd_validate() {
    const Json j = read_json_file(file_a_);
    Json out;
    out["schema_version"] = kSchemaVersion;
    ValidationReport report;
    if (j.is_object() && j.contains("action")) {
      const FilteredRep r = rep_from_json(j, std::filesystem::path(file_a_).parent_path());
      out["kind"] = "rep";
      const ValidationReport pv = validate_phase(*r.phase);
      report = pv.ok() ? rep_validate(r) : pv;
    } else {
      out["kind"] = "phase";
      report = validate_phase(phase_from_json(j));
    }
    out["report"] = to_json(report);
    out_ << dump(out);
    if (const Check* f = report.first_failure()) {
      err_ << "validation failed: " << f->name << ": " << f->detail << "\n";
      return kExitInvalid;
    }
    return kExitOk;
  }

  int cmd_invariants() {
    const Phase p = load_valid_phase(file_a_);
    const PhaseInvariants inv = phase_invariants(p);
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["dim"] = p.dim;
    out["layer_dimensions"] = layer_dimensions(p);
    out["boundary_depth"] = boundary_depth(p);
    out["dichotomy"] = to_string(dichotomy_classify(p));
    out["commutative"] = inv.commutative;
    out["center_dim"] = inv.center_dim;
    if (inv.square_zero_count) out["square_zero_count"] = *inv.square_zero_count;
    const ObstructionObject ob = obstruction_object(p);
    out["obstruction"] = {{"layer", ob.layer}, {"dim", ob.dim}};
    emit(out);
    return kExitOk;
  }

  int cmd_quotient() {
    emit(phase_to_json(boundary_quotient(load_valid_phase(file_a_)).quotient));
    return kExitOk;
  }

  int cmd_extend() {
    const Phase p = load_valid_phase(file_a_);
    std::optional<BitVec> eps;
    if (!augmentation_.empty()) eps = parse_bit_string(augmentation_, p.dim, "--augmentation");
    emit(phase_to_json(square_zero_extend(p, b_dim_, eps)));
    return kExitOk;
  }

  int cmd_rep_regular() {
    const auto p = std::make_shared<const Phase>(load_valid_phase(file_a_));
    emit(rep_to_json(regular_rep(p)));
    return kExitOk;
  }

  int cmd_rep_enumerate() {
    const auto p = std::make_shared<const Phase>(load_valid_phase(file_a_));
    const std::uint64_t budget = budget_ ? *budget_ : kDefaultEnumerationBudget;
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["phase"] = phase_to_json(*p);
    Json counts = Json::object();
    Json reps = Json::array();
    for (std::size_t m = 1; m <= maxdim_; ++m) {
      const auto list = enumerate_reps(p, m, budget);
      counts[std::to_string(m)] = list.size();
      for (const auto& r : list) reps.push_back(rep_body_json(r));
    }
    out["counts"] = counts;
    out["reps"] = reps;
    emit(out);
    return kExitOk;
  }

  int cmd_reconstruct() {
    std::vector<FilteredRep> reps;
    for (const auto& f : rep_files_) reps.push_back(load_valid_rep(f));
    std::vector<RawRep> raw;
    for (const auto& r : reps) raw.push_back(raw_rep(r));
    const Reconstruction rec = reconstruct_phase(raw);
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["phase"] = phase_to_json(rec.phase);
    out["operator_layers"] = layer_dimensions(rec.operator_phase);
    const bool shared =
        std::all_of(reps.begin(), reps.end(), [&](const FilteredRep& r) { return *r.phase == *reps.front().phase; });
    int status = kExitOk;
    if (shared) {
      const RoundTrip rt = reconstruct_round_trip(reps.front().phase, reps);
      Json cert{{"ok", rt.certificate.ok}};
      if (!rt.certificate.ok) cert["failure"] = rt.certificate.failure;
      out["round_trip"] = {{"certificate", cert}, {"witness", phase_map_to_json(*rt.map)}};
      if (!rt.certificate.ok) {
        err_ << "reconstructed phase is not isomorphic to the boundary quotient: " << rt.certificate.failure << "\n";
        status = kExitInvalid;
      }
    }
    emit(out);
    return status;
  }

  int cmd_testing_object() {
    const auto p = std::make_shared<const Phase>(load_valid_phase(file_a_));
    const TestingObjectResult t = testing_object_search(p, budget_ ? *budget_ : kDefaultLatticeBudget);
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["t1"] = separates_modulo_boundary(p, {t.rep});
    Json subs = Json::array();
    for (const auto& e : t.certificate.maximal_subreps) {
      subs.push_back({{"subspace", to_json(e.subspace)}, {"witness", to_json(e.witness)}});
    }
    out["certificate"] = {{"complete", t.certificate.complete}, {"maximal_subreps", subs}};
    out["path"] = t.path;
    out["rep"] = rep_to_json(t.rep);
    if (!t.certificate.complete) err_ << "warning: minimality certificate incomplete (lattice budget)\n";
    emit(out);
    return kExitOk;
  }

  int cmd_iso() {
    const Phase a = load_valid_phase(file_a_);
    const Phase b = load_valid_phase(file_b_);
    Json out;
    out["schema_version"] = kSchemaVersion;
    if (!witness_.empty()) {
      const Json w = read_json_file(witness_);
      const Json& rows = w.is_object() && w.contains("matrix") ? w.at("matrix") : w;
      const PhaseMap m{a, b, matrix_from_json(rows, b.dim, a.dim, "witness matrix")};
      const Certificate cert = iso_certify(m);
      out["certificate"] = {{"ok", cert.ok}};
      if (!cert.ok) out["certificate"]["failure"] = cert.failure;
      emit(out);
      if (!cert.ok) {
        err_ << "witness rejected: " << cert.failure << "\n";
        return kExitInvalid;
      }
      return kExitOk;
    }
    const IsoSearchResult r = iso_search(a, b, budget_ ? *budget_ : kDefaultIsoBudget);
    out["verdict"] = to_string(r.verdict);
    out["reason"] = r.reason;
    out["steps"] = r.steps;
    if (r.map) out["witness"] = {{"matrix", to_json(r.map->matrix)}};
    emit(out);
    if (r.verdict == Verdict::Unknown) err_ << "warning: search budget exhausted, verdict unknown\n";
    return r.verdict == Verdict::No ? kExitInvalid : kExitOk;
  }

  int cmd_demo() {
    DemoBudgets budgets;
    budgets.mdim_max = maxdim_;
    if (budget_) budgets.iso = budgets.enumeration = budgets.lattice = *budget_;
    const DemoReport report = demo_flagship(n_, b_dim_ ? b_dim_ : 1, budgets);
    if (out_path_.empty()) {
      out_ << dump(report.report);
    } else {
      write_text(out_path_, dump(report.report));
      out_ << report.summary();
    }
    const std::size_t unknown = report.count(CheckStatus::Unknown);
    if (unknown > 0) err_ << "warning: " << unknown << " checks returned unknown\n";
    return report.count(CheckStatus::Fail) == 0 ? kExitOk : kExitInvalid;
  }

  std::ostream& out_;
  std::ostream& err_;
  std::function<int()> action_;
  std::string out_path_;
  std::string spec_;
  std::string file_a_;
  std::string file_b_;
  std::string witness_;
  std::string augmentation_;
  std::vector<std::string> rep_files_;
  std::size_t b_dim_ = 0;
  std::size_t n_ = 1;
  std::size_t maxdim_ = 2;
  std::optional<std::uint64_t> budget_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  return Cli(out, err).run(args);
}

}  // namespace phasealg
