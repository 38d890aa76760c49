// flab: classify catalog groups, run the verification harnesses and inspect
// single groups. Exit 0 when every check passes, 1 when a check fails, 2 on
// usage, parse or I/O errors.
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "formation_lab.hpp"

using namespace formation_lab;

namespace {

struct Globals {
  std::string catalog;
  std::size_t max_order = 0;
  std::string out;
  std::string format = "jsonl";
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::vector<std::string> falsify;
};

Catalog load_catalog(const Globals& g) {
  CatalogSpec spec = g.catalog.empty() ? CatalogSpec{} : parse_catalog_spec(g.catalog);
  if (g.max_order) spec.max_order = g.max_order;
  Catalog cat = build_catalog(spec);
  for (const auto& w : cat.warnings) std::cerr << "warning: " << w << "\n";
  if (cat.entries.empty()) throw Error(ErrorKind::OutOfRange, "catalog is empty");
  return cat;
}

/// A catalog group by name, or a group file when `which` names one.
GroupPtr load_group(const Globals& g, const std::string& which) {
  if (std::filesystem::is_regular_file(which)) return parse_group_file(which);
  for (const auto& G : load_catalog(g).groups()) {
    if (G->name() == which) return G;
  }
  throw Error(ErrorKind::OutOfRange, "no catalog group named '" + which + "'");
}

/// Stamps, optionally falsifies, writes and returns the exit status.
int emit(const Globals& g, std::vector<VerdictRecord> records) {
  const std::string stamp = report_timestamp();
  for (auto& r : records) {
    r.timestamp = stamp;
    if (std::find(g.falsify.begin(), g.falsify.end(), r.check) != g.falsify.end() && r.verdict == "pass") {
      r.verdict = "fail";
      r.witness = "falsified on request";
    }
  }
  const ReportFormat fmt = parse_report_format(g.format);
  if (g.out.empty()) {
    std::cout << format_verdicts(records, fmt);
  } else {
    write_verdicts(records, g.out, fmt);
  }
  const auto fails = std::count_if(records.begin(), records.end(), [](const VerdictRecord& r) { return r.verdict == "fail"; });
  std::cerr << records.size() << " records, " << fails << " failed\n";
  return fails ? 1 : 0;
}

std::string orders(const std::vector<std::size_t>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}

int show(const GroupPtr& G) {
  std::cout << G->name() << ": order " << G->order() << "\n";
  if (G->is_trivial()) return 0;
  const ChiefSeries s = chief_series(G);
  std::cout << "chief factor orders: " << orders(s.factor_orders()) << "\n";
  for (const auto& f : s.factors) {
    std::cout << "  " << f.describe() << ", centralizer order " << f.centralizer.size() << "\n";
  }
  const Formation U = formations::supersoluble(), NA = formations::metanilpotent();
  std::cout << "center: " << center(G).size() << "\n";
  std::cout << "soluble residual: " << soluble_residual(G).size() << "\n";
  std::cout << "soluble radical: " << soluble_radical(G).size() << "\n";
  for (const auto& F : {U, NA}) {
    std::cout << F.name() << "-residual: " << residual(F, G).size() << "\n";
    std::cout << F.name() << "-hypercenter: " << f_hypercenter(G, F).size() << "\n";
  }
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::cout << "soluble: " << yn(is_soluble(G)) << ", supersoluble: " << yn(U.contains(G))
            << ", quasinilpotent: " << yn(formations::quasinilpotent().contains(G)) << "\n";
  std::cout << "c-supersoluble: " << yn(is_c_supersoluble(G)) << ", SNAC: " << yn(is_snac(G))
            << ", ca-NA: " << yn(is_ca_f(s, NA).holds) << "\n";
  return 0;
}

int factorize(const GroupPtr& G) {
  const auto facts = enumerate_mp_factorizations(G);
  for (const auto& f : facts) {
    std::cout << factorization_label(f) << (f.H_normal ? " [H normal]" : "") << (f.K_normal ? " [K normal]" : "") << "\n";
  }
  std::cerr << facts.size() << " mutually permutable factorizations\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite group formations lab"};
  app.set_version_flag("--version", engine_version());
  app.require_subcommand(1);
  Globals g;
  app.add_option("--catalog", g.catalog, "catalog spec file (default: built-in catalog)");
  app.add_option("--max-order", g.max_order, "largest catalog group order")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "report path (default: stdout)");
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"jsonl", "csv"}));
  app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "seed for randomized chief series re-checks");
  app.add_option("--falsify", g.falsify, "flip passing verdicts of this check id to fail (harness self-test)");

  auto* classify = app.add_subcommand("classify", "run the classifiers over the catalog");
  std::vector<std::string> formation_args = {"u", "na", "g"};
  classify->add_option("--formation", formation_args, "u, na, g or rank:<file> (repeatable)");

  auto* verify = app.add_subcommand("verify", "run a theorem or lemma harness over the catalog");
  std::string theorem = "a", formation = "u";
  verify->add_option("--theorem", theorem, "a, b, c, lemmas or baer")
      ->check(CLI::IsMember({"a", "b", "c", "lemmas", "baer"}));
  verify->add_option("--formation", formation, "u, na, g or rank:<file>");

  std::string which;
  auto* fact = app.add_subcommand("factorize", "list the mutually permutable factorizations of one group");
  fact->add_option("group", which, "catalog group name or group file")->required();
  auto* sh = app.add_subcommand("show", "print chief series, residuals and hypercenters of one group");
  sh->add_option("group", which, "catalog group name or group file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*classify) {
      std::vector<Formation> Fs;
      for (const auto& a : formation_args) Fs.push_back(formation_from_arg(a));
      const auto groups = load_catalog(g).groups();
      return emit(g, run_parallel(groups.size(), g.jobs,
                                  [&](std::size_t i) { return classify_records(groups[i], Fs, g.seed + i); }));
    }
    if (*verify) {
      const auto groups = load_catalog(g).groups();
      if (theorem == "baer") return emit(g, baer_records(groups));
      const TheoremKind kind = theorem_from_arg(theorem);
      const Formation F = formation_from_arg(formation);
      if (kind == TheoremKind::A && !(F.flags().soluble && F.flags().saturated)) {
        throw Error(ErrorKind::FormationNotEligible, F.name() + " is not soluble and saturated");
      }
      if ((kind == TheoremKind::B || kind == TheoremKind::C) && !(F.flags().saturated && F.flags().contains_U)) {
        throw Error(ErrorKind::FormationNotEligible, F.name() + " is not saturated or does not contain U");
      }
      return emit(g, run_parallel(groups.size(), g.jobs, [&](std::size_t i) { return verify_records(groups[i], kind, F); }));
    }
    if (*fact) return factorize(load_group(g, which));
    if (*sh) return show(load_group(g, which));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
