// pgroup: build the order-p^5 groups of the catalog, tabulate their
// invariants and run the verification suite.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "pgroup/catalog.hpp"
#include "pgroup/invariants.hpp"
#include "pgroup/oracle.hpp"
#include "pgroup/report.hpp"
#include "pgroup/verify.hpp"

using namespace pgroup;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

void check_prime(int p) {
  if (!is_prime(p) || p <= 3) throw UsageError("--prime must be a prime greater than 3 (got " + std::to_string(p) + ")");
}

Params parse_params(const std::vector<std::string>& items) {
  Params out;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    try {
      std::size_t used = 0;
      int v = std::stoi(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
      out[key] = v;
    } catch (const std::logic_error&) {
      throw UsageError("--param " + key + " needs an integer value");
    }
  }
  return out;
}

std::unique_ptr<Catalog> g_override;

const Catalog& catalog(const std::string& path) {
  if (path.empty()) return Catalog::builtin();
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read catalog file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    g_override = std::make_unique<Catalog>(Catalog::parse(ss.str()));
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
  return *g_override;
}

std::string params_text(const Params& p) {
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : ", ") + k + "=" + std::to_string(v);
  return s;
}

void print_record_text(std::ostream& os, const InvariantRecord& r, bool numeric) {
  auto t = [&](const auto& x) { return numeric ? x.to_string(r.prime) : x.to_string(); };
  const StructureData& s = r.structure;
  os << "G" << r.row << " at p=" << r.prime;
  if (!r.params.empty()) os << " (" << params_text(r.params) << ")";
  os << "\n"
     << "  class             " << s.cl << "\n"
     << "  exponent          p^" << s.log_exponent << "\n"
     << "  Z(G)              " << t(s.center) << "\n"
     << "  G'                " << t(s.derived) << "\n"
     << "  G^ab              " << t(s.abelianization) << "\n"
     << "  M(G)              " << t(r.multiplier) << "\n"
     << "  nabla(G)          " << t(r.nabla) << "\n"
     << "  J2(G)             " << t(r.j2) << "\n"
     << "  G^G               " << t(r.exterior_square) << "  [" << to_string(r.wedge_source) << "]\n"
     << "  G(x)G             " << t(r.tensor_square) << "\n"
     << "  capable           " << (r.capable ? "yes" : "no") << "\n"
     << "  checks            " << r.count(Verdict::Pass) << " pass, " << r.count(Verdict::Explained) << " explained, "
     << r.count(Verdict::Fail) << " fail\n";
}

// ---------------------------------------------------------------- table

struct TableArgs {
  int prime = 5;
  std::string which = "fig1";
  std::string format = "text";
  bool numeric = false;
  std::string catalog;
};

int cmd_table(const TableArgs& a) {
  check_prime(a.prime);
  const Which which = parse_which(a.which);
  const Format format = parse_format(a.format);
  const Catalog& cat = catalog(a.catalog);
  auto records = compute_records(cat, cat.rows(), a.prime);
  std::cout << render_table(records, which, format, a.numeric, a.prime);
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  int prime = 5;
  std::string family;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string catalog;
  bool no_sweep = false;
  bool no_oracles = false;
  bool verbose = false;
  unsigned threads = 0;
};

int cmd_verify(const VerifyArgs& a) {
  check_prime(a.prime);
  const Format format = parse_format(a.format);
  if (format == Format::Csv) throw UsageError("verify supports --format text or json");
  const Catalog& cat = catalog(a.catalog);

  VerifyOptions opt;
  opt.prime = a.prime;
  opt.params = parse_params(a.params);
  if (!a.family.empty()) opt.family = a.family;
  opt.sweep_params = !a.no_sweep;
  opt.oracles = !a.no_oracles;
  opt.seed = a.seed;
  opt.threads = a.threads;
  if (opt.family) cat.complete_params(cat.resolve(*opt.family, opt.prime, opt.params), opt.prime, opt.params);

  VerifyReport rep = run_verify(cat, opt);
  if (format == Format::Json) {
    std::cout << verify_to_json(rep).dump(2) << "\n";
  } else {
    std::cout << render_verify_text(rep, a.verbose || opt.family.has_value());
    std::vector<std::string> consulted;
    for (const auto& r : rep.records)
      for (const auto& c : r.checks)
        if (c.verdict == Verdict::Explained) consulted.push_back(r.row + " " + c.name);
    for (const auto& c : rep.conflicts) consulted.push_back(c.row + " " + c.listing);
    if (!consulted.empty()) {
      std::cout << "\nerrata consulted:\n";
      for (const auto& s : consulted) std::cout << "  " << s << "\n";
    }
  }
  return rep.ok() ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------- group

struct GroupArgs {
  std::string family;
  int prime = 5;
  std::vector<std::string> params;
  std::string show = "presentation";
  std::string format = "text";
  bool numeric = false;
  std::string catalog;
};

int cmd_group(const GroupArgs& a) {
  check_prime(a.prime);
  const Format format = parse_format(a.format);
  if (format == Format::Csv) throw UsageError("group supports --format text or json");
  const Catalog& cat = catalog(a.catalog);
  const Params given = parse_params(a.params);
  const RowSpec& row = cat.resolve(a.family, a.prime, given);
  const Params params = cat.complete_params(row, a.prime, given);
  const PcPresentation pres = cat.build(row, a.prime, params);
  const int w = primitive_root(a.prime);

  if (a.show == "presentation") {
    const auto rels = pres.relations();
    if (format == Format::Json) {
      json p = json::object();
      for (const auto& [k, v] : params) p[k] = v;
      std::cout << json{{"kind", "presentation"}, {"row", row.id}, {"prime", a.prime}, {"w", w}, {"params", p}, {"relations", rels}}.dump(2)
                << "\n";
    } else {
      std::cout << "G" << row.id << " at p=" << a.prime << ", w=" << w;
      if (!params.empty()) std::cout << ", " << params_text(params);
      std::cout << "\n";
      for (const auto& r : rels) std::cout << "  " << r << "\n";
      if (rels.empty()) std::cout << "  (all relations trivial)\n";
    }
    return kExitOk;
  }
  if (a.show == "elements") {
    PcGroup g(pres);
    const auto elems = g.enumerate();
    std::map<std::uint64_t, std::size_t> census;
    for (const auto& x : elems) ++census[g.element_order(x)];
    if (format == Format::Json) {
      json c = json::object();
      for (const auto& [o, n] : census) c[std::to_string(o)] = n;
      std::cout << json{{"kind", "elements"}, {"row", row.id}, {"prime", a.prime}, {"count", elems.size()}, {"order_census", c}}.dump(2)
                << "\n";
    } else {
      std::cout << "G" << row.id << " at p=" << a.prime << ": " << elems.size() << " elements\n";
      for (const auto& [o, n] : census) std::cout << "  order " << o << ": " << n << "\n";
    }
    return kExitOk;
  }
  if (a.show == "invariants") {
    const InvariantRecord r = compute_record(cat, row, a.prime, params);
    if (format == Format::Json)
      std::cout << record_to_json(r, a.numeric).dump(2) << "\n";
    else
      print_record_text(std::cout, r, a.numeric);
    return kExitOk;
  }
  throw UsageError("--show must be presentation, elements or invariants");
}

// ---------------------------------------------------------------- errata

struct ErrataArgs {
  std::string format = "text";
  std::string family;
  std::string catalog;
};

int cmd_errata(const ErrataArgs& a) {
  const Catalog& cat = catalog(a.catalog);
  std::vector<ErratumEntry> entries;
  if (a.family.empty()) {
    entries = cat.errata();
  } else {
    std::string id = a.family;
    try {
      id = cat.resolve(a.family, 5).id;
    } catch (const std::exception&) {
    }
    entries = cat.errata_for(id);
  }
  if (a.format == "json") {
    json list = json::array();
    for (const auto& e : entries) list.push_back(erratum_to_json(e));
    std::cout << json{{"kind", "errata"}, {"entries", list}}.dump(2) << "\n";
    return kExitOk;
  }
  if (entries.empty()) std::cout << "no errata\n";
  for (const auto& e : entries) {
    std::string rows;
    for (const auto& r : e.rows) rows += (rows.empty() ? "G" : ", G") + r;
    std::string sources;
    for (const auto& s : e.sources) sources += (sources.empty() ? "" : ", ") + s;
    std::cout << rows << "  [" << sources << "]\n  " << e.description << "\n  resolution: " << e.resolution << "\n";
    if (!e.field.empty()) std::cout << "  adopted " << e.field << " = " << e.adopted << "\n";
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groups of order p^5: presentations, invariants and verification"};
  app.require_subcommand(1);
  const std::uint64_t env_seed = default_seed();

  TableArgs ta;
  auto* table = app.add_subcommand("table", "Print the invariant table for every row");
  table->add_option("--prime,-p", ta.prime, "Prime p > 3")->capture_default_str();
  table->add_option("--which", ta.which, "Table layout")->check(CLI::IsMember({"fig1", "fig2"}))->capture_default_str();
  table->add_option("--format", ta.format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}))->capture_default_str();
  table->add_flag("--numeric", ta.numeric, "Instantiate orders at p instead of symbolic Z_p notation");
  std::uint64_t table_seed = env_seed;
  table->add_option("--seed", table_seed, "Accepted for symmetry; tables are deterministic");
  table->add_option("--catalog", ta.catalog, "Read the catalog from FILE instead of the built-in one");

  VerifyArgs va;
  va.seed = env_seed;
  auto* verify = app.add_subcommand("verify", "Check computed invariants against the tables, errata and oracles");
  verify->add_option("--prime,-p", va.prime, "Prime p > 3")->capture_default_str();
  verify->add_option("--family", va.family, "Restrict to one row, e.g. 28, 11,2, 29a");
  verify->add_option("--param", va.params, "Parameter key=value (repeatable)");
  verify->add_option("--seed", va.seed, "Oracle seed (default from PGROUP_SEED)");
  verify->add_option("--format", va.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  verify->add_option("--catalog", va.catalog, "Read the catalog from FILE instead of the built-in one");
  verify->add_flag("--no-sweep", va.no_sweep, "Only default parameter values");
  verify->add_flag("--no-oracles", va.no_oracles, "Skip the oracle suite");
  verify->add_flag("--verbose,-v", va.verbose, "List passing checks too (default with --family)");
  verify->add_option("--threads", va.threads, "Worker threads (0: all cores)");

  GroupArgs ga;
  auto* group = app.add_subcommand("group", "Inspect one group");
  group->add_option("--family", ga.family, "Row id, e.g. 9, 12k, 29a, 48,2")->required();
  group->add_option("--prime,-p", ga.prime, "Prime p > 3")->capture_default_str();
  group->add_option("--param", ga.params, "Parameter key=value (repeatable)");
  group->add_option("--show", ga.show, "What to print")
      ->check(CLI::IsMember({"presentation", "elements", "invariants"}))
      ->capture_default_str();
  group->add_option("--format", ga.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  group->add_flag("--numeric", ga.numeric, "Instantiate orders at p");
  std::uint64_t group_seed = env_seed;
  group->add_option("--seed", group_seed, "Accepted for symmetry; unused");
  group->add_option("--catalog", ga.catalog, "Read the catalog from FILE instead of the built-in one");

  ErrataArgs ea;
  auto* errata = app.add_subcommand("errata", "List the errata ledger");
  errata->add_option("--format", ea.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  errata->add_option("--family", ea.family, "Only entries mentioning this row");
  errata->add_option("--catalog", ea.catalog, "Read the catalog from FILE instead of the built-in one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*table) return cmd_table(ta);
    if (*verify) return cmd_verify(va);
    if (*group) return cmd_group(ga);
    if (*errata) return cmd_errata(ea);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BadParam& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownFamily& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitUsage;
}
