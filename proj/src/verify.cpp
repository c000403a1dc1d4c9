#include "pgroup/verify.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace pgroup {

namespace {

struct Task {
  const RowSpec* row;
  Params params;
};

struct Outcome {
  std::optional<InvariantRecord> record;
  std::string error;
};

std::vector<Outcome> run_tasks(const Catalog& catalog, const std::vector<Task>& tasks, int prime, unsigned threads) {
  std::vector<Outcome> out(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();) {
      try {
        out[i].record = compute_record(catalog, *tasks[i].row, prime, tasks[i].params);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::vector<Params> parameter_grid(const Catalog& catalog, const RowSpec& row, int prime) {
  std::vector<Params> grid{{}};
  for (const ParamRange& d : catalog.domain(row, prime)) {
    std::vector<Params> next;
    for (const Params& base : grid)
      for (int v = d.lo; v <= d.hi; ++v) {
        Params q = base;
        q[d.name] = v;
        next.push_back(std::move(q));
      }
    grid = std::move(next);
  }
  return grid;
}

bool is_listing_field(const std::string& f) { return f == "multiplier_listing" || f == "epicenter_listing"; }

std::string params_text(const Params& p) {
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : " ") + k + "=" + std::to_string(v);
  return s;
}

}  // namespace

bool VerifyReport::ok() const {
  if (!construction_failures.empty() || !undocumented_conflicts.empty() || !stale_errata.empty() || !capability_mismatches.empty())
    return false;
  for (const auto& r : records)
    if (!r.ok()) return false;
  for (const auto& o : oracles)
    if (!o.ok()) return false;
  return true;
}

std::size_t VerifyReport::failing_checks() const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.count(Verdict::Fail);
  return n;
}

std::size_t VerifyReport::explained_checks() const {
  std::size_t n = 0;
  for (const auto& r : records) n += r.count(Verdict::Explained);
  return n;
}

std::vector<InvariantRecord> compute_records(const Catalog& catalog, const std::vector<RowSpec>& rows, int prime, unsigned threads) {
  std::vector<Task> tasks;
  for (const auto& r : rows) tasks.push_back({&r, {}});
  std::vector<InvariantRecord> out;
  for (auto& o : run_tasks(catalog, tasks, prime, threads)) {
    if (!o.record) throw std::runtime_error(o.error);
    out.push_back(std::move(*o.record));
  }
  return out;
}

std::vector<std::pair<std::string, AbelianType>> resolved_epicenters(const Catalog& catalog) {
  std::vector<std::pair<std::string, AbelianType>> out;
  for (const RowSpec& r : catalog.rows()) {
    if (auto adopted = catalog.adopted(r.id, "epicenter_listing")) {
      out.emplace_back(r.id, AbelianType::parse(*adopted));
      continue;
    }
    const auto listed = catalog.expected_record(r, 5).epicenter_listing;
    if (listed.size() == 1) out.emplace_back(r.id, listed.front());
  }
  return out;
}

VerifyReport run_verify(const Catalog& catalog, const VerifyOptions& opt) {
  VerifyReport rep;
  rep.prime = opt.prime;
  rep.seed = opt.seed;

  std::vector<Task> tasks;
  if (opt.family) {
    const RowSpec& row = catalog.resolve(*opt.family, opt.prime, opt.params);
    tasks.push_back({&row, opt.params});
  } else {
    for (const RowSpec& row : catalog.rows()) {
      if (opt.sweep_params) {
        for (Params& p : parameter_grid(catalog, row, opt.prime)) tasks.push_back({&row, std::move(p)});
      } else {
        tasks.push_back({&row, {}});
      }
    }
  }
  auto outcomes = run_tasks(catalog, tasks, opt.prime, opt.threads);
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (outcomes[i].record) {
      rep.records.push_back(std::move(*outcomes[i].record));
    } else {
      std::string label = tasks[i].row->id;
      if (!tasks[i].params.empty()) label += " (" + params_text(tasks[i].params) + ")";
      rep.construction_failures.push_back(label + ": " + outcomes[i].error);
    }
  }

  // raw listings against the tables; every conflict must be documented and
  // every documented listing conflict must still be present
  std::vector<std::string> scope;
  for (const auto& t : tasks) scope.push_back(t.row->id);
  auto in_scope = [&](const std::string& id) { return std::find(scope.begin(), scope.end(), id) != scope.end(); };

  for (const ListingConflict& c : catalog.listing_conflicts()) {
    if (!in_scope(c.row)) continue;
    rep.conflicts.push_back(c);
    if (!catalog.adopted(c.row, c.listing)) rep.undocumented_conflicts.push_back(c);
  }
  for (const ErratumEntry& e : catalog.errata()) {
    if (!is_listing_field(e.field)) continue;
    for (const std::string& row : e.rows) {
      if (!in_scope(row)) continue;
      bool seen = std::any_of(rep.conflicts.begin(), rep.conflicts.end(),
                              [&](const ListingConflict& c) { return c.row == row && c.listing == e.field; });
      if (!seen) rep.stale_errata.push_back(row + " (" + e.field + "): " + e.description);
    }
  }

  for (const auto& [row, z] : resolved_epicenters(catalog)) {
    if (!in_scope(row)) continue;
    const ExpectedRecord e = catalog.expected_record(catalog.row(row), opt.prime);
    if (z.is_trivial() != capability(e))
      rep.capability_mismatches.push_back(row + ": resolved epicenter " + z.to_string() + " vs table exterior center " +
                                          e.fig2.exterior_center.to_string());
  }

  if (opt.oracles) {
    rep.oracles.push_back(bilinear_sweep({3, 5, 7}, 4, 3));
    rep.oracles.push_back(gamma_sweep(49, 10000, opt.seed));
    rep.oracles.push_back(counting_vs_snf(1000, opt.seed));
  }
  return rep;
}

std::string render_verify_text(const VerifyReport& rep, bool verbose) {
  std::ostringstream os;
  os << "verify p=" << rep.prime << " seed=" << rep.seed << "\n\n";

  for (const auto& f : rep.construction_failures) os << "FAIL construction " << f << "\n";

  std::size_t passed = 0;
  for (const auto& r : rep.records) {
    std::string label = r.row;
    if (!r.params.empty()) label += " (" + params_text(r.params) + ")";
    for (const Check& c : r.checks) {
      if (c.verdict == Verdict::Pass) ++passed;
      if (c.verdict == Verdict::Pass && !verbose) continue;
      os << (c.verdict == Verdict::Fail ? "FAIL " : c.verdict == Verdict::Pass ? "pass " : "EXPLAINED ") << label << " " << c.name << ": computed " << c.computed
         << ", expected " << c.expected;
      if (!c.note.empty()) os << " [" << c.note << "]";
      os << "\n";
    }
  }
  os << "records: " << rep.records.size() << ", checks passed: " << passed << ", explained: " << rep.explained_checks()
     << ", failed: " << rep.failing_checks() << "\n\n";

  os << "listing conflicts: " << rep.conflicts.size() << " detected, " << rep.undocumented_conflicts.size() << " undocumented\n";
  for (const auto& c : rep.conflicts) {
    bool documented = std::find(rep.undocumented_conflicts.begin(), rep.undocumented_conflicts.end(), c) == rep.undocumented_conflicts.end();
    os << (documented ? "  erratum   " : "  FAIL      ") << c.describe() << "\n";
  }
  for (const auto& s : rep.stale_errata) os << "  FAIL stale erratum " << s << "\n";
  for (const auto& s : rep.capability_mismatches) os << "FAIL capability " << s << "\n";

  if (!rep.oracles.empty()) os << "\noracles:\n";
  for (const auto& o : rep.oracles) {
    os << "  " << (o.ok() ? "pass " : "FAIL ") << o.name << ": " << o.cases << " cases, " << o.mismatches << " mismatches\n";
    for (const auto& f : o.failures) os << "    " << f << "\n";
  }
  os << "\n" << (rep.ok() ? "OK" : "FAILED") << "\n";
  return os.str();
}

nlohmann::json verify_to_json(const VerifyReport& rep) {
  using nlohmann::json;
  json records = json::array();
  for (const auto& r : rep.records) records.push_back(record_to_json(r, false));
  json conflicts = json::array();
  for (const auto& c : rep.conflicts) {
    bool documented = std::find(rep.undocumented_conflicts.begin(), rep.undocumented_conflicts.end(), c) == rep.undocumented_conflicts.end();
    conflicts.push_back({{"row", c.row}, {"listing", c.listing}, {"kind", c.kind}, {"documented", documented}, {"description", c.describe()}});
  }
  json oracles = json::array();
  for (const auto& o : rep.oracles)
    oracles.push_back({{"name", o.name}, {"cases", o.cases}, {"mismatches", o.mismatches}, {"failures", o.failures}, {"ok", o.ok()}});
  return {{"kind", "verify"},
          {"prime", rep.prime},
          {"seed", rep.seed},
          {"ok", rep.ok()},
          {"construction_failures", rep.construction_failures},
          {"records", records},
          {"listing_conflicts", conflicts},
          {"stale_errata", rep.stale_errata},
          {"capability_mismatches", rep.capability_mismatches},
          {"oracles", oracles}};
}

}  // namespace pgroup
