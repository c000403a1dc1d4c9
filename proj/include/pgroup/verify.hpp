#pragma once

// End-to-end verification: every row (and every parameter value) at one
// prime, the raw listings against the tables and errata, and the oracles.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgroup/catalog.hpp"
#include "pgroup/invariants.hpp"
#include "pgroup/oracle.hpp"
#include "pgroup/report.hpp"

namespace pgroup {

struct VerifyOptions {
  int prime = 5;
  /// Restrict to one row (any spelling accepted by Catalog::resolve).
  std::optional<std::string> family;
  Params params;
  /// Without a family: also run every admissible parameter value.
  bool sweep_params = true;
  bool oracles = true;
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct VerifyReport {
  int prime = 0;
  std::uint64_t seed = 0;
  std::vector<InvariantRecord> records;
  /// Rows whose presentation could not be built or was inconsistent.
  std::vector<std::string> construction_failures;
  std::vector<ListingConflict> conflicts;
  std::vector<ListingConflict> undocumented_conflicts;
  /// Listing errata that no longer correspond to a detected conflict.
  std::vector<std::string> stale_errata;
  /// Rows where the capability read from the resolved epicenter listing
  /// differs from the fig2 table.
  std::vector<std::string> capability_mismatches;
  std::vector<OracleReport> oracles;

  bool ok() const;
  std::size_t failing_checks() const;
  std::size_t explained_checks() const;
};

VerifyReport run_verify(const Catalog& catalog, const VerifyOptions& options);

/// Computes records for the given rows at default parameters, in parallel,
/// preserving order. Exceptions propagate.
std::vector<InvariantRecord> compute_records(const Catalog& catalog, const std::vector<RowSpec>& rows, int prime,
                                             unsigned threads = 0);

/// Epicenter value per row after applying listing errata; rows without a
/// usable listing entry are omitted.
std::vector<std::pair<std::string, AbelianType>> resolved_epicenters(const Catalog& catalog);

/// Lists failing and explained checks; passing ones too when verbose.
std::string render_verify_text(const VerifyReport& report, bool verbose = false);
nlohmann::json verify_to_json(const VerifyReport& report);

}  // namespace pgroup
