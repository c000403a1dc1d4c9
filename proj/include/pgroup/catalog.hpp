#pragma once

// The 70 presentation families of groups of order p^5 (p > 3), the expected
// invariant tables, the raw multiplier/epicenter listings and the errata
// ledger. All of it is loaded from the JSON document embedded at build time.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pgroup/abelian.hpp"
#include "pgroup/pc_engine.hpp"

namespace pgroup {

class BadParam : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Smallest positive primitive root mod p. Throws std::invalid_argument when
/// p is not prime.
int primitive_root(int p);

using Params = std::map<std::string, int>;

struct ParamRange {
  std::string name;
  int lo;
  int hi;
};

struct FamilySpec {
  int id = 0;
  std::vector<std::string> params;     // subset of {"k", "a", "b"}
  std::vector<std::string> relations;  // e.g. "[g3,g1] = g4 g5^(w^k)"
};

/// Which values of k a subcase row admits.
enum class KCase { Any, Generic, Half };

/// One row of the invariant tables. Rows and families coincide except for
/// 11 and 48, which split on whether k = (p-1)/2.
struct RowSpec {
  std::string id;  // "3", "11,1", "12_k", "29_a"
  int family = 0;
  KCase k_case = KCase::Any;
};

struct Fig1Entry {
  int cl = 0;
  AbelianType multiplier, center, derived, abelianization, nabla, j2;
};

struct Fig2Entry {
  int cl = 0;
  AbelianType multiplier;
  TensorStructure exterior_square, tensor_square;
  AbelianType exterior_center, tensor_center;
};

struct ExpectedRecord {
  std::string row;
  int family = 0;
  int prime = 0;
  Fig1Entry fig1;
  Fig2Entry fig2;
  /// Every type under which the raw listings mention this row (possibly
  /// none, possibly repeated).
  std::vector<AbelianType> multiplier_listing;
  std::vector<AbelianType> epicenter_listing;
};

struct ErratumEntry {
  std::vector<std::string> rows;
  std::vector<std::string> sources;  // e.g. "epicenter_listing", "fig2"
  std::string description;
  std::string resolution;
  /// Table field the entry corrects ("fig1.cl", ...), empty when the entry
  /// only documents a conflict outside the tables.
  std::string field;
  /// Adopted value for `field`, in the table's own notation.
  std::string adopted;
};

struct ListingEntry {
  AbelianType type;
  std::vector<std::string> rows;
};

/// A disagreement between a raw listing and the fig2 table.
struct ListingConflict {
  std::string row;
  std::string listing;  // "multiplier_listing" | "epicenter_listing"
  std::string kind;     // "double" | "duplicate" | "missing" | "mismatch"
  std::vector<AbelianType> listed;
  AbelianType table_value;

  std::string describe() const;
  friend bool operator==(const ListingConflict& a, const ListingConflict& b) {
    return a.row == b.row && a.listing == b.listing && a.kind == b.kind;
  }
};

class Catalog {
 public:
  /// The catalog embedded in the library.
  static const Catalog& builtin();
  /// Parses a catalog document; throws std::invalid_argument on schema errors.
  static Catalog parse(std::string_view json_text);
  /// The embedded document, verbatim.
  static std::string_view builtin_text();

  const std::vector<FamilySpec>& families() const { return families_; }
  const std::vector<RowSpec>& rows() const { return rows_; }
  const std::vector<ErratumEntry>& errata() const { return errata_; }
  const std::vector<ListingEntry>& multiplier_listing() const { return multiplier_listing_; }
  const std::vector<ListingEntry>& epicenter_listing() const { return epicenter_listing_; }

  const FamilySpec& family(int id) const;
  const RowSpec& row(std::string_view id) const;

  /// Resolves user spellings ("G29a", "29_a", "12k", "11" with k) to a row.
  /// Family 11/48 pick their subcase from k (default k = 1).
  const RowSpec& resolve(std::string_view text, int prime, const Params& params = {}) const;

  /// Admissible parameter ranges of a row at p:
  ///   k in 1..(p-1)/2 (only k = (p-1)/2 for the ",2" rows, all others for ",1"),
  ///   a, b in 0..p-2.
  std::vector<ParamRange> domain(const RowSpec& row, int prime) const;
  /// Fills in defaults (k = a = b = 1; k = (p-1)/2 for ",2" rows) and checks
  /// the domain. Throws BadParam.
  Params complete_params(const RowSpec& row, int prime, const Params& params) const;

  /// Instantiates the row's presentation with w = primitive_root(p).
  PcPresentation build(const RowSpec& row, int prime, const Params& params = {}) const;

  ExpectedRecord expected_record(const RowSpec& row, int prime) const;

  /// Errata mentioning the row.
  std::vector<ErratumEntry> errata_for(std::string_view row) const;
  /// Adopted value of an erratum correcting (row, field), if any.
  std::optional<std::string> adopted(std::string_view row, std::string_view field) const;

  /// Compares both raw listings against the fig2 table.
  std::vector<ListingConflict> listing_conflicts() const;

 private:
  std::vector<FamilySpec> families_;
  std::vector<RowSpec> rows_;
  std::vector<Fig1Entry> fig1_;
  std::vector<Fig2Entry> fig2_;
  std::vector<ListingEntry> multiplier_listing_;
  std::vector<ListingEntry> epicenter_listing_;
  std::vector<ErratumEntry> errata_;
};

/// Evaluates an exponent expression such as "w", "(w^(k-1))", "(p-1)" or "3"
/// and reduces it into [0, p).
int eval_exponent(std::string_view expr, int prime, const Params& vars);

/// Parses one relation ("g1^p = g2", "[g3,g1] = g4 g5^(w^k)") into `pres`.
void apply_relation(PcPresentation& pres, std::string_view relation, const Params& vars);

}  // namespace pgroup
