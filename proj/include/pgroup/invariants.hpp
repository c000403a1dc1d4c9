#pragma once

// Invariant records: structural data computed by the engine, homological
// data (nabla, J2, exterior and tensor squares) assembled from it and the
// catalog multiplier, and the checks tying both to the expected tables.

#include <stdexcept>
#include <string>
#include <vector>

#include "pgroup/abelian.hpp"
#include "pgroup/catalog.hpp"
#include "pgroup/pc_engine.hpp"

namespace pgroup {

class OrderIdentityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExponentViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MultiplierMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Verdict { Pass, Fail, Explained, NotComputable };

const char* to_string(Verdict v);

struct Check {
  std::string name;  // e.g. "fig1.cl", "order.wedge"
  Verdict verdict = Verdict::Pass;
  std::string computed;
  std::string expected;
  std::string note;  // erratum text for Explained, reason for Fail
};

/// How the exterior square was obtained.
enum class WedgeSource { Abelian, Derived, Table };

const char* to_string(WedgeSource s);

/// Engine facts the homological layer needs.
struct StructureData {
  int cl = 0;
  AbelianType center, derived, abelianization;
  int log_exponent = 0;
  bool abelian() const { return cl <= 1; }
};

StructureData compute_structure(const PcGroup& group);

struct InvariantRecord {
  std::string row;
  int family = 0;
  int prime = 0;
  Params params;

  StructureData structure;
  AbelianType multiplier;  // catalog input
  AbelianType nabla, j2;
  TensorStructure exterior_square, tensor_square;
  WedgeSource wedge_source = WedgeSource::Table;
  bool capable = false;

  ExpectedRecord expected;
  std::vector<Check> checks;

  bool ok() const;
  std::size_t count(Verdict v) const;
};

/// Gamma(G^ab).
AbelianType nabla(const PcPresentation& pres);
/// Gamma(G^ab) + M.
AbelianType j2(const PcPresentation& pres, const AbelianType& multiplier);

/// Three-way dispatch:
///   abelian G       -> wedge of G^ab, which must equal M (MultiplierMismatch);
///   trivial M       -> G' as computed by the engine;
///   otherwise       -> the fig2 table value, which must satisfy
///                      |G^G| = |M| |G'| (OrderIdentityViolation) and, when
///                      G has exponent p, have elementary abelian part
///                      (ExponentViolation).
TensorStructure exterior_square(const StructureData& s, int prime, const AbelianType& multiplier,
                                const ExpectedRecord& expected, WedgeSource* source = nullptr);

/// Gamma(G^ab) + G^G, keeping the E1 factor.
TensorStructure tensor_square(const StructureData& s, int prime, const TensorStructure& wedge);

/// Capable iff the exterior center is trivial.
bool capability(const ExpectedRecord& expected);

/// Fills record.checks. Mismatches against an erratum whose adopted value
/// equals the computed one are Explained; all others Fail.
void validate(InvariantRecord& record, const Catalog& catalog);

/// Builds the group, computes everything and validates it. Exceptions from
/// the exterior square dispatch become failing checks.
InvariantRecord compute_record(const Catalog& catalog, const RowSpec& row, int prime, const Params& params = {});

}  // namespace pgroup
