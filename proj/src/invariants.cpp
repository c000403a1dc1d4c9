#include "pgroup/invariants.hpp"

#include <algorithm>

namespace pgroup {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Explained: return "explained";
    case Verdict::NotComputable: return "not-computable";
  }
  return "?";
}

const char* to_string(WedgeSource s) {
  switch (s) {
    case WedgeSource::Abelian: return "abelian";
    case WedgeSource::Derived: return "derived";
    case WedgeSource::Table: return "table";
  }
  return "?";
}

bool InvariantRecord::ok() const { return count(Verdict::Fail) == 0; }

std::size_t InvariantRecord::count(Verdict v) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [v](const Check& c) { return c.verdict == v; }));
}

StructureData compute_structure(const PcGroup& group) {
  StructureData s;
  s.cl = group.nilpotency_class();
  s.center = abelian_invariants_of(group, group.center());
  Subgroup derived = group.derived_subgroup();
  s.derived = abelian_invariants_of(group, derived);
  s.abelianization = ab_from_presentation(group.presentation());
  std::uint64_t e = group.exponent();
  while (e > 1) {
    e /= static_cast<std::uint64_t>(group.prime());
    ++s.log_exponent;
  }
  return s;
}

AbelianType nabla(const PcPresentation& pres) { return gamma(ab_from_presentation(pres), pres.prime); }

AbelianType j2(const PcPresentation& pres, const AbelianType& multiplier) { return direct_sum(nabla(pres), multiplier); }

TensorStructure exterior_square(const StructureData& s, int prime, const AbelianType& multiplier,
                                const ExpectedRecord& expected, WedgeSource* source) {
  if (s.abelian()) {
    if (source) *source = WedgeSource::Abelian;
    AbelianType w = wedge_ab(s.abelianization);
    if (w != multiplier)
      throw MultiplierMismatch("row " + expected.row + ": exterior square " + w.to_string() + " of an abelian group differs from M = " +
                               multiplier.to_string());
    return {false, w};
  }
  if (multiplier.is_trivial()) {
    if (source) *source = WedgeSource::Derived;
    return {false, s.derived};
  }
  if (source) *source = WedgeSource::Table;
  const TensorStructure& w = expected.fig2.exterior_square;
  const int want = multiplier.log_order() + s.derived.log_order();
  if (w.log_order() != want)
    throw OrderIdentityViolation("row " + expected.row + ": |G^G| = p^" + std::to_string(w.log_order()) + " but |M| |G'| = p^" +
                                 std::to_string(want) + " at p=" + std::to_string(prime));
  if (s.log_exponent == 1 && !w.abelian_part.is_elementary())
    throw ExponentViolation("row " + expected.row + ": G has exponent p but the exterior square " + w.to_string() +
                            " is not of exponent p");
  return w;
}

TensorStructure tensor_square(const StructureData& s, int prime, const TensorStructure& wedge) {
  return {wedge.e1_factor, direct_sum(gamma(s.abelianization, prime), wedge.abelian_part)};
}

bool capability(const ExpectedRecord& expected) { return expected.fig2.exterior_center.is_trivial(); }

namespace {

std::string pow_text(int e) { return "p^" + std::to_string(e); }

// "p^3 p^3 = p^6" for a product of two orders
std::string product_text(int a, int b) { return pow_text(a) + " " + pow_text(b) + " = " + pow_text(a + b); }

// |E1 x A| spelled out as |E1| |A|
std::string tensor_order_text(const TensorStructure& t) {
  return t.e1_factor ? product_text(3, t.abelian_part.log_order()) : pow_text(t.log_order());
}

class Checker {
 public:
  Checker(InvariantRecord& r, const Catalog& c) : r_(r), c_(c) {}

  template <class T>
  void compare(const std::string& field, const T& computed, const T& expected) {
    Check ch{field, Verdict::Pass, computed.to_string(), expected.to_string(), ""};
    if (!(computed == expected)) resolve(ch, [&](const std::string& adopted) { return T::parse(adopted) == computed; });
    r_.checks.push_back(std::move(ch));
  }

  void compare(const std::string& field, int computed, int expected) {
    Check ch{field, Verdict::Pass, std::to_string(computed), std::to_string(expected), ""};
    if (computed != expected) resolve(ch, [&](const std::string& adopted) { return adopted == std::to_string(computed); });
    r_.checks.push_back(std::move(ch));
  }

  void assert_that(const std::string& name, bool ok, std::string computed, std::string expected, std::string note = "") {
    r_.checks.push_back({name, ok ? Verdict::Pass : Verdict::Fail, std::move(computed), std::move(expected), ok ? "" : std::move(note)});
  }

 private:
  template <class Pred>
  void resolve(Check& ch, Pred matches) {
    for (const ErratumEntry& e : c_.errata_for(r_.row)) {
      if (e.field != ch.name) continue;
      bool fits = false;
      try {
        fits = matches(e.adopted);
      } catch (const std::invalid_argument&) {
      }
      if (fits) {
        ch.verdict = Verdict::Explained;
        ch.note = e.description;
        return;
      }
    }
    ch.verdict = Verdict::Fail;
    ch.note = "no erratum explains the mismatch";
  }

  InvariantRecord& r_;
  const Catalog& c_;
};

}  // namespace

void validate(InvariantRecord& r, const Catalog& catalog) {
  // keep exception-derived failures recorded by compute_record
  std::vector<Check> prior;
  for (auto& ch : r.checks)
    if (ch.name == "dispatch") prior.push_back(ch);
  r.checks = std::move(prior);

  Checker ck(r, catalog);
  const StructureData& s = r.structure;
  const Fig1Entry& f1 = r.expected.fig1;
  const Fig2Entry& f2 = r.expected.fig2;

  ck.compare("fig1.cl", s.cl, f1.cl);
  ck.compare("fig2.cl", s.cl, f2.cl);
  ck.compare("fig1.Z", s.center, f1.center);
  ck.compare("fig1.derived", s.derived, f1.derived);
  ck.compare("fig1.abelianization", s.abelianization, f1.abelianization);
  ck.compare("fig1.M", f1.multiplier, f2.multiplier);
  ck.compare("fig1.nabla", r.nabla, f1.nabla);
  ck.compare("fig1.J2", r.j2, f1.j2);
  ck.compare("fig2.exterior_square", r.exterior_square, f2.exterior_square);
  ck.compare("fig2.tensor_square", r.tensor_square, f2.tensor_square);

  const int lg_derived = s.derived.log_order();
  ck.assert_that("order.wedge", f2.exterior_square.log_order() == f2.multiplier.log_order() + lg_derived,
                 tensor_order_text(f2.exterior_square), product_text(f2.multiplier.log_order(), lg_derived), "|G^G| != |M| |G'|");
  ck.assert_that("order.tensor_nabla", f2.tensor_square.log_order() == f1.nabla.log_order() + f2.exterior_square.log_order(),
                 tensor_order_text(f2.tensor_square), product_text(f1.nabla.log_order(), f2.exterior_square.log_order()),
                 "|G(x)G| != |nabla| |G^G|");
  ck.assert_that("order.tensor_j2", f2.tensor_square.log_order() == f1.j2.log_order() + lg_derived,
                 tensor_order_text(f2.tensor_square), product_text(f1.j2.log_order(), lg_derived), "|G(x)G| != |J2| |G'|");

  if (s.log_exponent == 1 && f2.tensor_square.is_abelian())
    ck.assert_that("exponent.tensor", f2.tensor_square.abelian_part.is_elementary(), f2.tensor_square.to_string(),
                   "elementary abelian", "G has exponent p but its tensor square does not");

  const int zt = f2.tensor_center.log_order(), ze = f2.exterior_center.log_order(), z = s.center.log_order();
  ck.assert_that("center.chain", zt <= ze && ze <= z, pow_text(zt) + " <= " + pow_text(ze) + " <= " + pow_text(z),
                 "|Z^(x)| <= |Z^| <= |Z(G)|", "center orders are not nested");
  if (s.abelian()) {
    ck.assert_that("center.tensor_abelian", f2.tensor_center.is_trivial(), f2.tensor_center.to_string(), "1",
                   "abelian group with non-trivial tensor center");
    ck.assert_that("dispatch.abelian", wedge_ab(s.abelianization) == f2.multiplier, wedge_ab(s.abelianization).to_string(),
                   f2.multiplier.to_string(), "wedge of G^ab differs from M");
  }
  if (f2.multiplier.is_trivial())
    ck.assert_that("dispatch.derived", s.derived == f2.exterior_square.abelian_part && !f2.exterior_square.e1_factor,
                   s.derived.to_string(), f2.exterior_square.to_string(), "M = 1 but G' differs from G^G");
}

InvariantRecord compute_record(const Catalog& catalog, const RowSpec& row, int prime, const Params& params) {
  InvariantRecord r;
  r.row = row.id;
  r.family = row.family;
  r.prime = prime;
  r.params = catalog.complete_params(row, prime, params);
  r.expected = catalog.expected_record(row, prime);

  PcGroup group(catalog.build(row, prime, r.params));
  group.enumerate();
  r.structure = compute_structure(group);
  r.multiplier = r.expected.fig2.multiplier;
  r.nabla = gamma(r.structure.abelianization, prime);
  r.j2 = direct_sum(r.nabla, r.multiplier);

  std::string dispatch_error;
  try {
    r.exterior_square = exterior_square(r.structure, prime, r.multiplier, r.expected, &r.wedge_source);
  } catch (const std::runtime_error& e) {
    dispatch_error = e.what();
    r.exterior_square = r.expected.fig2.exterior_square;
  }
  r.tensor_square = tensor_square(r.structure, prime, r.exterior_square);
  r.capable = capability(r.expected);

  if (!dispatch_error.empty()) r.checks.push_back({"dispatch", Verdict::Fail, to_string(r.wedge_source), "", dispatch_error});
  validate(r, catalog);
  return r;
}

}  // namespace pgroup
