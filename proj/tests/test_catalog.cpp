#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "pgroup/catalog.hpp"

using namespace pgroup;

TEST_CASE("primitive roots") {
  CHECK(primitive_root(5) == 2);
  CHECK(primitive_root(7) == 3);
  CHECK(primitive_root(11) == 2);
  CHECK(primitive_root(13) == 2);
  CHECK(primitive_root(23) == 5);
  CHECK_THROWS_AS(primitive_root(9), std::invalid_argument);
}

TEST_CASE("exponent expressions") {
  CHECK(eval_exponent("w", 5, {}) == 2);
  CHECK(eval_exponent("(p-1)", 5, {}) == 4);
  CHECK(eval_exponent("(w^k)", 7, {{"k", 2}}) == 2);
  CHECK(eval_exponent("(w^(k-1))", 7, {{"k", 1}}) == 1);
  CHECK(eval_exponent("3", 5, {}) == 3);
  CHECK_THROWS_AS(eval_exponent("-1", 5, {}), std::invalid_argument);
  CHECK_THROWS(eval_exponent("(w", 5, {}));
}

TEST_CASE("rows") {
  const auto& cat = Catalog::builtin();
  CHECK(cat.families().size() == 70);
  CHECK(cat.rows().size() == 72);
  std::set<int> fams;
  for (const auto& r : cat.rows()) fams.insert(r.family);
  CHECK(fams.size() == 70);
  CHECK(cat.row("11,1").k_case == KCase::Generic);
  CHECK(cat.row("48,2").k_case == KCase::Half);
  CHECK_THROWS_AS(cat.row("71"), UnknownFamily);
}

TEST_CASE("resolve spellings") {
  const auto& cat = Catalog::builtin();
  CHECK(cat.resolve("G29a", 5).id == "29_a");
  CHECK(cat.resolve("29_a", 5).id == "29_a");
  CHECK(cat.resolve("12k", 5).id == "12_k");
  CHECK(cat.resolve("3", 5).id == "3");
  CHECK(cat.resolve("11", 7).id == "11,1");
  CHECK(cat.resolve("11", 7, {{"k", 3}}).id == "11,2");
  CHECK(cat.resolve("48,2", 7).id == "48,2");
  CHECK_THROWS_AS(cat.resolve("0", 5), UnknownFamily);
  CHECK_THROWS_AS(cat.resolve("abc", 5), UnknownFamily);
}

TEST_CASE("parameter domains") {
  const auto& cat = Catalog::builtin();
  auto d = cat.domain(cat.row("12_k"), 7);
  REQUIRE(d.size() == 1);
  CHECK(d[0].lo == 1);
  CHECK(d[0].hi == 3);
  auto gen = cat.domain(cat.row("11,1"), 7);
  CHECK(gen[0].hi == 2);
  auto half = cat.domain(cat.row("11,2"), 7);
  CHECK(half[0].lo == 3);
  CHECK(half[0].hi == 3);
  auto a = cat.domain(cat.row("29_a"), 7);
  CHECK(a[0].name == "a");
  CHECK(a[0].lo == 0);
  CHECK(a[0].hi == 5);
  CHECK(cat.domain(cat.row("3"), 5).empty());

  CHECK(cat.complete_params(cat.row("12_k"), 5, {}).at("k") == 1);
  CHECK(cat.complete_params(cat.row("11,2"), 7, {}).at("k") == 3);
  CHECK_THROWS_AS(cat.complete_params(cat.row("12_k"), 5, {{"k", 3}}), BadParam);
  CHECK_THROWS_AS(cat.complete_params(cat.row("3"), 5, {{"k", 1}}), BadParam);
  CHECK_THROWS_AS(cat.complete_params(cat.row("29_a"), 5, {{"a", -1}}), BadParam);
}

TEST_CASE("build") {
  const auto& cat = Catalog::builtin();
  PcPresentation g70 = cat.build(cat.row("70"), 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(g70.power_tails[i] == Exponents{});
    for (int j = 0; j < 5; ++j) CHECK(g70.comm_tails[i][j] == Exponents{});
  }
  CHECK(cat.build(cat.row("9"), 5).comm_tails[2][0] == testing::el(0, 0, 0, 1, 2).exps);
  CHECK(cat.build(cat.row("24"), 5).comm_tails[3][1] == testing::el(0, 0, 0, 0, 4).exps);
  CHECK(cat.build(cat.row("1"), 5).power_tails[0] == testing::el(0, 1, 0, 0, 0).exps);
}

TEST_CASE("expected records") {
  const auto& cat = Catalog::builtin();
  auto g3 = cat.expected_record(cat.row("3"), 5);
  CHECK(g3.fig2.tensor_square == TensorStructure::parse("Z_p^9"));
  CHECK(g3.fig2.tensor_square.abelian_part.order(5) == 1953125);
  auto g25 = cat.expected_record(cat.row("25"), 7);
  CHECK(g25.fig2.exterior_square == TensorStructure::parse("Z_{p^2}"));
  auto g64 = cat.expected_record(cat.row("64"), 5);
  CHECK(g64.fig2.multiplier == AbelianType::elementary(7));
  CHECK(g64.fig2.exterior_square == TensorStructure::parse("Z_p^8"));
  CHECK(cat.expected_record(cat.row("28"), 5).fig2.exterior_square == TensorStructure::parse("E1 x Z_p^3"));
}

TEST_CASE("errata queries") {
  const auto& cat = Catalog::builtin();
  auto e70 = cat.errata_for("70");
  REQUIRE(e70.size() == 1);
  CHECK(e70[0].resolution.rfind("Z^ = 1", 0) == 0);
  auto e12 = cat.errata_for("12_k");
  REQUIRE(e12.size() == 1);
  CHECK(e12[0].resolution.rfind("M = 1", 0) == 0);
  CHECK(cat.errata_for("3").empty());
  CHECK(cat.adopted("70", "epicenter_listing") == std::optional<std::string>("1"));
  CHECK_FALSE(cat.adopted("3", "fig1.cl"));
}

TEST_CASE("listing conflicts") {
  const auto& cat = Catalog::builtin();
  auto conflicts = cat.listing_conflicts();
  std::set<std::string> rows;
  for (const auto& c : conflicts) rows.insert(c.row);
  for (const char* r : {"70", "10", "17", "12_k"}) CHECK(rows.count(r) == 1);
  for (const auto& c : conflicts) CHECK(cat.adopted(c.row, c.listing).has_value());
}

TEST_CASE("catalog parsing errors") {
  CHECK_THROWS_AS(Catalog::parse("{"), std::invalid_argument);
  CHECK_THROWS_AS(Catalog::parse("{}"), std::invalid_argument);
  CHECK_NOTHROW(Catalog::parse(Catalog::builtin_text()));
}
