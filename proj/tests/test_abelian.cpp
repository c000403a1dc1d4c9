#include <doctest.h>

#include <random>

#include "pgroup/abelian.hpp"
#include "pgroup/catalog.hpp"

using namespace pgroup;

namespace {
AbelianType T(const char* s) { return AbelianType::parse(s); }
}  // namespace

TEST_CASE("parse and render") {
  CHECK(T("1").is_trivial());
  CHECK(T("Z_p") == AbelianType::elementary(1));
  CHECK(T("Z_p^(3)") == AbelianType::elementary(3));
  CHECK(T("Z_p^3") == AbelianType::elementary(3));
  CHECK(T("Z_p + Z_{p^2}^2") == AbelianType({2, 2, 1}));
  CHECK(T("Z_{p^2}^(2) + Z_p^(2)").exponents() == std::vector<int>{2, 2, 1, 1});
  CHECK(AbelianType({1, 3, 0, 2}).exponents() == std::vector<int>{3, 2, 1});
  CHECK(AbelianType({3, 2, 1}).to_string() == "Z_{p^3} + Z_{p^2} + Z_p");
  CHECK(AbelianType({2, 1, 1}).to_string(5) == "Z_25 + Z_5^2");
  CHECK(AbelianType().to_string() == "1");
  CHECK(AbelianType({2, 2, 1}).log_order() == 5);
  CHECK(AbelianType({2, 2, 1}).order(7) == 16807);
  CHECK_THROWS_AS(T("Z_q"), std::invalid_argument);
  CHECK_THROWS_AS(T("Z_p^"), std::invalid_argument);

  auto e = TensorStructure::parse("E1 x Z_p^3");
  CHECK(e.e1_factor);
  CHECK(e.log_order() == 6);
  CHECK(e.to_string() == "E1 x Z_p^3");
  CHECK_FALSE(e.is_abelian());
}

TEST_CASE("from cyclic orders") {
  CHECK(AbelianType::from_cyclic_orders(5, {1, 5, 25}) == AbelianType({2, 1}));
  CHECK_THROWS_AS(AbelianType::from_cyclic_orders(5, {10}), std::invalid_argument);
  CHECK_THROWS_AS(AbelianType::from_cyclic_orders(5, {0}), std::invalid_argument);
}

TEST_CASE("direct sum") {
  CHECK(direct_sum(AbelianType(), T("Z_{p^2} + Z_p")) == T("Z_{p^2} + Z_p"));
  CHECK(direct_sum(T("Z_{p^2}^2"), T("Z_p^2")).exponents() == std::vector<int>{2, 2, 1, 1});
  CHECK(direct_sum(gamma(T("Z_p^4"), 5), T("Z_p^8")) == T("Z_p^18"));
}

TEST_CASE("tensor product") {
  CHECK(tensor_ab(T("Z_{p^3}"), T("Z_{p^2}")) == T("Z_{p^2}"));
  CHECK(tensor_ab(T("Z_p^2"), T("Z_p^2")) == T("Z_p^4"));
  CHECK(tensor_ab(AbelianType(), T("Z_{p^3} + Z_p")).is_trivial());
  CHECK(tensor_ab(T("Z_{p^2} + Z_p"), T("Z_{p^3}")) == T("Z_{p^2} + Z_p"));
}

TEST_CASE("gamma") {
  CHECK(gamma(T("Z_{p^5}"), 5) == T("Z_{p^5}"));
  CHECK(gamma(T("Z_p^2"), 7) == T("Z_p^3"));
  CHECK(gamma(T("Z_{p^3} + Z_{p^2}"), 5) == T("Z_{p^3} + Z_{p^2}^2"));
  CHECK(gamma(T("Z_p^5"), 5) == T("Z_p^15"));
  CHECK(gamma(AbelianType(), 5).is_trivial());
  CHECK_THROWS_AS(gamma(T("Z_p"), 2), EvenOrderUnsupported);
}

TEST_CASE("exterior square") {
  CHECK(wedge_ab(T("Z_{p^5}")).is_trivial());
  CHECK(wedge_ab(T("Z_{p^3} + Z_{p^2}")) == T("Z_{p^2}"));
  CHECK(wedge_ab(T("Z_p^5")) == T("Z_p^10"));
}

TEST_CASE("functor identities on random types") {
  // tensor of A with itself is gamma plus wedge (odd order)
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> len(0, 4), ex(1, 4);
  for (int i = 0; i < 500; ++i) {
    std::vector<int> v(len(rng));
    for (int& x : v) x = ex(rng);
    AbelianType a(v);
    CHECK(tensor_ab(a, a) == direct_sum(gamma(a, 5), wedge_ab(a)));
    CHECK(gamma(a, 5).log_order() == a.log_order() + wedge_ab(a).log_order());
  }
}

TEST_CASE("embeds") {
  CHECK(T("Z_p").embeds_in(T("Z_{p^2}")));
  CHECK(T("Z_p^2").embeds_in(T("Z_{p^3} + Z_p")));
  CHECK_FALSE(T("Z_p^3").embeds_in(T("Z_{p^3} + Z_p")));
  CHECK_FALSE(T("Z_{p^2}").embeds_in(T("Z_p^4")));
}

TEST_CASE("Smith normal form and cokernel") {
  CHECK(cokernel(IntegerMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}).empty());
  auto c = cokernel(IntegerMatrix{{5, 0}, {0, 25}, {0, 0}});
  CHECK(AbelianType::from_cyclic_orders(5, c) == T("Z_{p^2} + Z_p"));
  auto d = snf(IntegerMatrix{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(d == std::vector<mpz_class>{2, 6, 12});
  auto free = cokernel(IntegerMatrix{{3, 0}});
  CHECK(free.size() == 2);
  CHECK(std::count(free.begin(), free.end(), mpz_class(0)) == 1);
}

TEST_CASE("torsion counts") {
  CHECK(type_from_torsion_counts({0}).is_trivial());
  // Z_{p^2} + Z_p: 2 elements-of-log at k=1, 3 at k=2
  CHECK(type_from_torsion_counts({0, 2, 3, 3}) == T("Z_{p^2} + Z_p"));
  CHECK(type_from_torsion_counts({0, 3, 3}) == T("Z_p^3"));
}

TEST_CASE("abelianization from relations") {
  const auto& cat = Catalog::builtin();
  CHECK(ab_from_presentation(cat.build(cat.row("3"), 5)) == T("Z_p^2"));
  CHECK(ab_from_presentation(cat.build(cat.row("2"), 5)) == T("Z_{p^2}^2"));
  CHECK(ab_from_presentation(cat.build(cat.row("15"), 5)) == T("Z_{p^3} + Z_p"));
  CHECK(ab_from_presentation(cat.build(cat.row("1"), 7)) == T("Z_{p^5}"));
}
