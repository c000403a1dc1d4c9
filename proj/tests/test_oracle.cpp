#include <doctest.h>

#include "pgroup/oracle.hpp"

using namespace pgroup;

TEST_CASE("bilinear oracle") {
  auto T = [](const char* s) { return AbelianType::parse(s); };
  CHECK(bilinear_tensor_oracle(T("Z_{p^2}"), T("Z_p"), 5) == T("Z_p"));
  CHECK(bilinear_tensor_oracle(T("Z_p^2"), T("Z_p"), 5) == T("Z_p^2"));
  CHECK(bilinear_tensor_oracle(AbelianType(), T("Z_{p^3} + Z_p"), 7).is_trivial());
  CHECK(bilinear_tensor_oracle(T("Z_{p^3}"), T("Z_{p^2}"), 3) == T("Z_{p^2}"));
}

TEST_CASE("bilinear sweep") {
  OracleReport r = bilinear_sweep({3, 5, 7}, 4, 3);
  CHECK(r.ok());
  CHECK(r.cases == 3 * 35 * 35);
}

TEST_CASE("quadratic model") {
  QuadraticModel m({5, 25});
  CHECK(m.group_order() == 125);
  CHECK(m.value_moduli() == std::vector<long>{5, 25, 5});
  CHECK(m.value_space_order() == 625);
  CHECK(m.evaluate({0, 0}) == std::vector<long>{0, 0, 0});
  CHECK(m.evaluate({2, 7}) == std::vector<long>{4, 24, 4});
  CHECK(m.evaluate(m.negate({2, 7})) == m.evaluate({2, 7}));
}

TEST_CASE("gamma relations") {
  std::mt19937_64 rng(1);
  GammaVerdict z5 = gamma_relation_check(QuadraticModel({5}), 10000, rng);
  CHECK(z5.ok());
  CHECK(z5.trials == 10000);
  CHECK(z5.generated_order == 5);

  GammaVerdict z5z25 = gamma_relation_check(QuadraticModel({5, 25}), 10000, rng);
  CHECK(z5z25.ok());
  CHECK(z5z25.generated_order == 5 * 25 * 5);

  // identity triple: relation (ii) forces gamma(1) = 0
  QuadraticModel m({7, 49});
  auto g1 = m.evaluate({0, 0});
  CHECK(m.add_values(g1, g1) == g1);
}

TEST_CASE("counting against SNF") {
  CountingInstance z5z5{5, 1, 2, {{1, 1}, {0, 0}}};
  // (Z_5)^2 modulo nothing after a scrambled basis
  z5z5.rows = {{0, 0}};
  auto [c1, s1] = counting_and_snf(z5z5);
  CHECK(c1 == AbelianType({1, 1}));
  CHECK(s1 == c1);

  // (Z_25)^2 / <(5, 0)... > realised as Z_25 + Z_5 after a change of basis
  CountingInstance z25z5{5, 2, 2, {{0, 5}}};
  auto [c2, s2] = counting_and_snf(z25z5);
  CHECK(c2 == AbelianType({2, 1}));
  CHECK(s2 == c2);

  CountingInstance scrambled{5, 2, 2, {{2, 5}}};
  auto [c3, s3] = counting_and_snf(scrambled);
  CHECK(c3 == s3);

  OracleReport r = counting_vs_snf(1000, 42);
  CHECK(r.ok());
  CHECK(r.cases == 1000);
}

TEST_CASE("seed from environment") {
  ::setenv("PGROUP_SEED", "77", 1);
  CHECK(default_seed() == 77);
  ::unsetenv("PGROUP_SEED");
  CHECK(default_seed() != 77);
}
