#pragma once

#include <random>

#include "pgroup/catalog.hpp"
#include "pgroup/pc_engine.hpp"

namespace testing {

inline pgroup::PcGroup group_of(const char* row, int p, const pgroup::Params& params = {}) {
  const auto& cat = pgroup::Catalog::builtin();
  return pgroup::PcGroup(cat.build(cat.row(row), p, params));
}

inline pgroup::Element el(int a, int b, int c, int d, int e) { return pgroup::Element{{a, b, c, d, e}}; }

inline pgroup::Element random_element(const pgroup::PcGroup& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, g.order() - 1);
  return g.decode(d(rng));
}

}  // namespace testing
