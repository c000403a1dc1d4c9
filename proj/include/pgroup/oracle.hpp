#pragma once

// Brute-force cross-checks for the abelian calculus. Each oracle reaches its
// answer by a route that does not reuse the closed formulas it is checking.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pgroup/abelian.hpp"

namespace pgroup {

/// Seed from $PGROUP_SEED when set and numeric, otherwise a fixed default.
std::uint64_t default_seed();

struct OracleReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t mismatches = 0;
  std::vector<std::string> failures;  // first few, human readable
  double seconds = 0;

  bool ok() const { return mismatches == 0 && cases > 0; }
};

/// A (x) B as the cokernel of the universal bilinear relations: one generator
/// e_ij per pair of cyclic factors, killed by n_i and by m_j.
AbelianType bilinear_tensor_oracle(const AbelianType& a, const AbelianType& b, int prime);

/// Every pair of types with at most `max_factors` factors of exponent at most
/// `max_exp`, for each prime, against tensor_ab.
OracleReport bilinear_sweep(const std::vector<int>& primes, int max_factors, int max_exp);

/// gamma on A = sum Z_{n_i}: x -> (x_i^2 mod n_i ; x_i x_j mod gcd(n_i, n_j)).
class QuadraticModel {
 public:
  explicit QuadraticModel(std::vector<long> moduli);

  const std::vector<long>& moduli() const { return moduli_; }
  /// Moduli of the value space: the n_i, then gcd(n_i, n_j) for i < j.
  const std::vector<long>& value_moduli() const { return value_moduli_; }
  std::uint64_t group_order() const;
  std::uint64_t value_space_order() const;

  std::vector<long> evaluate(const std::vector<long>& x) const;
  std::vector<long> add(const std::vector<long>& x, const std::vector<long>& y) const;
  std::vector<long> negate(const std::vector<long>& x) const;
  std::vector<long> add_values(const std::vector<long>& u, const std::vector<long>& v) const;

 private:
  std::vector<long> moduli_;
  std::vector<long> value_moduli_;
};

struct GammaVerdict {
  std::size_t trials = 0;
  std::size_t relation_i_failures = 0;
  std::size_t relation_ii_failures = 0;
  std::uint64_t generated_order = 0;
  std::uint64_t expected_order = 0;

  bool ok() const {
    return relation_i_failures == 0 && relation_ii_failures == 0 && generated_order == expected_order;
  }
};

/// Checks gamma(a^-1) = gamma(a) and
/// gamma(abc) gamma(a) gamma(b) gamma(c) = gamma(ab) gamma(bc) gamma(ca)
/// on random triples, and that the values of gamma generate a subgroup of
/// order |Gamma(A)| (found by closing the value set under addition).
GammaVerdict gamma_relation_check(const QuadraticModel& model, std::size_t trials, std::mt19937_64& rng);

/// All cyclic and two-factor models with odd moduli in 3..max_modulus.
OracleReport gamma_sweep(long max_modulus, std::size_t trials, std::uint64_t seed);

/// A = (Z_{p^c})^m / <rows>.
struct CountingInstance {
  int prime = 0;
  int c = 0;
  int m = 0;
  std::vector<std::vector<long>> rows;
};

/// The type of the instance by counting solutions of p^k x = 0 over explicit
/// cosets (first) and by the Smith normal form of [rows; p^c I] (second).
std::pair<AbelianType, AbelianType> counting_and_snf(const CountingInstance& inst);

/// Random instances with p in {3, 5, 7} and exponents at most 3, ambient
/// groups capped at a few thousand elements.
OracleReport counting_vs_snf(std::size_t trials, std::uint64_t seed);

}  // namespace pgroup
