#pragma once

// Finite abelian p-groups up to isomorphism, and the functors used on them:
// direct sum, tensor product, exterior square and Whitehead's quadratic
// functor Gamma (odd order only).

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pgroup {

class EvenOrderUnsupported : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Isomorphism type of a finite abelian p-group, stored as the non-increasing
/// list of exponents (l1 >= l2 >= ... >= 1) of Z_{p^l1} + Z_{p^l2} + ...
/// The prime is not part of the value.
class AbelianType {
 public:
  AbelianType() = default;
  /// Accepts exponents in any order; zero entries (trivial factors) are dropped.
  explicit AbelianType(std::vector<int> exponents);

  static AbelianType trivial() { return {}; }
  static AbelianType cyclic(int exponent) { return AbelianType({exponent}); }
  static AbelianType elementary(int rank) { return AbelianType(std::vector<int>(rank, 1)); }

  /// Parses "1", "Z_p", "Z_p^3", "Z_{p^2}^2 + Z_p", "Z_p^(3)". Factor order is
  /// irrelevant. Throws std::invalid_argument on malformed text.
  static AbelianType parse(std::string_view text);

  /// Converts cyclic orders (e.g. Smith invariant factors) into a p-type.
  /// Units are dropped; zero (infinite cyclic) or an order that is not a power
  /// of p throws std::invalid_argument.
  static AbelianType from_cyclic_orders(int prime, const std::vector<mpz_class>& orders);

  const std::vector<int>& exponents() const { return exps_; }
  std::size_t rank() const { return exps_.size(); }
  bool is_trivial() const { return exps_.empty(); }
  bool is_elementary() const;
  /// log_p of the order.
  int log_order() const;
  /// log_p of the exponent.
  int log_exponent() const { return exps_.empty() ? 0 : exps_.front(); }
  mpz_class order(int prime) const;

  /// True when a subgroup of this type exists inside `ambient`.
  bool embeds_in(const AbelianType& ambient) const;

  /// Symbolic rendering: "Z_{p^2}^2 + Z_p^3", "1" for the trivial group.
  std::string to_string() const;
  /// Instantiated rendering: "Z_25^2 + Z_5^3".
  std::string to_string(int prime) const;

  friend bool operator==(const AbelianType&, const AbelianType&) = default;

 private:
  std::vector<int> exps_;
};

/// An abelian type optionally multiplied by E1, the extraspecial group of
/// order p^3 and exponent p. Text form: "E1 x Z_p^3".
struct TensorStructure {
  bool e1_factor = false;
  AbelianType abelian_part;

  static TensorStructure parse(std::string_view text);
  int log_order() const { return (e1_factor ? 3 : 0) + abelian_part.log_order(); }
  bool is_abelian() const { return !e1_factor; }
  std::string to_string() const;
  std::string to_string(int prime) const;

  friend bool operator==(const TensorStructure&, const TensorStructure&) = default;
};

AbelianType direct_sum(const AbelianType& a, const AbelianType& b);
/// Z_{p^a} (x) Z_{p^b} = Z_{p^min(a,b)}, extended bilinearly.
AbelianType tensor_ab(const AbelianType& a, const AbelianType& b);
/// Exterior square: sum over i<j of Z_{p^min(li,lj)}.
AbelianType wedge_ab(const AbelianType& a);
/// Whitehead's Gamma for odd order: Gamma(sum Z_ni) = sum Z_ni + sum_{i<j} Z_gcd.
/// Throws EvenOrderUnsupported for p = 2.
AbelianType gamma(const AbelianType& a, int prime);

/// Recovers the type from torsion counts: counts[k] = log_p #{x : x^(p^k) = 1}
/// for k = 0, 1, ..., with counts[0] = 0 and the sequence eventually constant.
AbelianType type_from_torsion_counts(const std::vector<int>& counts);

class IntegerMatrix {
 public:
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  mpz_class& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const mpz_class& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void append_row(const std::vector<mpz_class>& row);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpz_class> data_;
};

/// Smith normal form diagonal d1 | d2 | ... | d_min(rows,cols), non-negative,
/// zeros last.
std::vector<mpz_class> snf(IntegerMatrix m);

/// Cyclic decomposition of Z^cols / rowspace(m): the non-unit invariant
/// factors, with a 0 for every free summand.
std::vector<mpz_class> cokernel(const IntegerMatrix& m);

struct PcPresentation;

/// G^ab from the abelianised relations: each power relation contributes
/// p e_i - tail_i, each commutator relation contributes its tail.
AbelianType ab_from_presentation(const PcPresentation& pres);

}  // namespace pgroup
