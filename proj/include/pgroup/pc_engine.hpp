#pragma once

// Exact arithmetic in finite p-groups given by power-commutator presentations
// on five generators g1..g5, each of relative order p.
//
// Conventions:
//   commutator  [x,y] = x^-1 y^-1 x y, so [g_j,g_i] = t gives g_j g_i = g_i g_j t
//   conjugation  ^g h = g h g^-1

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgroup/abelian.hpp"

namespace pgroup {

inline constexpr int kNumGens = 5;

using Exponents = std::array<int, kNumGens>;

class InconsistentPresentation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotNormal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAbelian : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Normal form g1^e1 g2^e2 ... g5^e5 with every e_i in [0, p).
struct Element {
  Exponents exps{};

  bool is_identity() const {
    for (int e : exps)
      if (e != 0) return false;
    return true;
  }
  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

/// The i-th generator (1-based, as in g1..g5).
Element generator(int index);

/// Renders e.g. "g1 g3^2"; the identity renders as "1".
std::string to_string(const Element& x);

/// A generator letter with a signed exponent; index is 1-based.
struct Letter {
  int gen;
  int exp;
};
using Word = std::vector<Letter>;

/// Relations g_i^p = power_tails[i] and [g_j,g_i] = comm_tails[j][i] (j > i),
/// stored 0-based. Omitted relations are trivial tails.
struct PcPresentation {
  int prime = 0;
  std::array<Exponents, kNumGens> power_tails{};
  std::array<std::array<Exponents, kNumGens>, kNumGens> comm_tails{};

  /// Throws std::invalid_argument when p is not an odd prime > 3 (p = 3 is
  /// accepted for the abelian oracles only when allow_three is set), an
  /// exponent is out of range, or a tail is not supported strictly above the
  /// defining generators.
  void validate(bool allow_three = false) const;

  /// Human-readable relations, omitting trivial ones, e.g. "[g3,g1] = g4 g5^2".
  std::vector<std::string> relations() const;
};

struct ConsistencyFailure {
  std::string check;  // e.g. "g3 (g2 g1) = (g3 g2) g1"
  Element lhs;
  Element rhs;
};

struct ConsistencyReport {
  int checks_run = 0;
  std::vector<ConsistencyFailure> failures;
  bool ok() const { return failures.empty(); }
};

class PcGroup;

/// Explicit subgroup: its generators plus the sorted, closed element list.
struct Subgroup {
  std::vector<Element> generators;
  std::vector<Element> elements;

  std::size_t size() const { return elements.size(); }
  bool contains(const Element& x) const;
};

/// G/N realised on canonical coset representatives (the least element of
/// each coset).
class QuotientGroup {
 public:
  QuotientGroup(const PcGroup& group, Subgroup normal);

  std::size_t order() const { return reps_.size(); }
  const std::vector<Element>& representatives() const { return reps_; }
  const Subgroup& kernel() const { return normal_; }

  Element representative(const Element& x) const;
  Element multiply(const Element& a, const Element& b) const;
  bool is_abelian() const;

 private:
  const PcGroup* group_;
  Subgroup normal_;
  std::vector<Element> reps_;
  std::vector<std::uint32_t> rep_of_code_;
};

class PcGroup {
 public:
  /// Validates the presentation; consistency is checked separately.
  explicit PcGroup(PcPresentation presentation, bool allow_three = false);

  const PcPresentation& presentation() const { return pres_; }
  int prime() const { return pres_.prime; }
  std::uint32_t order() const { return order_; }

  Element identity() const { return Element{}; }

  Element normalize(const Word& word) const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  /// a b a^-1
  Element conjugate(const Element& a, const Element& b) const;
  /// a^-1 b^-1 a b
  Element commutator(const Element& a, const Element& b) const;
  Element power(const Element& a, long long n) const;
  /// Smallest p^k with a^(p^k) = 1.
  std::uint64_t element_order(const Element& a) const;

  /// Dense index of a normal form in [0, p^5).
  std::uint32_t code(const Element& x) const;
  Element decode(std::uint32_t code) const;

  ConsistencyReport consistency_check() const;

  /// Closure of g1..g5. Throws InconsistentPresentation, naming the first
  /// failing check, unless the presentation is consistent and the closure has
  /// p^5 elements.
  std::vector<Element> enumerate() const;

  Subgroup subgroup_closure(std::vector<Element> gens) const;
  Subgroup normal_closure(std::vector<Element> gens) const;
  bool is_normal(const Subgroup& h) const;

  Subgroup whole() const;
  Subgroup derived_subgroup() const;
  Subgroup center() const;
  std::vector<Subgroup> lower_central_series() const;
  int nilpotency_class() const;
  std::uint64_t exponent() const;

  /// Throws NotNormal when n is not normal in G.
  QuotientGroup quotient(const Subgroup& n) const;

 private:
  void collect(Exponents& state, std::vector<Letter>& stack) const;
  void push_normal_form(std::vector<Letter>& stack, const Exponents& e) const;

  PcPresentation pres_;
  std::uint32_t order_;
  std::array<Element, kNumGens> gen_inverse_{};
  // conj_[((i * 5 + k) * p + e) * p + c] = g_i^-c g_k^e g_i^c for k > i
  std::vector<Exponents> conj_;
};

/// Abelian invariants of an abelian subgroup by counting solutions of
/// x^(p^k) = 1. Throws NotAbelian if two generators fail to commute.
AbelianType abelian_invariants_of(const PcGroup& group, const Subgroup& h);

/// Same for an abelian quotient group.
AbelianType abelian_invariants_of(const PcGroup& group, const QuotientGroup& q);

}  // namespace pgroup
