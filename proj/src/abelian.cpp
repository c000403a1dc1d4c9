#include "pgroup/abelian.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <sstream>

#include "pgroup/pc_engine.hpp"

namespace pgroup {

AbelianType::AbelianType(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_)
    if (e < 0) throw std::invalid_argument("negative exponent in abelian type");
  std::erase(exps_, 0);
  std::sort(exps_.begin(), exps_.end(), std::greater<>());
}

namespace {

class TypeParser {
 public:
  explicit TypeParser(std::string_view s) : s_(s) {}

  AbelianType parse() {
    skip_ws();
    if (peek() == '1') {
      ++pos_;
      skip_ws();
      if (pos_ != s_.size()) fail("trailing input after trivial group");
      return {};
    }
    std::vector<int> exps;
    for (;;) {
      factor(exps);
      skip_ws();
      if (pos_ == s_.size()) break;
      expect('+');
    }
    return AbelianType(std::move(exps));
  }

 private:
  // Z_p | Z_{p^e}, optionally followed by ^m or ^(m)
  void factor(std::vector<int>& out) {
    skip_ws();
    expect('Z');
    expect('_');
    int e = 1;
    if (peek() == '{') {
      ++pos_;
      expect('p');
      expect('^');
      e = number();
      expect('}');
    } else {
      expect('p');
    }
    int mult = 1;
    if (peek() == '^') {
      ++pos_;
      if (peek() == '(') {
        ++pos_;
        mult = number();
        expect(')');
      } else {
        mult = number();
      }
    }
    if (e < 1 || mult < 1) fail("exponents must be positive");
    out.insert(out.end(), static_cast<std::size_t>(mult), e);
  }

  int number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoi(std::string(s_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad abelian type '" + std::string(s_) + "': " + why);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string render(const std::vector<int>& exps, const std::function<std::string(int)>& base) {
  if (exps.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < exps.size();) {
    std::size_t j = i;
    while (j < exps.size() && exps[j] == exps[i]) ++j;
    if (!out.empty()) out += " + ";
    out += base(exps[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace

AbelianType AbelianType::parse(std::string_view text) { return TypeParser(text).parse(); }

AbelianType AbelianType::from_cyclic_orders(int prime, const std::vector<mpz_class>& orders) {
  std::vector<int> exps;
  for (mpz_class n : orders) {
    n = abs(n);
    if (n == 0) throw std::invalid_argument("infinite cyclic factor in a finite p-group");
    int e = 0;
    while (n % prime == 0) {
      n /= prime;
      ++e;
    }
    if (n != 1) throw std::invalid_argument("cyclic order is not a power of " + std::to_string(prime));
    exps.push_back(e);
  }
  return AbelianType(std::move(exps));
}

bool AbelianType::is_elementary() const {
  return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 1; });
}

int AbelianType::log_order() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

mpz_class AbelianType::order(int prime) const {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(prime), static_cast<unsigned long>(log_order()));
  return r;
}

bool AbelianType::embeds_in(const AbelianType& ambient) const {
  if (rank() > ambient.rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i)
    if (exps_[i] > ambient.exps_[i]) return false;
  return true;
}

std::string AbelianType::to_string() const {
  return render(exps_, [](int e) { return e == 1 ? std::string("Z_p") : "Z_{p^" + std::to_string(e) + "}"; });
}

std::string AbelianType::to_string(int prime) const {
  return render(exps_, [prime](int e) {
    mpz_class n;
    mpz_ui_pow_ui(n.get_mpz_t(), static_cast<unsigned long>(prime), static_cast<unsigned long>(e));
    return "Z_" + n.get_str();
  });
}

TensorStructure TensorStructure::parse(std::string_view text) {
  TensorStructure t;
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  if (text.substr(i, 2) == "E1") {
    t.e1_factor = true;
    i += 2;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) return t;
    if (text[i] != 'x') throw std::invalid_argument("bad tensor structure '" + std::string(text) + "': expected 'x'");
    ++i;
  }
  t.abelian_part = AbelianType::parse(text.substr(i));
  return t;
}

std::string TensorStructure::to_string() const {
  if (!e1_factor) return abelian_part.to_string();
  return abelian_part.is_trivial() ? "E1" : "E1 x " + abelian_part.to_string();
}

std::string TensorStructure::to_string(int prime) const {
  if (!e1_factor) return abelian_part.to_string(prime);
  return abelian_part.is_trivial() ? "E1" : "E1 x " + abelian_part.to_string(prime);
}

AbelianType direct_sum(const AbelianType& a, const AbelianType& b) {
  std::vector<int> e = a.exponents();
  e.insert(e.end(), b.exponents().begin(), b.exponents().end());
  return AbelianType(std::move(e));
}

AbelianType tensor_ab(const AbelianType& a, const AbelianType& b) {
  std::vector<int> e;
  for (int x : a.exponents())
    for (int y : b.exponents()) e.push_back(std::min(x, y));
  return AbelianType(std::move(e));
}

AbelianType wedge_ab(const AbelianType& a) {
  const auto& x = a.exponents();
  std::vector<int> e;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) e.push_back(std::min(x[i], x[j]));
  return AbelianType(std::move(e));
}

AbelianType gamma(const AbelianType& a, int prime) {
  if (prime % 2 == 0 && !a.is_trivial())
    throw EvenOrderUnsupported("Gamma is only implemented for groups of odd order");
  return direct_sum(a, wedge_ab(a));
}

AbelianType type_from_torsion_counts(const std::vector<int>& counts) {
  if (counts.empty() || counts[0] != 0) throw std::invalid_argument("torsion counts must start at 0");
  std::vector<int> exps;
  auto at_least = [&](std::size_t k) { return k < counts.size() ? counts[k] - counts[k - 1] : 0; };
  for (std::size_t k = 1; k < counts.size(); ++k) {
    int exactly = at_least(k) - at_least(k + 1);
    if (exactly < 0) throw std::invalid_argument("torsion counts are not those of a finite abelian p-group");
    exps.insert(exps.end(), static_cast<std::size_t>(exactly), static_cast<int>(k));
  }
  return AbelianType(std::move(exps));
}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : r) data_.emplace_back(v);
  }
}

void IntegerMatrix::append_row(const std::vector<mpz_class>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<mpz_class> snf(IntegerMatrix m) {
  const std::size_t r = m.rows(), c = m.cols(), n = std::min(r, c);
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a != b)
      for (std::size_t j = 0; j < c; ++j) std::swap(m.at(a, j), m.at(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a != b)
      for (std::size_t i = 0; i < r; ++i) std::swap(m.at(i, a), m.at(i, b));
  };

  std::vector<mpz_class> diag(n);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest non-zero entry of the trailing block becomes the pivot
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (m.at(i, j) != 0 && (!found || abs(m.at(i, j)) < abs(m.at(pi, pj)))) {
            found = true;
            pi = i;
            pj = j;
          }
      if (!found) return diag;
      swap_rows(t, pi);
      swap_cols(t, pj);

      const mpz_class piv = m.at(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (m.at(i, t) == 0) continue;
        mpz_class q = m.at(i, t) / piv;
        for (std::size_t j = t; j < c; ++j) m.at(i, j) -= q * m.at(t, j);
        if (m.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (m.at(t, j) == 0) continue;
        mpz_class q = m.at(t, j) / piv;
        for (std::size_t i = t; i < r; ++i) m.at(i, j) -= q * m.at(i, t);
        if (m.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // enforce d_t | every later entry
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (m.at(i, j) % piv != 0) {
            for (std::size_t k = t; k < c; ++k) m.at(t, k) += m.at(i, k);
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag[t] = abs(m.at(t, t));
  }
  return diag;
}

std::vector<mpz_class> cokernel(const IntegerMatrix& m) {
  std::vector<mpz_class> d = snf(m);
  std::vector<mpz_class> out;
  for (const auto& x : d)
    if (x != 1) out.push_back(x);
  for (std::size_t k = d.size(); k < m.cols(); ++k) out.emplace_back(0);
  return out;
}

AbelianType ab_from_presentation(const PcPresentation& pres) {
  IntegerMatrix rel(0, kNumGens);
  for (int i = 0; i < kNumGens; ++i) {
    std::vector<mpz_class> row(kNumGens);
    for (int k = 0; k < kNumGens; ++k) row[k] = -pres.power_tails[i][k];
    row[i] += pres.prime;
    rel.append_row(row);
  }
  for (int j = 0; j < kNumGens; ++j)
    for (int i = 0; i < j; ++i) {
      const auto& t = pres.comm_tails[j][i];
      if (std::all_of(t.begin(), t.end(), [](int e) { return e == 0; })) continue;
      rel.append_row(std::vector<mpz_class>(t.begin(), t.end()));
    }
  return AbelianType::from_cyclic_orders(pres.prime, cokernel(rel));
}

}  // namespace pgroup
