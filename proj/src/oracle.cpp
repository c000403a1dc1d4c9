#include "pgroup/oracle.hpp"

#include <chrono>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <sstream>

namespace pgroup {

namespace {

constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

long mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

// Mixed-radix encoding of vectors with the given moduli.
class Radix {
 public:
  explicit Radix(std::vector<long> moduli) : moduli_(std::move(moduli)) {
    size_ = 1;
    for (long n : moduli_) size_ *= static_cast<std::uint64_t>(n);
  }
  std::uint64_t size() const { return size_; }
  std::uint64_t encode(const std::vector<long>& v) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) c = c * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(v[i]);
    return c;
  }
  std::vector<long> decode(std::uint64_t c) const {
    std::vector<long> v(moduli_.size());
    for (std::size_t i = moduli_.size(); i-- > 0;) {
      v[i] = static_cast<long>(c % static_cast<std::uint64_t>(moduli_[i]));
      c /= static_cast<std::uint64_t>(moduli_[i]);
    }
    return v;
  }
  std::vector<long> add(const std::vector<long>& a, const std::vector<long>& b) const {
    std::vector<long> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % moduli_[i];
    return r;
  }

 private:
  std::vector<long> moduli_;
  std::uint64_t size_;
};

// Subgroup of a finite abelian group grown one generator at a time:
// <H, g> is the union of the cosets H + kg.
class AbelianClosure {
 public:
  explicit AbelianClosure(const Radix& radix) : radix_(radix), in_(radix.size(), 0) {
    members_.push_back(0);
    in_[0] = 1;
  }

  void add(const std::vector<long>& g) {
    if (in_[radix_.encode(g)]) return;
    std::vector<std::vector<long>> base;
    base.reserve(members_.size());
    for (std::uint64_t c : members_) base.push_back(radix_.decode(c));
    std::vector<long> shift = g;
    while (!in_[radix_.encode(shift)]) {
      for (const auto& h : base) {
        std::uint64_t c = radix_.encode(radix_.add(h, shift));
        if (!in_[c]) {
          in_[c] = 1;
          members_.push_back(c);
        }
      }
      shift = radix_.add(shift, g);
    }
  }

  bool contains(std::uint64_t code) const { return in_[code] != 0; }
  const std::vector<std::uint64_t>& members() const { return members_; }
  std::uint64_t size() const { return members_.size(); }

 private:
  const Radix& radix_;
  std::vector<char> in_;
  std::vector<std::uint64_t> members_;
};

std::optional<std::pair<int, int>> prime_power(long n) {
  if (n < 2) return std::nullopt;
  long p = 2;
  while (n % p != 0) ++p;
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1) return std::nullopt;
  return std::make_pair(static_cast<int>(p), e);
}

// Non-increasing exponent lists with at most `parts` entries, each <= top.
void partitions(int parts, int top, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  if (static_cast<int>(cur.size()) == parts) return;
  const int hi = cur.empty() ? top : cur.back();
  for (int e = 1; e <= hi; ++e) {
    cur.push_back(e);
    partitions(parts, top, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PGROUP_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return kDefaultSeed;
}

AbelianType bilinear_tensor_oracle(const AbelianType& a, const AbelianType& b, int prime) {
  const auto& x = a.exponents();
  const auto& y = b.exponents();
  const std::size_t r = x.size(), s = y.size();
  if (r == 0 || s == 0) return AbelianType::trivial();
  auto ppow = [prime](int e) {
    mpz_class n;
    mpz_ui_pow_ui(n.get_mpz_t(), static_cast<unsigned long>(prime), static_cast<unsigned long>(e));
    return n;
  };
  IntegerMatrix rel(0, r * s);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      std::vector<mpz_class> left(r * s), right(r * s);
      left[i * s + j] = ppow(x[i]);
      right[i * s + j] = ppow(y[j]);
      rel.append_row(left);
      rel.append_row(right);
    }
  return AbelianType::from_cyclic_orders(prime, cokernel(rel));
}

OracleReport bilinear_sweep(const std::vector<int>& primes, int max_factors, int max_exp) {
  Stopwatch clock;
  OracleReport rep{"bilinear_tensor", 0, 0, {}, 0};
  std::vector<std::vector<int>> types;
  std::vector<int> cur;
  partitions(max_factors, max_exp, cur, types);
  for (int p : primes)
    for (const auto& ea : types)
      for (const auto& eb : types) {
        AbelianType a(ea), b(eb);
        AbelianType want = tensor_ab(a, b), got = bilinear_tensor_oracle(a, b, p);
        ++rep.cases;
        if (got != want) {
          ++rep.mismatches;
          if (rep.failures.size() < 10)
            rep.failures.push_back("p=" + std::to_string(p) + " " + a.to_string() + " (x) " + b.to_string() + ": oracle " +
                                   got.to_string() + ", formula " + want.to_string());
        }
      }
  rep.seconds = clock.seconds();
  return rep;
}

QuadraticModel::QuadraticModel(std::vector<long> moduli) : moduli_(std::move(moduli)) {
  for (long n : moduli_)
    if (n < 1) throw std::invalid_argument("moduli must be positive");
  value_moduli_ = moduli_;
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    for (std::size_t j = i + 1; j < moduli_.size(); ++j) value_moduli_.push_back(std::gcd(moduli_[i], moduli_[j]));
}

std::uint64_t QuadraticModel::group_order() const {
  std::uint64_t n = 1;
  for (long m : moduli_) n *= static_cast<std::uint64_t>(m);
  return n;
}

std::uint64_t QuadraticModel::value_space_order() const {
  std::uint64_t n = 1;
  for (long m : value_moduli_) n *= static_cast<std::uint64_t>(m);
  return n;
}

std::vector<long> QuadraticModel::evaluate(const std::vector<long>& x) const {
  std::vector<long> v;
  v.reserve(value_moduli_.size());
  for (std::size_t i = 0; i < moduli_.size(); ++i) v.push_back(mod(x[i] * x[i], moduli_[i]));
  std::size_t slot = moduli_.size();
  for (std::size_t i = 0; i < moduli_.size(); ++i)
    for (std::size_t j = i + 1; j < moduli_.size(); ++j) v.push_back(mod(x[i] * x[j], value_moduli_[slot++]));
  return v;
}

std::vector<long> QuadraticModel::add(const std::vector<long>& x, const std::vector<long>& y) const {
  std::vector<long> r(moduli_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(x[i] + y[i], moduli_[i]);
  return r;
}

std::vector<long> QuadraticModel::negate(const std::vector<long>& x) const {
  std::vector<long> r(moduli_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(-x[i], moduli_[i]);
  return r;
}

std::vector<long> QuadraticModel::add_values(const std::vector<long>& u, const std::vector<long>& v) const {
  std::vector<long> r(value_moduli_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(u[i] + v[i], value_moduli_[i]);
  return r;
}

GammaVerdict gamma_relation_check(const QuadraticModel& model, std::size_t trials, std::mt19937_64& rng) {
  GammaVerdict v;
  const auto& mods = model.moduli();
  auto random_element = [&] {
    std::vector<long> x(mods.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::uniform_int_distribution<long>(0, mods[i] - 1)(rng);
    return x;
  };
  auto g = [&](const std::vector<long>& x) { return model.evaluate(x); };

  for (std::size_t t = 0; t < trials; ++t) {
    const auto a = random_element(), b = random_element(), c = random_element();
    if (g(model.negate(a)) != g(a)) ++v.relation_i_failures;
    auto lhs = model.add_values(model.add_values(g(model.add(model.add(a, b), c)), g(a)), model.add_values(g(b), g(c)));
    auto rhs = model.add_values(model.add_values(g(model.add(a, b)), g(model.add(b, c))), g(model.add(c, a)));
    if (lhs != rhs) ++v.relation_ii_failures;
  }
  v.trials = trials;

  Radix domain(mods), values(model.value_moduli());
  AbelianClosure span(values);
  for (std::uint64_t c = 0; c < domain.size(); ++c) span.add(g(domain.decode(c)));
  v.generated_order = span.size();

  // |Gamma(A)| from the abelian calculus when A is a p-group, otherwise from
  // the cyclic decomposition directly
  std::optional<int> prime;
  std::vector<int> exps;
  bool single_prime = true;
  for (long n : mods) {
    if (n == 1) continue;
    auto pp = prime_power(n);
    if (!pp || (prime && *prime != pp->first)) {
      single_prime = false;
      break;
    }
    prime = pp->first;
    exps.push_back(pp->second);
  }
  if (single_prime && prime && *prime % 2 == 1) {
    v.expected_order = gamma(AbelianType(exps), *prime).order(*prime).get_ui();
  } else {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < mods.size(); ++i) {
      n *= static_cast<std::uint64_t>(mods[i]);
      for (std::size_t j = i + 1; j < mods.size(); ++j) n *= static_cast<std::uint64_t>(std::gcd(mods[i], mods[j]));
    }
    v.expected_order = n;
  }
  return v;
}

OracleReport gamma_sweep(long max_modulus, std::size_t trials, std::uint64_t seed) {
  Stopwatch clock;
  OracleReport rep{"gamma_relations", 0, 0, {}, 0};
  std::mt19937_64 rng(seed);
  std::vector<std::vector<long>> models;
  for (long n = 3; n <= max_modulus; n += 2) models.push_back({n});
  for (long n = 3; n <= max_modulus; n += 2)
    for (long m = n; m <= max_modulus; m += 2) models.push_back({n, m});
  for (const auto& mods : models) {
    GammaVerdict v = gamma_relation_check(QuadraticModel(mods), trials, rng);
    ++rep.cases;
    if (!v.ok()) {
      ++rep.mismatches;
      if (rep.failures.size() < 10) {
        std::ostringstream os;
        os << "moduli";
        for (long n : mods) os << ' ' << n;
        os << ": relation (i) failures " << v.relation_i_failures << ", relation (ii) failures " << v.relation_ii_failures
           << ", generated order " << v.generated_order << " vs " << v.expected_order;
        rep.failures.push_back(os.str());
      }
    }
  }
  rep.seconds = clock.seconds();
  return rep;
}

std::pair<AbelianType, AbelianType> counting_and_snf(const CountingInstance& inst) {
  const int p = inst.prime;
  long q = 1;
  for (int i = 0; i < inst.c; ++i) q *= p;
  Radix ambient(std::vector<long>(static_cast<std::size_t>(inst.m), q));

  AbelianClosure rel(ambient);
  for (const auto& row : inst.rows) {
    std::vector<long> r(row.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = mod(row[i], q);
    rel.add(r);
  }

  // one representative per coset, then its order modulo the relations
  std::vector<char> seen(ambient.size(), 0);
  std::vector<int> order_log;
  for (std::uint64_t code = 0; code < ambient.size(); ++code) {
    if (seen[code]) continue;
    const std::vector<long> x = ambient.decode(code);
    for (std::uint64_t r : rel.members()) seen[ambient.encode(ambient.add(x, ambient.decode(r)))] = 1;
    std::vector<long> y = x;
    int k = 0;
    while (!rel.contains(ambient.encode(y))) {
      for (long& v : y) v = v * p % q;
      ++k;
    }
    order_log.push_back(k);
  }
  std::vector<int> counts;
  for (int k = 0; k <= inst.c; ++k) {
    std::uint64_t n = 0;
    for (int o : order_log) n += o <= k ? 1 : 0;
    int lg = 0;
    while (n > 1) {
      n /= static_cast<std::uint64_t>(p);
      ++lg;
    }
    counts.push_back(lg);
  }
  AbelianType counted = type_from_torsion_counts(counts);

  IntegerMatrix m(0, static_cast<std::size_t>(inst.m));
  for (const auto& row : inst.rows) m.append_row(std::vector<mpz_class>(row.begin(), row.end()));
  for (int i = 0; i < inst.m; ++i) {
    std::vector<mpz_class> row(static_cast<std::size_t>(inst.m));
    row[static_cast<std::size_t>(i)] = q;
    m.append_row(row);
  }
  return {counted, AbelianType::from_cyclic_orders(p, cokernel(m))};
}

OracleReport counting_vs_snf(std::size_t trials, std::uint64_t seed) {
  Stopwatch clock;
  OracleReport rep{"counting_vs_snf", 0, 0, {}, 0};
  std::mt19937_64 rng(seed);
  const int primes[] = {3, 5, 7};
  constexpr long kMaxAmbient = 20000;
  for (std::size_t t = 0; t < trials; ++t) {
    CountingInstance inst;
    inst.prime = primes[std::uniform_int_distribution<int>(0, 2)(rng)];
    inst.c = std::uniform_int_distribution<int>(1, 3)(rng);
    long q = 1;
    for (int i = 0; i < inst.c; ++i) q *= inst.prime;
    int max_m = 0;
    for (long size = q; size <= kMaxAmbient && max_m < 4; size *= q) ++max_m;
    if (max_m == 0) {
      inst.c = 1;
      q = inst.prime;
      max_m = 1;
    }
    inst.m = std::uniform_int_distribution<int>(1, max_m)(rng);
    const int nrows = std::uniform_int_distribution<int>(0, inst.m + 1)(rng);
    for (int r = 0; r < nrows; ++r) {
      std::vector<long> row(static_cast<std::size_t>(inst.m));
      for (long& v : row) v = std::uniform_int_distribution<long>(-q, q)(rng);
      inst.rows.push_back(row);
    }
    auto [counted, smith] = counting_and_snf(inst);
    ++rep.cases;
    if (counted != smith) {
      ++rep.mismatches;
      if (rep.failures.size() < 10)
        rep.failures.push_back("p=" + std::to_string(inst.prime) + " c=" + std::to_string(inst.c) + " m=" + std::to_string(inst.m) +
                               ": counting " + counted.to_string() + ", SNF " + smith.to_string());
    }
  }
  rep.seconds = clock.seconds();
  return rep;
}

}  // namespace pgroup
