#include "pgroup/pc_engine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace pgroup {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint32_t ipow(std::uint32_t b, int e) {
  std::uint32_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int exact_log(std::uint64_t n, int p) {
  int k = 0;
  while (n > 1) {
    if (n % static_cast<std::uint64_t>(p) != 0) return -1;
    n /= static_cast<std::uint64_t>(p);
    ++k;
  }
  return k;
}

std::string render_exps(const Exponents& e) {
  std::string out;
  for (int i = 0; i < kNumGens; ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += 'g' + std::to_string(i + 1);
    if (e[i] != 1) out += '^' + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace

Element generator(int index) {
  if (index < 1 || index > kNumGens) throw std::out_of_range("generator index must be in 1..5");
  Element g;
  g.exps[static_cast<std::size_t>(index - 1)] = 1;
  return g;
}

std::string to_string(const Element& x) { return render_exps(x.exps); }

void PcPresentation::validate(bool allow_three) const {
  if (!is_prime(prime) || prime == 2 || (prime == 3 && !allow_three))
    throw std::invalid_argument("prime must be an odd prime greater than 3, got " + std::to_string(prime));
  auto check = [&](const Exponents& t, int lowest, const std::string& what) {
    for (int k = 0; k < kNumGens; ++k) {
      if (t[k] < 0 || t[k] >= prime) throw std::invalid_argument(what + ": exponent out of range");
      if (t[k] != 0 && k < lowest) throw std::invalid_argument(what + ": tail must use higher generators only");
    }
  };
  for (int i = 0; i < kNumGens; ++i) check(power_tails[i], i + 1, "g" + std::to_string(i + 1) + "^p");
  for (int j = 0; j < kNumGens; ++j)
    for (int i = 0; i < kNumGens; ++i) {
      std::string what = "[g" + std::to_string(j + 1) + ",g" + std::to_string(i + 1) + "]";
      if (j <= i) {
        if (std::any_of(comm_tails[j][i].begin(), comm_tails[j][i].end(), [](int e) { return e != 0; }))
          throw std::invalid_argument(what + ": only [g_j,g_i] with j > i may be given");
        continue;
      }
      check(comm_tails[j][i], j + 1, what);
    }
}

std::vector<std::string> PcPresentation::relations() const {
  std::vector<std::string> out;
  auto trivial = [](const Exponents& t) { return std::all_of(t.begin(), t.end(), [](int e) { return e == 0; }); };
  for (int j = 1; j < kNumGens; ++j)
    for (int i = 0; i < j; ++i)
      if (!trivial(comm_tails[j][i]))
        out.push_back("[g" + std::to_string(j + 1) + ",g" + std::to_string(i + 1) + "] = " + render_exps(comm_tails[j][i]));
  for (int i = 0; i < kNumGens; ++i)
    if (!trivial(power_tails[i])) out.push_back("g" + std::to_string(i + 1) + "^p = " + render_exps(power_tails[i]));
  return out;
}

bool Subgroup::contains(const Element& x) const { return std::binary_search(elements.begin(), elements.end(), x); }

PcGroup::PcGroup(PcPresentation presentation, bool allow_three) : pres_(std::move(presentation)) {
  pres_.validate(allow_three);
  order_ = ipow(static_cast<std::uint32_t>(pres_.prime), kNumGens);
  const int p = pres_.prime;
  const auto slot = [p](int i, int k, int e, int c) {
    return static_cast<std::size_t>(((i * kNumGens + k) * p + e) * p + c);
  };
  conj_.assign(static_cast<std::size_t>(kNumGens * kNumGens * p * p), Exponents{});
  // tables for g_i only need collection above i, so fill them top-down
  for (int i = kNumGens - 2; i >= 0; --i) {
    for (int k = i + 1; k < kNumGens; ++k) {
      // (g_k^e)^(g_i) = (g_k [g_k,g_i])^e
      Element base;
      base.exps = pres_.comm_tails[k][i];
      base.exps[k] = 1;
      Element acc;
      for (int e = 1; e < p; ++e) {
        acc = multiply(acc, base);
        conj_[slot(i, k, e, 1)] = acc.exps;
      }
    }
    for (int c = 2; c < p; ++c)
      for (int k = i + 1; k < kNumGens; ++k)
        for (int e = 1; e < p; ++e) {
          const Exponents& y = conj_[slot(i, k, e, c - 1)];
          Element z;
          for (int m = k; m < kNumGens; ++m)
            if (y[m] != 0) z = multiply(z, Element{conj_[slot(i, m, y[m], 1)]});
          conj_[slot(i, k, e, c)] = z.exps;
        }
  }
  // g_i^-1 = g_i^(p-1) (g_i^p)^-1, where g_i^p is a word in higher generators
  for (int i = kNumGens - 1; i >= 0; --i) {
    Element head;
    head.exps[static_cast<std::size_t>(i)] = pres_.prime - 1;
    gen_inverse_[static_cast<std::size_t>(i)] = multiply(head, inverse(Element{pres_.power_tails[static_cast<std::size_t>(i)]}));
  }
}

void PcGroup::push_normal_form(std::vector<Letter>& stack, const Exponents& e) const {
  for (int k = kNumGens - 1; k >= 0; --k)
    if (e[k] != 0) stack.push_back({k, e[k]});
}

// Collection from the left. `stack` holds 0-based letters with positive
// exponents; its top is the next letter to multiply onto `x`.
void PcGroup::collect(Exponents& x, std::vector<Letter>& stack) const {
  const int p = pres_.prime;
  std::vector<Letter> seq;
  while (!stack.empty()) {
    const Letter l = stack.back();
    stack.pop_back();
    const int i = l.gen;
    if (l.exp == 0) continue;

    bool suffix_trivial = true;
    for (int k = i + 1; k < kNumGens; ++k)
      if (x[k] != 0) {
        suffix_trivial = false;
        break;
      }

    if (suffix_trivial) {
      x[i] += l.exp;
      if (x[i] >= p) {
        x[i] -= p;
        // the power tail lives strictly above i, where x is still zero
        for (int k = i + 1; k < kNumGens; ++k) x[k] = pres_.power_tails[i][k];
      }
      continue;
    }

    // x = prefix g_i^e s  ->  x g_i^c = prefix g_i^(e+c) (s^(g_i^c)), one
    // factor g_k^(s_k) of s at a time
    const int c = l.exp;
    Exponents suffix{};
    for (int k = i + 1; k < kNumGens; ++k) {
      suffix[k] = x[k];
      x[k] = 0;
    }
    seq.clear();
    x[i] += c;
    if (x[i] >= p) {
      x[i] -= p;
      for (int k = i + 1; k < kNumGens; ++k)
        if (pres_.power_tails[i][k] != 0) seq.push_back({k, pres_.power_tails[i][k]});
    }
    for (int k = i + 1; k < kNumGens; ++k) {
      if (suffix[k] == 0) continue;
      const Exponents& t = conj_[static_cast<std::size_t>(((i * kNumGens + k) * p + suffix[k]) * p + c)];
      for (int m = k; m < kNumGens; ++m)
        if (t[m] != 0) seq.push_back({m, t[m]});
    }
    stack.insert(stack.end(), seq.rbegin(), seq.rend());
  }
}

Element PcGroup::normalize(const Word& word) const {
  std::vector<Letter> stack;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->gen < 1 || it->gen > kNumGens) throw std::out_of_range("generator index must be in 1..5");
    const int g = it->gen - 1;
    if (it->exp >= 0) {
      // large exponents are split so every stacked letter stays below p
      int e = it->exp;
      while (e > 0) {
        int chunk = std::min(e, pres_.prime - 1);
        stack.push_back({g, chunk});
        e -= chunk;
      }
    } else {
      for (int r = 0; r < -it->exp; ++r) push_normal_form(stack, gen_inverse_[static_cast<std::size_t>(g)].exps);
    }
  }
  Element x;
  collect(x.exps, stack);
  return x;
}

Element PcGroup::multiply(const Element& a, const Element& b) const {
  std::vector<Letter> stack;
  push_normal_form(stack, b.exps);
  Element x = a;
  collect(x.exps, stack);
  return x;
}

Element PcGroup::inverse(const Element& a) const {
  // right-divide a down to the identity, one leading generator at a time
  Element z = a;
  Exponents acc{};
  std::vector<Letter> factors;
  for (int i = 0; i < kNumGens; ++i) {
    if (z.exps[i] == 0) continue;
    const int c = pres_.prime - z.exps[i];
    std::vector<Letter> stack{{i, c}};
    collect(z.exps, stack);
    factors.push_back({i, c});
  }
  std::vector<Letter> stack;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) stack.push_back(*it);
  collect(acc, stack);
  return Element{acc};
}

Element PcGroup::conjugate(const Element& a, const Element& b) const {
  return multiply(multiply(a, b), inverse(a));
}

Element PcGroup::commutator(const Element& a, const Element& b) const {
  return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
}

Element PcGroup::power(const Element& a, long long n) const {
  Element base = n < 0 ? inverse(a) : a;
  unsigned long long m = n < 0 ? static_cast<unsigned long long>(-n) : static_cast<unsigned long long>(n);
  Element result;
  while (m > 0) {
    if (m & 1ULL) result = multiply(result, base);
    m >>= 1;
    if (m) base = multiply(base, base);
  }
  return result;
}

std::uint64_t PcGroup::element_order(const Element& a) const {
  std::uint64_t ord = 1;
  Element y = a;
  while (!y.is_identity()) {
    y = power(y, pres_.prime);
    ord *= static_cast<std::uint64_t>(pres_.prime);
  }
  return ord;
}

std::uint32_t PcGroup::code(const Element& x) const {
  std::uint32_t c = 0;
  for (int e : x.exps) c = c * static_cast<std::uint32_t>(pres_.prime) + static_cast<std::uint32_t>(e);
  return c;
}

Element PcGroup::decode(std::uint32_t c) const {
  Element x;
  for (int k = kNumGens - 1; k >= 0; --k) {
    x.exps[k] = static_cast<int>(c % static_cast<std::uint32_t>(pres_.prime));
    c /= static_cast<std::uint32_t>(pres_.prime);
  }
  return x;
}

ConsistencyReport PcGroup::consistency_check() const {
  ConsistencyReport report;
  const int p = pres_.prime;
  auto g = [](int i) { return generator(i + 1); };
  auto gpow = [&](int i, int e) {
    Element x;
    x.exps[i] = e;
    return x;
  };
  auto tail = [&](int i) { return Element{pres_.power_tails[i]}; };
  auto name = [](int i) { return "g" + std::to_string(i + 1); };
  auto record = [&](std::string check, const Element& lhs, const Element& rhs) {
    ++report.checks_run;
    if (lhs != rhs) report.failures.push_back({std::move(check), lhs, rhs});
  };

  for (int k = 2; k < kNumGens; ++k)
    for (int j = 1; j < k; ++j)
      for (int i = 0; i < j; ++i)
        record(name(k) + " (" + name(j) + " " + name(i) + ") = (" + name(k) + " " + name(j) + ") " + name(i),
               multiply(g(k), multiply(g(j), g(i))), multiply(multiply(g(k), g(j)), g(i)));
  for (int j = 1; j < kNumGens; ++j)
    for (int i = 0; i < j; ++i) {
      record(name(j) + "^p " + name(i) + " = " + name(j) + "^(p-1) (" + name(j) + " " + name(i) + ")",
             multiply(tail(j), g(i)), multiply(gpow(j, p - 1), multiply(g(j), g(i))));
      record(name(j) + " " + name(i) + "^p = (" + name(j) + " " + name(i) + ") " + name(i) + "^(p-1)",
             multiply(g(j), tail(i)), multiply(multiply(g(j), g(i)), gpow(i, p - 1)));
    }
  for (int i = 0; i < kNumGens; ++i)
    record(name(i) + "^p " + name(i) + " = " + name(i) + " " + name(i) + "^p", multiply(tail(i), g(i)),
           multiply(g(i), tail(i)));
  return report;
}

Subgroup PcGroup::subgroup_closure(std::vector<Element> gens) const {
  std::vector<char> in(order_, 0);
  in[code(identity())] = 1;
  std::vector<Element> useful;
  std::vector<Element> members{identity()};
  for (const Element& g : gens) {
    if (in[code(g)]) continue;
    useful.push_back(g);
    // breadth-first closure of the enlarged generating set, seeded by the
    // elements already present
    std::deque<Element> queue(members.begin(), members.end());
    while (!queue.empty()) {
      Element x = queue.front();
      queue.pop_front();
      for (const Element& h : useful) {
        Element y = multiply(x, h);
        std::uint32_t c = code(y);
        if (!in[c]) {
          in[c] = 1;
          members.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  Subgroup s;
  s.generators = std::move(useful);
  s.elements.reserve(members.size());
  for (std::uint32_t c = 0; c < order_; ++c)
    if (in[c]) s.elements.push_back(decode(c));
  return s;
}

Subgroup PcGroup::normal_closure(std::vector<Element> gens) const {
  Subgroup h = subgroup_closure(std::move(gens));
  for (;;) {
    std::vector<Element> extra;
    for (const Element& x : h.generators)
      for (int i = 1; i <= kNumGens; ++i) {
        Element g = generator(i);
        Element c = multiply(multiply(inverse(g), x), g);
        if (!h.contains(c)) extra.push_back(c);
      }
    if (extra.empty()) return h;
    std::vector<Element> next = h.generators;
    next.insert(next.end(), extra.begin(), extra.end());
    h = subgroup_closure(std::move(next));
  }
}

bool PcGroup::is_normal(const Subgroup& h) const {
  const std::vector<Element>& probe = h.generators.empty() ? h.elements : h.generators;
  for (const Element& x : probe)
    for (int i = 1; i <= kNumGens; ++i) {
      Element g = generator(i);
      if (!h.contains(multiply(multiply(inverse(g), x), g))) return false;
    }
  return true;
}

std::vector<Element> PcGroup::enumerate() const {
  // collection reaches every normal form even for inconsistent relations, so
  // the closure count alone cannot reject them
  ConsistencyReport report = consistency_check();
  if (!report.ok()) {
    const ConsistencyFailure& f = report.failures.front();
    throw InconsistentPresentation("consistency check failed: " + f.check + " (" + to_string(f.lhs) + " vs " +
                                   to_string(f.rhs) + ")");
  }
  std::vector<Element> gens;
  for (int i = 1; i <= kNumGens; ++i) gens.push_back(generator(i));
  Subgroup all = subgroup_closure(std::move(gens));
  if (all.size() != order_) {
    std::ostringstream msg;
    msg << "closure of g1..g5 has " << all.size() << " elements, expected p^5 = " << order_;
    throw InconsistentPresentation(msg.str());
  }
  return std::move(all.elements);
}

Subgroup PcGroup::whole() const {
  std::vector<Element> gens;
  for (int i = 1; i <= kNumGens; ++i) gens.push_back(generator(i));
  return subgroup_closure(std::move(gens));
}

Subgroup PcGroup::derived_subgroup() const {
  std::vector<Element> comms;
  for (int j = 2; j <= kNumGens; ++j)
    for (int i = 1; i < j; ++i) comms.push_back(commutator(generator(j), generator(i)));
  return normal_closure(std::move(comms));
}

Subgroup PcGroup::center() const {
  std::vector<Element> central;
  for (std::uint32_t c = 0; c < order_; ++c) {
    Element x = decode(c);
    bool commutes = true;
    for (int i = 1; i <= kNumGens && commutes; ++i) {
      Element g = generator(i);
      commutes = multiply(x, g) == multiply(g, x);
    }
    if (commutes) central.push_back(x);
  }
  return subgroup_closure(std::move(central));
}

std::vector<Subgroup> PcGroup::lower_central_series() const {
  std::vector<Subgroup> series{whole()};
  while (series.back().size() > 1) {
    // [N,G] is normally generated by [s,g] over generators s of N and g of G
    std::vector<Element> comms;
    for (const Element& x : series.back().generators)
      for (int i = 1; i <= kNumGens; ++i) comms.push_back(commutator(x, generator(i)));
    Subgroup next = normal_closure(std::move(comms));
    if (next.size() == series.back().size()) throw std::logic_error("lower central series stalled: group is not nilpotent");
    series.push_back(std::move(next));
  }
  return series;
}

int PcGroup::nilpotency_class() const { return static_cast<int>(lower_central_series().size()) - 1; }

std::uint64_t PcGroup::exponent() const {
  // |x| = p |x^p| for x != 1, memoised by code
  std::vector<std::uint64_t> ord(order_, 0);
  ord[0] = 1;
  std::vector<std::uint32_t> chain;
  std::uint64_t e = 1;
  for (std::uint32_t c = 1; c < order_; ++c) {
    std::uint32_t cur = c;
    while (ord[cur] == 0) {
      chain.push_back(cur);
      cur = code(power(decode(cur), pres_.prime));
    }
    std::uint64_t o = ord[cur];
    while (!chain.empty()) {
      o *= static_cast<std::uint64_t>(pres_.prime);
      ord[chain.back()] = o;
      chain.pop_back();
    }
    e = std::max(e, ord[c]);
  }
  return e;
}

QuotientGroup PcGroup::quotient(const Subgroup& n) const {
  if (!is_normal(n)) throw NotNormal("subgroup is not normal");
  return QuotientGroup(*this, n);
}

QuotientGroup::QuotientGroup(const PcGroup& group, Subgroup normal)
    : group_(&group), normal_(std::move(normal)), rep_of_code_(group.order(), UINT32_MAX) {
  for (std::uint32_t c = 0; c < group.order(); ++c) {
    if (rep_of_code_[c] != UINT32_MAX) continue;
    Element x = group.decode(c);
    for (const Element& n : normal_.elements) rep_of_code_[group.code(group.multiply(x, n))] = c;
    reps_.push_back(x);
  }
}

Element QuotientGroup::representative(const Element& x) const { return group_->decode(rep_of_code_[group_->code(x)]); }

Element QuotientGroup::multiply(const Element& a, const Element& b) const {
  return representative(group_->multiply(a, b));
}

bool QuotientGroup::is_abelian() const {
  for (int j = 1; j <= kNumGens; ++j)
    for (int i = 1; i < j; ++i) {
      Element a = generator(j), b = generator(i);
      if (multiply(a, b) != multiply(b, a)) return false;
    }
  return true;
}

namespace {

AbelianType type_from_orders(const std::vector<std::uint64_t>& orders, int p, std::size_t size) {
  int top = exact_log(size, p);
  std::vector<int> counts;
  std::uint64_t bound = 1;
  for (int k = 0; k <= top; ++k) {
    std::uint64_t cnt = static_cast<std::uint64_t>(
        std::count_if(orders.begin(), orders.end(), [&](std::uint64_t o) { return o <= bound; }));
    int lg = exact_log(cnt, p);
    if (lg < 0) throw NotAbelian("torsion count is not a power of p");
    counts.push_back(lg);
    bound *= static_cast<std::uint64_t>(p);
  }
  return type_from_torsion_counts(counts);
}

}  // namespace

AbelianType abelian_invariants_of(const PcGroup& group, const Subgroup& h) {
  const auto& gens = h.generators;
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (std::size_t b = a + 1; b < gens.size(); ++b)
      if (group.multiply(gens[a], gens[b]) != group.multiply(gens[b], gens[a]))
        throw NotAbelian("generators " + to_string(gens[a]) + " and " + to_string(gens[b]) + " do not commute");
  std::vector<std::uint64_t> orders;
  orders.reserve(h.size());
  for (const Element& x : h.elements) orders.push_back(group.element_order(x));
  return type_from_orders(orders, group.prime(), h.size());
}

AbelianType abelian_invariants_of(const PcGroup& group, const QuotientGroup& q) {
  if (!q.is_abelian()) throw NotAbelian("quotient group is not abelian");
  const int p = group.prime();
  std::vector<std::uint64_t> orders;
  orders.reserve(q.order());
  for (const Element& x : q.representatives()) {
    std::uint64_t ord = 1;
    Element y = x;
    while (!q.kernel().contains(y)) {
      y = group.power(y, p);
      ord *= static_cast<std::uint64_t>(p);
    }
    orders.push_back(ord);
  }
  return type_from_orders(orders, p, q.order());
}

}  // namespace pgroup
