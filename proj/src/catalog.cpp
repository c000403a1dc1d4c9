#include "pgroup/catalog.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <json.hpp>
#include <regex>

#include "catalog_data.inc"

namespace pgroup {

using nlohmann::json;

int primitive_root(int p) {
  if (p < 2) throw std::invalid_argument("primitive_root: " + std::to_string(p) + " is not prime");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::invalid_argument("primitive_root: " + std::to_string(p) + " is not prime");
  if (p == 2) return 1;
  for (int w = 2; w < p; ++w) {
    int x = 1, ord = 0;
    do {
      x = x * w % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return w;
  }
  return 1;
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view s, int prime, const Params& vars) : s_(s), prime_(prime), vars_(vars) {}

  mpz_class run() {
    mpz_class v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  mpz_class expr() {
    mpz_class v = term();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') return v;
      ++pos_;
      mpz_class rhs = term();
      v = c == '+' ? mpz_class(v + rhs) : mpz_class(v - rhs);
    }
  }

  mpz_class term() {
    mpz_class v = factor();
    for (;;) {
      skip_ws();
      if (peek() != '*') return v;
      ++pos_;
      v *= factor();
    }
  }

  mpz_class factor() {
    mpz_class base = atom();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    mpz_class e = factor();
    if (e < 0 || e > 64) fail("exponent out of range");
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e.get_ui());
    return r;
  }

  mpz_class atom() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      mpz_class v = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      if (c == 'p') return prime_;
      if (c == 'w') return primitive_root(prime_);
      auto it = vars_.find(std::string(1, c));
      if (it == vars_.end()) fail(std::string("unbound parameter '") + c + "'");
      return it->second;
    }
    fail("expected a number, parameter or '('");
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("bad exponent '" + std::string(s_) + "': " + why);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int prime_;
  const Params& vars_;
};

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int gen_index(const std::string& tok, std::string_view relation) {
  static const std::regex re(R"(g([1-5]))");
  std::smatch m;
  if (!std::regex_match(tok, m, re)) throw std::invalid_argument("bad generator '" + tok + "' in '" + std::string(relation) + "'");
  return std::stoi(m[1]) - 1;
}

KCase parse_k_case(const json& row) {
  if (!row.contains("k_case")) return KCase::Any;
  const std::string s = row.at("k_case").get<std::string>();
  if (s == "generic") return KCase::Generic;
  if (s == "half") return KCase::Half;
  throw std::invalid_argument("unknown k_case '" + s + "'");
}

std::vector<ListingEntry> parse_listing(const json& j) {
  std::vector<ListingEntry> out;
  for (const auto& e : j) out.push_back({AbelianType::parse(e.at("type").get<std::string>()), e.at("rows").get<std::vector<std::string>>()});
  return out;
}

std::vector<AbelianType> listed_under(const std::vector<ListingEntry>& listing, const std::string& row) {
  std::vector<AbelianType> out;
  for (const auto& e : listing)
    for (const auto& r : e.rows)
      if (r == row) out.push_back(e.type);
  return out;
}

}  // namespace

int eval_exponent(std::string_view expr, int prime, const Params& vars) {
  mpz_class v = ExprParser(expr, prime, vars).run();
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(prime));
  return static_cast<int>(r.get_si());
}

void apply_relation(PcPresentation& pres, std::string_view relation, const Params& vars) {
  const std::size_t eq = relation.find('=');
  if (eq == std::string_view::npos) throw std::invalid_argument("relation without '=': " + std::string(relation));
  const std::string lhs = trim(relation.substr(0, eq));
  const std::string rhs = trim(relation.substr(eq + 1));

  static const std::regex power_re(R"(g([1-5])\^p)");
  static const std::regex comm_re(R"(\[\s*g([1-5])\s*,\s*g([1-5])\s*\])");
  std::smatch m;
  Exponents* tail = nullptr;
  int floor = 0;
  if (std::regex_match(lhs, m, power_re)) {
    int i = std::stoi(m[1]) - 1;
    tail = &pres.power_tails[i];
    floor = i;
  } else if (std::regex_match(lhs, m, comm_re)) {
    int j = std::stoi(m[1]) - 1, i = std::stoi(m[2]) - 1;
    if (j <= i) throw std::invalid_argument("commutator relation must be [g_j,g_i] with j > i: " + std::string(relation));
    tail = &pres.comm_tails[j][i];
    floor = j;
  } else {
    throw std::invalid_argument("unrecognised relation: " + std::string(relation));
  }

  *tail = Exponents{};
  if (rhs == "1") return;
  // tokens are separated by whitespace outside parentheses
  std::vector<std::string> tokens;
  std::string cur;
  int depth = 0;
  for (char c : rhs) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (std::isspace(static_cast<unsigned char>(c)) && depth == 0) {
      if (!cur.empty()) tokens.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) tokens.push_back(cur);

  int last = floor;
  for (const std::string& tok : tokens) {
    const std::size_t caret = tok.find('^');
    const int g = gen_index(tok.substr(0, caret), relation);
    if (g <= last) throw std::invalid_argument("tail generators must increase and exceed the defining ones: " + std::string(relation));
    last = g;
    (*tail)[g] = caret == std::string::npos ? 1 : eval_exponent(std::string_view(tok).substr(caret + 1), pres.prime, vars);
  }
}

std::string ListingConflict::describe() const {
  std::string types;
  for (const auto& t : listed) types += (types.empty() ? "" : ", ") + t.to_string();
  if (kind == "missing") return row + " is absent from the " + listing + " (table value " + table_value.to_string() + ")";
  if (kind == "mismatch")
    return row + " is listed under " + types + " in the " + listing + " but the table gives " + table_value.to_string();
  if (kind == "duplicate") return row + " is listed " + std::to_string(listed.size()) + " times under " + listed.front().to_string() + " in the " + listing;
  return row + " is listed under " + types + " in the " + listing + " (table value " + table_value.to_string() + ")";
}

Catalog Catalog::parse(std::string_view json_text) {
  Catalog c;
  json doc;
  try {
    doc = json::parse(json_text);
    if (doc.at("schema") != "pgroup-catalog") throw std::invalid_argument("not a pgroup-catalog document");
    if (doc.at("version") != 1) throw std::invalid_argument("unsupported catalog version");

    for (const auto& f : doc.at("families"))
      c.families_.push_back({f.at("family").get<int>(), f.at("params").get<std::vector<std::string>>(),
                             f.at("relations").get<std::vector<std::string>>()});

    for (const auto& r : doc.at("rows")) {
      c.rows_.push_back({r.at("row").get<std::string>(), r.at("family").get<int>(), parse_k_case(r)});
      const auto& f1 = r.at("fig1");
      auto ab = [](const json& j, const char* key) { return AbelianType::parse(j.at(key).get<std::string>()); };
      c.fig1_.push_back({f1.at("cl").get<int>(), ab(f1, "M"), ab(f1, "Z"), ab(f1, "derived"), ab(f1, "abelianization"),
                         ab(f1, "nabla"), ab(f1, "J2")});
      const auto& f2 = r.at("fig2");
      c.fig2_.push_back({f2.at("cl").get<int>(), ab(f2, "M"),
                         TensorStructure::parse(f2.at("exterior_square").get<std::string>()),
                         TensorStructure::parse(f2.at("tensor_square").get<std::string>()), ab(f2, "exterior_center"),
                         ab(f2, "tensor_center")});
    }

    c.multiplier_listing_ = parse_listing(doc.at("multiplier_listing"));
    c.epicenter_listing_ = parse_listing(doc.at("epicenter_listing"));

    for (const auto& e : doc.at("errata"))
      c.errata_.push_back({e.at("rows").get<std::vector<std::string>>(), e.at("sources").get<std::vector<std::string>>(),
                           e.at("description").get<std::string>(), e.at("resolution").get<std::string>(),
                           e.value("field", std::string()), e.value("adopted", std::string())});
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed catalog: ") + ex.what());
  }

  for (const auto& r : c.rows_) {
    auto it = std::find_if(c.families_.begin(), c.families_.end(), [&](const FamilySpec& f) { return f.id == r.family; });
    if (it == c.families_.end()) throw std::invalid_argument("row " + r.id + " refers to unknown family " + std::to_string(r.family));
  }
  return c;
}

std::string_view Catalog::builtin_text() { return kCatalogJson; }

const Catalog& Catalog::builtin() {
  static const Catalog c = parse(kCatalogJson);
  return c;
}

const FamilySpec& Catalog::family(int id) const {
  for (const auto& f : families_)
    if (f.id == id) return f;
  throw UnknownFamily("unknown family " + std::to_string(id));
}

const RowSpec& Catalog::row(std::string_view id) const {
  for (const auto& r : rows_)
    if (r.id == id) return r;
  throw UnknownFamily("unknown row '" + std::string(id) + "'");
}

const RowSpec& Catalog::resolve(std::string_view text, int prime, const Params& params) const {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (!s.empty() && (s[0] == 'G' || s[0] == 'g')) s.erase(0, 1);

  static const std::regex plain(R"((\d+))");
  static const std::regex sub(R"((\d+),([12]))");
  static const std::regex param(R"((\d+)_?([kab]))");
  std::smatch m;
  if (std::regex_match(s, m, sub)) return row(s);
  if (std::regex_match(s, m, param)) return row(m[1].str() + "_" + m[2].str());
  if (std::regex_match(s, m, plain)) {
    const int fam = std::stoi(m[1]);
    std::vector<const RowSpec*> hits;
    for (const auto& r : rows_)
      if (r.family == fam) hits.push_back(&r);
    if (hits.empty()) throw UnknownFamily("unknown family '" + std::string(text) + "'");
    if (hits.size() == 1) return *hits.front();
    auto k = params.find("k");
    const bool half = k != params.end() && k->second == (prime - 1) / 2;
    for (const RowSpec* r : hits)
      if ((r->k_case == KCase::Half) == half) return *r;
  }
  throw UnknownFamily("unknown family '" + std::string(text) + "'");
}

std::vector<ParamRange> Catalog::domain(const RowSpec& r, int prime) const {
  std::vector<ParamRange> out;
  const int half = (prime - 1) / 2;
  for (const std::string& name : family(r.family).params) {
    if (name == "k") {
      switch (r.k_case) {
        case KCase::Any: out.push_back({name, 1, half}); break;
        case KCase::Generic: out.push_back({name, 1, half - 1}); break;
        case KCase::Half: out.push_back({name, half, half}); break;
      }
    } else {
      out.push_back({name, 0, prime - 2});
    }
  }
  return out;
}

Params Catalog::complete_params(const RowSpec& r, int prime, const Params& params) const {
  const auto dom = domain(r, prime);
  for (const auto& [name, value] : params) {
    bool known = std::any_of(dom.begin(), dom.end(), [&](const ParamRange& d) { return d.name == name; });
    if (!known) throw BadParam("row " + r.id + " has no parameter '" + name + "'");
  }
  Params out;
  for (const auto& d : dom) {
    auto it = params.find(d.name);
    int v = it != params.end() ? it->second : std::clamp(1, d.lo, d.hi);
    if (v < d.lo || v > d.hi)
      throw BadParam("row " + r.id + ": " + d.name + "=" + std::to_string(v) + " outside " + std::to_string(d.lo) + ".." +
                     std::to_string(d.hi) + " for p=" + std::to_string(prime));
    out[d.name] = v;
  }
  return out;
}

PcPresentation Catalog::build(const RowSpec& r, int prime, const Params& params) const {
  PcPresentation pres;
  pres.prime = prime;
  pres.validate();
  const Params vars = complete_params(r, prime, params);
  for (const std::string& rel : family(r.family).relations) apply_relation(pres, rel, vars);
  pres.validate();
  return pres;
}

ExpectedRecord Catalog::expected_record(const RowSpec& r, int prime) const {
  const auto idx = static_cast<std::size_t>(&r - rows_.data());
  if (idx >= rows_.size()) return expected_record(row(r.id), prime);
  ExpectedRecord e;
  e.row = r.id;
  e.family = r.family;
  e.prime = prime;
  e.fig1 = fig1_[idx];
  e.fig2 = fig2_[idx];
  e.multiplier_listing = listed_under(multiplier_listing_, r.id);
  e.epicenter_listing = listed_under(epicenter_listing_, r.id);
  return e;
}

std::vector<ErratumEntry> Catalog::errata_for(std::string_view id) const {
  std::vector<ErratumEntry> out;
  for (const auto& e : errata_)
    if (std::find(e.rows.begin(), e.rows.end(), id) != e.rows.end()) out.push_back(e);
  return out;
}

std::optional<std::string> Catalog::adopted(std::string_view id, std::string_view field) const {
  for (const auto& e : errata_)
    if (e.field == field && std::find(e.rows.begin(), e.rows.end(), id) != e.rows.end()) return e.adopted;
  return std::nullopt;
}

std::vector<ListingConflict> Catalog::listing_conflicts() const {
  std::vector<ListingConflict> out;
  auto scan = [&](const std::vector<ListingEntry>& listing, const char* name, const AbelianType& value, const std::string& id) {
    std::vector<AbelianType> listed = listed_under(listing, id);
    ListingConflict c{id, name, "", listed, value};
    if (listed.empty()) {
      c.kind = "missing";
    } else if (listed.size() > 1) {
      bool same = std::all_of(listed.begin(), listed.end(), [&](const AbelianType& t) { return t == listed.front(); });
      c.kind = same ? "duplicate" : "double";
    } else if (listed.front() != value) {
      c.kind = "mismatch";
    } else {
      return;
    }
    out.push_back(std::move(c));
  };
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    scan(multiplier_listing_, "multiplier_listing", fig2_[i].multiplier, rows_[i].id);
    scan(epicenter_listing_, "epicenter_listing", fig2_[i].exterior_center, rows_[i].id);
  }
  return out;
}

}  // namespace pgroup
