#include "pgroup/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pgroup {

using nlohmann::json;

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + s + "' (text, csv, json)");
}

Which parse_which(const std::string& s) {
  if (s == "fig1") return Which::Fig1;
  if (s == "fig2") return Which::Fig2;
  throw std::invalid_argument("unknown table '" + s + "' (fig1, fig2)");
}

json type_to_json(const AbelianType& t, int prime) {
  return {{"text", prime ? t.to_string(prime) : t.to_string()}, {"exponents", t.exponents()}, {"log_order", t.log_order()}};
}

json tensor_to_json(const TensorStructure& t, int prime) {
  return {{"text", prime ? t.to_string(prime) : t.to_string()},
          {"e1", t.e1_factor},
          {"exponents", t.abelian_part.exponents()},
          {"log_order", t.log_order()}};
}

AbelianType type_from_json(const json& j) { return AbelianType(j.at("exponents").get<std::vector<int>>()); }

TensorStructure tensor_from_json(const json& j) {
  return {j.at("e1").get<bool>(), AbelianType(j.at("exponents").get<std::vector<int>>())};
}

namespace {

Verdict parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::Pass, Verdict::Fail, Verdict::Explained, Verdict::NotComputable})
    if (s == to_string(v)) return v;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

WedgeSource parse_wedge_source(const std::string& s) {
  for (WedgeSource w : {WedgeSource::Abelian, WedgeSource::Derived, WedgeSource::Table})
    if (s == to_string(w)) return w;
  throw std::invalid_argument("unknown wedge source '" + s + "'");
}

}  // namespace

json record_to_json(const InvariantRecord& r, bool numeric) {
  const int p = numeric ? r.prime : 0;
  auto T = [p](const AbelianType& t) { return type_to_json(t, p); };
  auto TS = [p](const TensorStructure& t) { return tensor_to_json(t, p); };
  const StructureData& s = r.structure;

  json params = json::object();
  for (const auto& [k, v] : r.params) params[k] = v;

  json checks = json::array();
  for (const Check& c : r.checks)
    checks.push_back({{"name", c.name}, {"verdict", to_string(c.verdict)}, {"computed", c.computed}, {"expected", c.expected}, {"note", c.note}});

  const Fig1Entry& f1 = r.expected.fig1;
  const Fig2Entry& f2 = r.expected.fig2;
  json ml = json::array(), el = json::array();
  for (const auto& t : r.expected.multiplier_listing) ml.push_back(T(t));
  for (const auto& t : r.expected.epicenter_listing) el.push_back(T(t));

  return {
      {"kind", "record"},
      {"row", r.row},
      {"family", r.family},
      {"prime", r.prime},
      {"params", params},
      {"rendering", numeric ? "numeric" : "symbolic"},
      {"computed",
       {{"cl", s.cl},
        {"log_exponent", s.log_exponent},
        {"center", T(s.center)},
        {"derived", T(s.derived)},
        {"abelianization", T(s.abelianization)},
        {"multiplier", T(r.multiplier)},
        {"nabla", T(r.nabla)},
        {"j2", T(r.j2)},
        {"exterior_square", TS(r.exterior_square)},
        {"tensor_square", TS(r.tensor_square)},
        {"wedge_source", to_string(r.wedge_source)},
        {"capable", r.capable}}},
      {"expected",
       {{"fig1",
         {{"cl", f1.cl}, {"M", T(f1.multiplier)}, {"Z", T(f1.center)}, {"derived", T(f1.derived)},
          {"abelianization", T(f1.abelianization)}, {"nabla", T(f1.nabla)}, {"J2", T(f1.j2)}}},
        {"fig2",
         {{"cl", f2.cl}, {"M", T(f2.multiplier)}, {"exterior_square", TS(f2.exterior_square)},
          {"tensor_square", TS(f2.tensor_square)}, {"exterior_center", T(f2.exterior_center)},
          {"tensor_center", T(f2.tensor_center)}}},
        {"multiplier_listing", ml},
        {"epicenter_listing", el}}},
      {"checks", checks},
      {"ok", r.ok()},
  };
}

InvariantRecord record_from_json(const json& j) {
  InvariantRecord r;
  r.row = j.at("row").get<std::string>();
  r.family = j.at("family").get<int>();
  r.prime = j.at("prime").get<int>();
  for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<int>();

  const json& c = j.at("computed");
  r.structure.cl = c.at("cl").get<int>();
  r.structure.log_exponent = c.at("log_exponent").get<int>();
  r.structure.center = type_from_json(c.at("center"));
  r.structure.derived = type_from_json(c.at("derived"));
  r.structure.abelianization = type_from_json(c.at("abelianization"));
  r.multiplier = type_from_json(c.at("multiplier"));
  r.nabla = type_from_json(c.at("nabla"));
  r.j2 = type_from_json(c.at("j2"));
  r.exterior_square = tensor_from_json(c.at("exterior_square"));
  r.tensor_square = tensor_from_json(c.at("tensor_square"));
  r.wedge_source = parse_wedge_source(c.at("wedge_source").get<std::string>());
  r.capable = c.at("capable").get<bool>();

  const json& e = j.at("expected");
  ExpectedRecord& x = r.expected;
  x.row = r.row;
  x.family = r.family;
  x.prime = r.prime;
  const json& f1 = e.at("fig1");
  x.fig1 = {f1.at("cl").get<int>(), type_from_json(f1.at("M")), type_from_json(f1.at("Z")), type_from_json(f1.at("derived")),
            type_from_json(f1.at("abelianization")), type_from_json(f1.at("nabla")), type_from_json(f1.at("J2"))};
  const json& f2 = e.at("fig2");
  x.fig2 = {f2.at("cl").get<int>(), type_from_json(f2.at("M")), tensor_from_json(f2.at("exterior_square")),
            tensor_from_json(f2.at("tensor_square")), type_from_json(f2.at("exterior_center")),
            type_from_json(f2.at("tensor_center"))};
  for (const auto& t : e.at("multiplier_listing")) x.multiplier_listing.push_back(type_from_json(t));
  for (const auto& t : e.at("epicenter_listing")) x.epicenter_listing.push_back(type_from_json(t));

  for (const auto& ch : j.at("checks"))
    r.checks.push_back({ch.at("name").get<std::string>(), parse_verdict(ch.at("verdict").get<std::string>()),
                        ch.at("computed").get<std::string>(), ch.at("expected").get<std::string>(), ch.at("note").get<std::string>()});
  return r;
}

json erratum_to_json(const ErratumEntry& e) {
  json j = {{"rows", e.rows}, {"sources", e.sources}, {"description", e.description}, {"resolution", e.resolution}};
  if (!e.field.empty()) {
    j["field"] = e.field;
    j["adopted"] = e.adopted;
  }
  return j;
}

std::vector<std::string> table_header(Which which) {
  if (which == Which::Fig1) return {"G", "cl(G)", "M(G)", "Z(G)", "G'", "G^ab", "nabla(G)", "J2(G)"};
  return {"G", "cl(G)", "M(G)", "G^G", "G(x)G", "Z^(G)", "Z(x)(G)"};
}

std::vector<std::string> table_row(const InvariantRecord& r, Which which, bool numeric) {
  auto t = [&](const auto& x) { return numeric ? x.to_string(r.prime) : x.to_string(); };
  const StructureData& s = r.structure;
  if (which == Which::Fig1)
    return {r.row, std::to_string(s.cl), t(r.multiplier), t(s.center), t(s.derived), t(s.abelianization), t(r.nabla), t(r.j2)};
  return {r.row,
          std::to_string(s.cl),
          t(r.multiplier),
          t(r.exterior_square),
          t(r.tensor_square),
          t(r.expected.fig2.exterior_center),
          t(r.expected.fig2.tensor_center)};
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_grid(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      out += cells[i];
      if (i + 1 < cells.size()) out += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    os << out << '\n';
  };
  line(header);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& row : rows) line(row);
  return os.str();
}

std::string render_table(const std::vector<InvariantRecord>& records, Which which, Format format, bool numeric, int prime) {
  const auto header = table_header(which);
  if (format == Format::Json) {
    json doc = {{"kind", "table"},
                {"which", which == Which::Fig1 ? "fig1" : "fig2"},
                {"prime", prime},
                {"rendering", numeric ? "numeric" : "symbolic"},
                {"columns", header},
                {"records", json::array()}};
    for (const auto& r : records) doc["records"].push_back(record_to_json(r, numeric));
    return doc.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : records) rows.push_back(table_row(r, which, numeric));
  if (format == Format::Csv) {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_escape(cells[i]);
      os << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
    return os.str();
  }
  return render_grid(header, rows);
}

}  // namespace pgroup
