#pragma once

// Rendering of invariant records: fig1/fig2 shaped tables in text, CSV or
// JSON, and a JSON encoding of single records that can be read back.

#include <json.hpp>
#include <string>
#include <vector>

#include "pgroup/invariants.hpp"

namespace pgroup {

enum class Format { Text, Csv, Json };
enum class Which { Fig1, Fig2 };

Format parse_format(const std::string& s);
Which parse_which(const std::string& s);

/// {"text": ..., "exponents": [...], "log_order": n}; text is numeric when
/// `prime` is non-zero, symbolic otherwise.
nlohmann::json type_to_json(const AbelianType& t, int prime = 0);
/// As type_to_json plus "e1".
nlohmann::json tensor_to_json(const TensorStructure& t, int prime = 0);
AbelianType type_from_json(const nlohmann::json& j);
TensorStructure tensor_from_json(const nlohmann::json& j);

nlohmann::json record_to_json(const InvariantRecord& r, bool numeric);
/// Inverse of record_to_json (the rendering mode is irrelevant).
InvariantRecord record_from_json(const nlohmann::json& j);

nlohmann::json erratum_to_json(const ErratumEntry& e);

/// Column headers of a table layout.
std::vector<std::string> table_header(Which which);
/// One table row per record, rendered symbolically or at the record's prime.
std::vector<std::string> table_row(const InvariantRecord& r, Which which, bool numeric);

/// Full table document; deterministic for fixed inputs.
std::string render_table(const std::vector<InvariantRecord>& records, Which which, Format format, bool numeric, int prime);

/// Aligned plain-text grid.
std::string render_grid(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

std::string csv_escape(const std::string& field);

}  // namespace pgroup
