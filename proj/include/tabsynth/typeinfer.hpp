#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "tabsynth/table.hpp"

namespace tabsynth {

struct RawTable;  // ingest.hpp

// Cell-level number syntax: surrounding whitespace, optional leading currency
// symbol ($ / EUR / GBP signs), optional sign, digits with validated comma
// grouping, optional fraction, optional trailing % (stripped, value kept as
// written: "5%" -> 5). Anything else -> nullopt.
std::optional<Decimal> parse_number(std::string_view s);

// Recognized formats, in priority order: ISO YYYY-MM-DD; "Month D, YYYY";
// "D Month YYYY"; "Month YYYY"; bare 4-digit year in [1000, 2999]. Month
// names are full or 3-letter English (optionally dotted), case-insensitive.
// Ambiguous slash dates are rejected.
std::optional<Date> parse_date(std::string_view s);

struct TypeInferOptions {
    double threshold = 0.8;  // fraction of non-empty cells that must parse
};

// Majority-vote column typing over non-empty cells. Number wins before Date;
// a column whose name carries a date cue (year, date, founded, born, died,
// since) flips to Date when both readings pass, so "Founded Year" columns of
// bare years compare temporally.
DataType infer_column_type(const std::vector<std::string>& cells,
                           std::string_view column_name = {},
                           const TypeInferOptions& opts = {});

// Parses one raw cell under the declared column type (canonical-text
// fallback where parsing fails).
Cell typed_cell(std::string raw, DataType dtype);

// Builds a typed Table from raw strings: trims headers, infers per-column
// types, parses every cell (text fallback where parsing fails).
Table annotate(const RawTable& raw, bool fixture = false, const TypeInferOptions& opts = {});

}  // namespace tabsynth
