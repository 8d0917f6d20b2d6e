#include "tabsynth/table.hpp"

#include "tabsynth/strutil.hpp"

namespace tabsynth {

std::string data_type_name(DataType t) {
    switch (t) {
        case DataType::Text: return "text";
        case DataType::Number: return "number";
        case DataType::Date: return "date";
    }
    return "text";
}

std::optional<DataType> data_type_from_name(std::string_view name) {
    const std::string n = to_lower_ascii(trim(name));
    if (n == "text" || n == "string") return DataType::Text;
    if (n == "number") return DataType::Number;
    if (n == "date") return DataType::Date;
    return std::nullopt;
}

std::string Cell::surface() const { return collapse_ws(raw); }

Table::Table(std::string table_id, std::vector<Column> columns,
             std::vector<std::vector<Cell>> rows, bool fixture)
    : table_id_(std::move(table_id)),
      columns_(std::move(columns)),
      rows_(std::move(rows)),
      fixture_(fixture) {
    for (auto& col : columns_) col.name = std::string(trim(col.name));
}

std::string ValidationIssue::message() const {
    switch (kind) {
        case Kind::RaggedRows:
            return "row " + std::to_string(index) + " has a different cell count than the header";
        case Kind::TooFewColumns:
            return "fewer than " + std::to_string(kMinCorpusColumns) + " columns";
        case Kind::RowCountOutOfRange:
            return "row count outside [" + std::to_string(kMinCorpusRows) + ", " +
                   std::to_string(kMaxCorpusRows) + "]";
        case Kind::EmptyHeader:
            return "empty header at column " + std::to_string(index);
    }
    return "invalid table";
}

std::optional<ValidationIssue> validate_table(const Table& t, bool corpus_mode) {
    for (std::size_t c = 0; c < t.column_count(); ++c) {
        if (trim(t.columns()[c].name).empty()) {
            return ValidationIssue{ValidationIssue::Kind::EmptyHeader, c};
        }
    }
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        if (t.rows()[r].size() != t.column_count()) {
            return ValidationIssue{ValidationIssue::Kind::RaggedRows, r};
        }
    }
    if (corpus_mode && !t.fixture()) {
        if (t.column_count() < kMinCorpusColumns) {
            return ValidationIssue{ValidationIssue::Kind::TooFewColumns, 0};
        }
        if (t.row_count() < kMinCorpusRows || t.row_count() > kMaxCorpusRows) {
            return ValidationIssue{ValidationIssue::Kind::RowCountOutOfRange, 0};
        }
    }
    return std::nullopt;
}

}  // namespace tabsynth
