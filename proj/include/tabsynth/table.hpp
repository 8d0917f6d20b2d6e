#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tabsynth/value.hpp"

namespace tabsynth {

enum class DataType { Text, Number, Date };

std::string data_type_name(DataType t);
std::optional<DataType> data_type_from_name(std::string_view name);

struct Cell {
    std::string raw;  // original text, untouched
    Value parsed;     // typed per the owning column, or canonical-text fallback

    // Canonical surface form shared by questions, answers and serialization.
    std::string surface() const;
};

struct Column {
    std::string name;  // trimmed at construction
    DataType dtype = DataType::Text;
};

// Immutable after construction; safe to share read-only across workers.
class Table {
public:
    Table() = default;
    Table(std::string table_id, std::vector<Column> columns,
          std::vector<std::vector<Cell>> rows, bool fixture = false);

    const std::string& table_id() const { return table_id_; }
    const std::vector<Column>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }
    bool fixture() const { return fixture_; }

    std::size_t column_count() const { return columns_.size(); }
    std::size_t row_count() const { return rows_.size(); }
    const Cell& cell(std::size_t row, std::size_t col) const { return rows_[row][col]; }

private:
    std::string table_id_;
    std::vector<Column> columns_;
    std::vector<std::vector<Cell>> rows_;
    bool fixture_ = false;
};

struct ValidationIssue {
    enum class Kind { RaggedRows, TooFewColumns, RowCountOutOfRange, EmptyHeader };
    Kind kind;
    std::size_t index = 0;  // row index for RaggedRows, column index for EmptyHeader
    std::string message() const;
};

// Pure check of the Table invariants. corpus_mode additionally enforces the
// 8..30-row and >=3-column corpus bounds; fixture tables are exempt from
// those bounds regardless of the flag.
std::optional<ValidationIssue> validate_table(const Table& t, bool corpus_mode);

inline constexpr std::size_t kMinCorpusRows = 8;
inline constexpr std::size_t kMaxCorpusRows = 30;
inline constexpr std::size_t kMinCorpusColumns = 3;

}  // namespace tabsynth
