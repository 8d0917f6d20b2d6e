#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tabsynth/condition.hpp"
#include "tabsynth/table.hpp"

namespace tabsynth {

// Ascending indices of rows satisfying the condition.
// Throws ColumnOutOfRangeError.
std::vector<std::size_t> select_rows(const Table& t, const Condition& c,
                                     EvalDiag* diag = nullptr);

enum class AggOp { Sum, Average, Count };

// Exact decimal arithmetic; average carries guard digits so rendering at two
// decimals matches the exact rational result. Throws EmptyInputError for
// sum/average on empty input.
Decimal aggregate(const std::vector<Decimal>& values, AggOp op);

enum class SortOrder { Ascending, Descending };

// Stable sort of `rows` by the parsed key column; ties keep the given order.
// Throws ColumnOutOfRangeError, UnparsableKeyError.
std::vector<std::size_t> sorted_by(const Table& t, const std::vector<std::size_t>& rows,
                                   int key_col, SortOrder order);

// The k-th (1-based) row under sorted_by.
// Throws KOutOfRangeError plus everything sorted_by throws.
std::size_t kth_by(const Table& t, const std::vector<std::size_t>& rows,
                   int key_col, SortOrder order, int k);

// Sign-free calendar difference (years, then months, then days, borrowing
// per Gregorian month lengths). Missing month/day default to 1.
struct Duration {
    int years = 0;
    int months = 0;
    int days = 0;
    bool operator==(const Duration&) const = default;
};

Duration date_difference(const Date& a, const Date& b);

// Exact rendering: all fraction digits kept (trailing zeros trimmed at
// parse), comma grouping on integer parts >= 10,000 in magnitude.
std::string format_number(const Decimal& v);

// Average rendering: at most two decimals, half-away-from-zero, trailing
// zeros trimmed.
std::string format_number_max2(const Decimal& v);

// Largest nonzero calendar unit, floored, with singular/plural
// ("16 years", "7 months", "1 day"); the zero duration renders "0 days".
std::string format_duration(const Duration& d);

}  // namespace tabsynth
