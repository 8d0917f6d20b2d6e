#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tabsynth/condition.hpp"
#include "tabsynth/ingest.hpp"
#include "tabsynth/table.hpp"
#include "tabsynth/typeinfer.hpp"

namespace testsup {

// The worked five-company table most frozen expectations refer to.
// Columns: Company(Text) | Country(Text) | Founded(Date) | Profit(Number).
inline tabsynth::Table t_fix() {
    tabsynth::RawTable raw;
    raw.table_id = "t_fix";
    raw.header = {"Company", "Country", "Founded", "Profit"};
    raw.rows = {
        {"Alpha", "United States", "1990-01-01", "10"},
        {"Beta", "France", "1985-06-15", "20"},
        {"Gamma", "United States", "2000-03-10", "5"},
        {"Delta", "Japan", "1995-12-01", "20"},
        {"Epsilon", "France", "2010-07-07", "15"},
    };
    return tabsynth::annotate(raw, /*fixture=*/true);
}

inline tabsynth::Table quick_table(std::string id, std::vector<std::string> header,
                                   std::vector<std::vector<std::string>> rows,
                                   bool fixture = true) {
    tabsynth::RawTable raw;
    raw.table_id = std::move(id);
    raw.header = std::move(header);
    raw.rows = std::move(rows);
    return tabsynth::annotate(raw, fixture);
}

inline tabsynth::Condition equals_text(int col, const std::string& text) {
    tabsynth::Condition c;
    c.column_index = col;
    c.kind = tabsynth::Condition::Equals{tabsynth::Value(text), text};
    return c;
}

inline tabsynth::Condition equals_number(int col, const std::string& text) {
    tabsynth::Condition c;
    c.column_index = col;
    c.kind = tabsynth::Condition::Equals{tabsynth::Value(*tabsynth::Decimal::parse_plain(text)),
                                         text};
    return c;
}

inline tabsynth::Condition num_cmp(int col, tabsynth::NumOp op, const std::string& pivot) {
    tabsynth::Condition c;
    c.column_index = col;
    c.kind = tabsynth::Condition::NumCmp{op, *tabsynth::Decimal::parse_plain(pivot)};
    return c;
}

inline tabsynth::Condition date_cmp(int col, tabsynth::DateOp op, tabsynth::Date pivot,
                                    std::string raw) {
    tabsynth::Condition c;
    c.column_index = col;
    c.kind = tabsynth::Condition::DateCmp{op, pivot, std::move(raw)};
    return c;
}

}  // namespace testsup
