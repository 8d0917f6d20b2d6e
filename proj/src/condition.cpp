#include "tabsynth/condition.hpp"

#include <algorithm>

#include "tabsynth/errors.hpp"
#include "tabsynth/oracle.hpp"
#include "tabsynth/strutil.hpp"

namespace tabsynth {

namespace {

std::size_t matching_rows(const Table& t, const Condition& c) {
    std::size_t n = 0;
    for (const auto& row : t.rows()) {
        if (eval_condition(row[static_cast<std::size_t>(c.column_index)], c)) ++n;
    }
    return n;
}

}  // namespace

bool eval_condition(const Cell& cell, const Condition& c, EvalDiag* diag) {
    if (const auto* eq = std::get_if<Condition::Equals>(&c.kind)) {
        return value_equal(cell.parsed, eq->value);
    }
    if (const auto* num = std::get_if<Condition::NumCmp>(&c.kind)) {
        const auto* v = std::get_if<Decimal>(&cell.parsed);
        if (v == nullptr) {
            if (diag != nullptr) ++diag->unparsable_cells;
            return false;
        }
        const int cmp = v->compare(num->pivot);
        return num->op == NumOp::Greater ? cmp > 0 : cmp < 0;
    }
    const auto& date = std::get<Condition::DateCmp>(c.kind);
    const auto* v = std::get_if<Date>(&cell.parsed);
    if (v == nullptr) {
        if (diag != nullptr) ++diag->unparsable_cells;
        return false;
    }
    const int cmp = v->compare(date.pivot);
    return date.op == DateOp::Later ? cmp > 0 : cmp < 0;
}

std::string render_condition(const Condition& c, const Column& col) {
    (void)col;
    if (const auto* eq = std::get_if<Condition::Equals>(&c.kind)) {
        return eq->raw;
    }
    if (const auto* num = std::get_if<Condition::NumCmp>(&c.kind)) {
        const char* prefix = num->op == NumOp::Greater ? "greater than " : "less than ";
        return prefix + format_number(num->pivot);
    }
    const auto& date = std::get<Condition::DateCmp>(c.kind);
    const char* prefix = date.op == DateOp::Later ? "later than " : "earlier than ";
    return prefix + date.pivot_raw;
}

Condition sample_condition(const Table& t, int column_index, Rng& rng,
                           const ConditionSampleFlags& flags) {
    const auto col_idx = static_cast<std::size_t>(column_index);
    const Column& col = t.columns()[col_idx];

    // Cells whose parsed value matches the column type; pivots come only
    // from these.
    std::vector<std::size_t> typed_cells;
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        const Value& v = t.cell(r, col_idx).parsed;
        const bool typed = (col.dtype == DataType::Number && std::holds_alternative<Decimal>(v)) ||
                           (col.dtype == DataType::Date && std::holds_alternative<Date>(v)) ||
                           (col.dtype == DataType::Text && std::holds_alternative<std::string>(v));
        if (typed && !t.cell(r, col_idx).surface().empty()) typed_cells.push_back(r);
    }
    if (typed_cells.empty()) throw ExhaustedSamplingError();

    // Distinct parsed values, first-seen order, for comparison pivots.
    std::vector<std::size_t> distinct_cells;
    for (const std::size_t r : typed_cells) {
        const bool seen = std::any_of(distinct_cells.begin(), distinct_cells.end(),
                                      [&](std::size_t prev) {
                                          return value_equal(t.cell(prev, col_idx).parsed,
                                                             t.cell(r, col_idx).parsed);
                                      });
        if (!seen) distinct_cells.push_back(r);
    }
    const bool comparisons_possible =
        (col.dtype == DataType::Number || col.dtype == DataType::Date) &&
        distinct_cells.size() >= 2;

    for (int attempt = 0; attempt < kConditionSampleAttempts; ++attempt) {
        Condition c;
        c.column_index = column_index;
        const bool use_comparison = comparisons_possible && rng.coin();
        if (!use_comparison) {
            const std::size_t r = typed_cells[rng.pick_index(typed_cells.size())];
            const Cell& cell = t.cell(r, col_idx);
            c.kind = Condition::Equals{cell.parsed, cell.surface()};
        } else if (col.dtype == DataType::Number) {
            const std::size_t r = distinct_cells[rng.pick_index(distinct_cells.size())];
            c.kind = Condition::NumCmp{rng.coin() ? NumOp::Greater : NumOp::Less,
                                       std::get<Decimal>(t.cell(r, col_idx).parsed)};
        } else {
            const std::size_t r = distinct_cells[rng.pick_index(distinct_cells.size())];
            const Cell& cell = t.cell(r, col_idx);
            c.kind = Condition::DateCmp{rng.coin() ? DateOp::Later : DateOp::Earlier,
                                        std::get<Date>(cell.parsed), cell.surface()};
        }
        const std::size_t matches = matching_rows(t, c);
        if (flags.require_nonempty && matches == 0) continue;
        if (flags.require_proper_subset && matches >= t.row_count()) continue;
        return c;
    }
    throw ExhaustedSamplingError();
}

}  // namespace tabsynth
