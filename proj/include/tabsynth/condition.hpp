#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "tabsynth/rng.hpp"
#include "tabsynth/table.hpp"

namespace tabsynth {

enum class NumOp { Greater, Less };
enum class DateOp { Later, Earlier };

// Evaluable predicate over one column: equality, strict numeric comparison,
// or strict temporal comparison. Pivots are always observed column values.
struct Condition {
    struct Equals {
        Value value;
        std::string raw;  // surface form of the source cell
    };
    struct NumCmp {
        NumOp op;
        Decimal pivot;
    };
    struct DateCmp {
        DateOp op;
        Date pivot;
        std::string pivot_raw;  // rendered as in the source cell
    };

    std::variant<Equals, NumCmp, DateCmp> kind;
    int column_index = 0;

    bool is_equals() const { return std::holds_alternative<Equals>(kind); }
};

struct EvalDiag {
    std::size_t unparsable_cells = 0;
};

// Strict comparison semantics: NumCmp(Greater, v) is false on a cell equal
// to v. Cells without a parsed number/date where one is required evaluate
// false and bump the diagnostic counter.
bool eval_condition(const Cell& cell, const Condition& c, EvalDiag* diag = nullptr);

std::string render_condition(const Condition& c, const Column& col);

struct ConditionSampleFlags {
    bool require_nonempty = true;
    bool require_proper_subset = false;
};

inline constexpr int kConditionSampleAttempts = 32;

// Draws a condition on the given column: Equals picks a uniform random cell
// value; comparisons pick a pivot among distinct parsed values and an
// operator uniformly (only offered when the column has >= 2 distinct parsed
// values). Resamples up to 32 times until the matching row set is non-empty
// and, when required, a proper subset. Throws ExhaustedSamplingError.
Condition sample_condition(const Table& t, int column_index, Rng& rng,
                           const ConditionSampleFlags& flags = {});

}  // namespace tabsynth
