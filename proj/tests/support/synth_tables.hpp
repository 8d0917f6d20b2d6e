#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tabsynth/table.hpp"

namespace tabsynth::testsupport {

// Deterministic mixed-type table: a text label column, a number column, a
// date column, then extra columns of random type. Values repeat often
// enough that equality conditions select multiple rows.
Table synth_table(std::uint64_t seed, std::size_t rows, std::size_t cols);

// `count` tables with row counts uniform in [min_rows, max_rows] and 3 to 6
// columns, ids "synth-000000" onward.
std::vector<Table> synth_tables(std::uint64_t seed, std::size_t count, std::size_t min_rows,
                                std::size_t max_rows);

}  // namespace tabsynth::testsupport
