#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tabsynth/table.hpp"

namespace tabsynth {

struct SerializeDiag {
    std::size_t pipe_cells = 0;  // cells whose '|' was replaced by '/'
};

// `[HEAD] h1 | h2 [ROW] c11 | c12 [ROW] ...` with whitespace-collapsed
// cells. '|' is reserved as the separator; cells containing one have it
// replaced by '/' and counted in the diagnostic.
std::string flatten_table(const Table& t, SerializeDiag* diag = nullptr);

// `{question} {flatten_table(t)}`. Throws EmptyQuestionError.
std::string render_model_input(std::string_view question, const Table& t,
                               SerializeDiag* diag = nullptr);

// Joins answers with ", " in stored order. Throws EmptyAnswersError.
std::string render_answer(const std::vector<std::string>& answers);

}  // namespace tabsynth
