#include "tabsynth/serialize.hpp"

#include <algorithm>

#include "tabsynth/errors.hpp"
#include "tabsynth/strutil.hpp"

namespace tabsynth {

namespace {

std::string safe_cell(std::string s, SerializeDiag* diag) {
    if (s.find('|') != std::string::npos) {
        std::replace(s.begin(), s.end(), '|', '/');
        if (diag) ++diag->pipe_cells;
    }
    return s;
}

}  // namespace

std::string flatten_table(const Table& t, SerializeDiag* diag) {
    std::string out = "[HEAD]";
    for (std::size_t c = 0; c < t.column_count(); ++c) {
        out += c == 0 ? " " : " | ";
        out += safe_cell(collapse_ws(t.columns()[c].name), diag);
    }
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        out += " [ROW]";
        for (std::size_t c = 0; c < t.column_count(); ++c) {
            out += c == 0 ? " " : " | ";
            out += safe_cell(t.cell(r, c).surface(), diag);
        }
    }
    return out;
}

std::string render_model_input(std::string_view question, const Table& t, SerializeDiag* diag) {
    const std::string q = collapse_ws(question);
    if (q.empty()) throw EmptyQuestionError();
    return q + " " + flatten_table(t, diag);
}

std::string render_answer(const std::vector<std::string>& answers) {
    if (answers.empty()) throw EmptyAnswersError();
    std::string out = answers.front();
    for (std::size_t i = 1; i < answers.size(); ++i) out += ", " + answers[i];
    return out;
}

}  // namespace tabsynth
