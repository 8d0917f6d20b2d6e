#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tabsynth {

// Comparison form: whitespace collapsed, ASCII case-folded; items that parse
// as numbers compare by exact value, so thousands separators and trailing
// fraction zeros never matter.
std::string normalize_answer_item(std::string_view s);

// Splits the prediction on ", " and compares normalized multisets.
bool denotation_match(std::string_view pred, const std::vector<std::string>& gold);

struct ScoreReport {
    std::size_t total = 0;
    std::size_t matched = 0;
    double accuracy = 0.0;
    // skill -> (matched, total); filled when the gold file carries skills
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_skill;
};

// Predictions: one answer string per line, or JSONL {"id", "prediction"}
// with ids naming 0-based gold line numbers. Gold: corpus JSONL or one
// answer string per line. Throws LengthMismatchError / IdMismatchError.
ScoreReport score_streams(std::istream& pred, std::istream& gold);

std::string format_score(const ScoreReport& r);

}  // namespace tabsynth
