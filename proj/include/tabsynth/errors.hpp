#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tabsynth {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Validation-class failures (bad input data, unsatisfiable contracts).
struct ValidationError : Error {
    using Error::Error;
};

// I/O-class failures (missing files, write errors).
struct IoError : Error {
    using Error::Error;
};

struct DecodeError : ValidationError {
    using ValidationError::ValidationError;
};

struct EmptyFileError : ValidationError {
    EmptyFileError() : ValidationError("empty input stream") {}
};

struct RaggedRowsError : ValidationError {
    std::size_t row_index;
    explicit RaggedRowsError(std::size_t row)
        : ValidationError("row " + std::to_string(row) + " has a different cell count than the header"),
          row_index(row) {}
};

struct ExhaustedSamplingError : ValidationError {
    ExhaustedSamplingError() : ValidationError("condition sampling exhausted its attempt budget") {}
};

struct ColumnOutOfRangeError : ValidationError {
    explicit ColumnOutOfRangeError(int col)
        : ValidationError("column index " + std::to_string(col) + " out of range") {}
};

struct KOutOfRangeError : ValidationError {
    explicit KOutOfRangeError(int k)
        : ValidationError("ordinal k=" + std::to_string(k) + " outside the filtered row count") {}
};

struct UnparsableKeyError : ValidationError {
    std::size_t row_index;
    explicit UnparsableKeyError(std::size_t row)
        : ValidationError("sort key unparsable at row " + std::to_string(row)), row_index(row) {}
};

struct EmptyInputError : ValidationError {
    EmptyInputError() : ValidationError("aggregate requires at least one value") {}
};

struct PoolExhaustedError : ValidationError {
    std::string skill;
    std::size_t needed;
    std::size_t available;
    PoolExhaustedError(std::string skill_name, std::size_t need, std::size_t have)
        : ValidationError("pool for skill '" + skill_name + "' supplies " + std::to_string(have) +
                          " examples, quota needs " + std::to_string(need)),
          skill(std::move(skill_name)),
          needed(need),
          available(have) {}
};

struct EmptyQuestionError : ValidationError {
    EmptyQuestionError() : ValidationError("question is empty") {}
};

struct EmptyAnswersError : ValidationError {
    EmptyAnswersError() : ValidationError("answer list is empty") {}
};

struct LengthMismatchError : ValidationError {
    LengthMismatchError(std::size_t pred, std::size_t gold)
        : ValidationError("prediction count " + std::to_string(pred) +
                          " does not match gold count " + std::to_string(gold)) {}
};

struct IdMismatchError : ValidationError {
    explicit IdMismatchError(const std::string& id)
        : ValidationError("prediction id '" + id + "' does not align with the gold file") {}
};

struct TemplateParseError : ValidationError {
    std::size_t line_no;
    TemplateParseError(std::size_t line, const std::string& what)
        : ValidationError("template line " + std::to_string(line) + ": " + what), line_no(line) {}
};

struct BadPlaceholderError : TemplateParseError {
    BadPlaceholderError(std::size_t line, const std::string& token)
        : TemplateParseError(line, "unknown placeholder {" + token + "}") {}
};

struct DanglingIndexError : TemplateParseError {
    DanglingIndexError(std::size_t line, int index)
        : TemplateParseError(line, "index " + std::to_string(index) +
                                       " is used without a {col:" + std::to_string(index) +
                                       "} slot") {}
};

}  // namespace tabsynth
