#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "tabsynth/table.hpp"

namespace tabsynth {

struct RawTable {
    std::string table_id;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::string source_uri;
};

// RFC-4180 CSV: quoted fields, embedded commas/newlines, doubled quotes,
// CRLF or LF records. The first record is the header. UTF-8 only.
// Throws DecodeError, RaggedRowsError, EmptyFileError.
RawTable ingest_csv(std::istream& in, std::string table_id);

struct LineIssue {
    std::size_t line_no = 0;  // 1-based
    std::string message;
};

// Append-only, mergeable per-line error report.
struct IngestReport {
    std::vector<LineIssue> errors;
    void add(std::size_t line_no, std::string message) {
        errors.push_back({line_no, std::move(message)});
    }
    void merge(const IngestReport& other) {
        errors.insert(errors.end(), other.errors.begin(), other.errors.end());
    }
};

// One JSON object per line: {"table_id": str, "header": [str], "rows": [[str]]}.
// Tables are handed to `sink` in file order; malformed lines are recorded in
// the report and skipped.
void ingest_jsonl(std::istream& in, const std::function<void(RawTable&&)>& sink,
                  IngestReport& report);

// Uniform random row permutation determined solely by (seed, table_id);
// column order and the row multiset are untouched.
Table shuffle_rows(const Table& t, std::uint64_t seed);

}  // namespace tabsynth
