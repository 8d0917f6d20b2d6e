#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "tabsynth/corpus.hpp"
#include "tabsynth/generator.hpp"
#include "tabsynth/serialize.hpp"
#include "tabsynth/table.hpp"

namespace tabsynth {

// Table store line:
// {"header": [...], "rows": [[...]], "table_id": str, "types": [...]}.
// Recorded types are trusted on read; cells are reparsed under them.
std::string table_to_json(const Table& t);
Table table_from_json(const std::string& line, std::size_t line_no = 0);

void write_table_store(const std::vector<Table>& tables, std::ostream& out);

// Returns tables sorted by table_id. Throws ValidationError on duplicates.
std::vector<Table> read_table_store(std::istream& in);

// Explicit flag wins, then TABSYNTH_THREADS, then the OpenMP default.
int resolve_thread_count(int requested);

struct GenerateRun {
    SkillQuotas quotas{};
    std::uint64_t seed = 0;
    int threads = 0;
    GenOptions gen;
};

using ExampleSink = std::function<void(const Example&)>;

// Reference implementation: one table after another, in the given order.
GenDiag generate_examples_serial(const std::vector<Table>& tables, const GenerateRun& run,
                                 const std::vector<Template>& templates,
                                 const ExampleSink& sink);

// OpenMP version; emits exactly the same examples in the same order, since
// every table generates from its own (seed, table_id) substream and blocks
// are drained in table order.
GenDiag generate_examples(const std::vector<Table>& tables, const GenerateRun& run,
                          const std::vector<Template>& templates, const ExampleSink& sink);

struct ExportOptions {
    bool lowercase = false;
};

struct ExportReport {
    std::size_t written = 0;
    std::size_t missing_table = 0;  // corpus records without a stored table
    SerializeDiag serialize;
};

// Corpus JSONL -> seq2seq JSONL {"input", "target"}, streaming both sides.
// Records whose table is missing from the store are skipped and counted.
ExportReport export_seq2seq(std::istream& corpus, const std::map<std::string, Table>& tables,
                            std::ostream& out, const ExportOptions& opts = {});

}  // namespace tabsynth
