#include "tabsynth/pipeline.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <set>
#include <utility>

#include <json.hpp>

#include "tabsynth/errors.hpp"
#include "tabsynth/strutil.hpp"
#include "tabsynth/typeinfer.hpp"

namespace tabsynth {

using nlohmann::json;

std::string table_to_json(const Table& t) {
    json j;
    json header = json::array();
    json types = json::array();
    for (const Column& c : t.columns()) {
        header.push_back(c.name);
        types.push_back(data_type_name(c.dtype));
    }
    json rows = json::array();
    for (const auto& row : t.rows()) {
        json r = json::array();
        for (const Cell& cell : row) r.push_back(cell.raw);
        rows.push_back(std::move(r));
    }
    j["header"] = std::move(header);
    j["rows"] = std::move(rows);
    j["table_id"] = t.table_id();
    j["types"] = std::move(types);
    return j.dump();
}

Table table_from_json(const std::string& line, std::size_t line_no) {
    const std::string ctx = line_no > 0 ? "line " + std::to_string(line_no) + ": " : "";
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw ValidationError(ctx + "not a JSON object");
    try {
        const auto table_id = j.at("table_id").get<std::string>();
        const auto& header = j.at("header");
        const auto& types = j.at("types");
        if (header.size() != types.size())
            throw ValidationError(ctx + "header and types lengths differ");
        std::vector<Column> columns;
        for (std::size_t c = 0; c < header.size(); ++c) {
            const auto dt = data_type_from_name(types[c].get<std::string>());
            if (!dt) throw ValidationError(ctx + "unknown column type");
            columns.push_back({std::string(trim(header[c].get<std::string>())), *dt});
        }
        std::vector<std::vector<Cell>> rows;
        for (const auto& raw_row : j.at("rows")) {
            if (raw_row.size() != columns.size())
                throw ValidationError(ctx + "row width differs from header");
            std::vector<Cell> row;
            row.reserve(columns.size());
            for (std::size_t c = 0; c < columns.size(); ++c)
                row.push_back(typed_cell(raw_row[c].get<std::string>(), columns[c].dtype));
            rows.push_back(std::move(row));
        }
        return Table(table_id, std::move(columns), std::move(rows));
    } catch (const json::exception& e) {
        throw ValidationError(ctx + e.what());
    }
}

void write_table_store(const std::vector<Table>& tables, std::ostream& out) {
    for (const Table& t : tables) out << table_to_json(t) << '\n';
    if (!out) throw IoError("table store write failed");
}

std::vector<Table> read_table_store(std::istream& in) {
    std::vector<Table> tables;
    std::set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        Table t = table_from_json(line, line_no);
        if (!ids.insert(t.table_id()).second)
            throw ValidationError("duplicate table_id '" + t.table_id() + "'");
        tables.push_back(std::move(t));
    }
    std::sort(tables.begin(), tables.end(),
              [](const Table& a, const Table& b) { return a.table_id() < b.table_id(); });
    return tables;
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TABSYNTH_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return omp_get_max_threads();
}

GenDiag generate_examples_serial(const std::vector<Table>& tables, const GenerateRun& run,
                                 const std::vector<Template>& templates,
                                 const ExampleSink& sink) {
    GenDiag diag;
    for (const Table& t : tables) {
        for (const GenResult& r : generate_all(t, run.quotas, run.seed, templates, run.gen, &diag))
            sink(r.example);
    }
    return diag;
}

GenDiag generate_examples(const std::vector<Table>& tables, const GenerateRun& run,
                          const std::vector<Template>& templates, const ExampleSink& sink) {
    const int threads = resolve_thread_count(run.threads);
    GenDiag total;
    // Block-wise fan-out keeps at most one block of results resident while
    // the sink drains them in table order.
    constexpr std::size_t kBlock = 256;
    for (std::size_t base = 0; base < tables.size(); base += kBlock) {
        const std::size_t n = std::min(kBlock, tables.size() - base);
        std::vector<std::vector<GenResult>> results(n);
        std::vector<GenDiag> diags(n);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
            const auto idx = static_cast<std::size_t>(i);
            results[idx] = generate_all(tables[base + idx], run.quotas, run.seed, templates,
                                        run.gen, &diags[idx]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            total.merge(diags[i]);
            for (const GenResult& r : results[i]) sink(r.example);
        }
    }
    return total;
}

ExportReport export_seq2seq(std::istream& corpus, const std::map<std::string, Table>& tables,
                            std::ostream& out, const ExportOptions& opts) {
    ExportReport report;
    std::map<std::string, std::string> flat_cache;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(corpus, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const Example e = example_from_json(line, line_no);
        const auto it = tables.find(e.table_id);
        if (it == tables.end()) {
            ++report.missing_table;
            continue;
        }
        auto cached = flat_cache.find(e.table_id);
        if (cached == flat_cache.end()) {
            cached = flat_cache.emplace(e.table_id,
                                        flatten_table(it->second, &report.serialize)).first;
        }
        const std::string q = collapse_ws(e.question);
        if (q.empty()) throw EmptyQuestionError();
        std::string input = q + " " + cached->second;
        std::string target = render_answer(e.answers);
        if (opts.lowercase) {
            input = to_lower_ascii(input);
            target = to_lower_ascii(target);
        }
        json record;
        record["input"] = std::move(input);
        record["target"] = std::move(target);
        out << record.dump() << '\n';
        ++report.written;
    }
    if (!out) throw IoError("export write failed");
    return report;
}

}  // namespace tabsynth
