#include "tabsynth/ingest.hpp"

#include <nlohmann/json.hpp>

#include "tabsynth/errors.hpp"
#include "tabsynth/rng.hpp"
#include "tabsynth/strutil.hpp"

namespace tabsynth {

namespace {

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t len;
        if (c < 0x80) len = 1;
        else if ((c & 0xe0) == 0xc0) len = 2;
        else if ((c & 0xf0) == 0xe0) len = 3;
        else if ((c & 0xf8) == 0xf0) len = 4;
        else return false;
        if (i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(s[i + k]) & 0xc0) != 0x80) return false;
        }
        if (len == 2 && c < 0xc2) return false;                    // overlong
        if (len == 4 && (c > 0xf4 || (c == 0xf4 && (static_cast<unsigned char>(s[i + 1]) > 0x8f))))
            return false;                                          // beyond U+10FFFF
        i += len;
    }
    return true;
}

std::vector<std::vector<std::string>> parse_csv_records(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t i = 0;
    const auto end_field = [&] {
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    const auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };
    while (i < text.size()) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    i += 2;
                    continue;
                }
                in_quotes = false;
                ++i;
                continue;
            }
            field.push_back(c);
            ++i;
            continue;
        }
        switch (c) {
            case '"':
                if (!field_started && field.empty()) {
                    in_quotes = true;
                } else {
                    field.push_back('"');
                }
                field_started = true;
                ++i;
                break;
            case ',':
                end_field();
                ++i;
                break;
            case '\r':
                if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
                [[fallthrough]];
            case '\n':
                end_record();
                ++i;
                break;
            default:
                field.push_back(c);
                field_started = true;
                ++i;
                break;
        }
    }
    if (in_quotes) throw DecodeError("unterminated quoted field");
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

}  // namespace

RawTable ingest_csv(std::istream& in, std::string table_id) {
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!valid_utf8(text)) throw DecodeError("input is not valid UTF-8");
    auto records = parse_csv_records(text);
    // A trailing empty record from a final newline is not data.
    while (!records.empty() && records.back().size() == 1 && records.back()[0].empty()) {
        records.pop_back();
    }
    if (records.empty()) throw EmptyFileError();
    RawTable t;
    t.table_id = std::move(table_id);
    t.header = std::move(records[0]);
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != t.header.size()) throw RaggedRowsError(r - 1);
        t.rows.push_back(std::move(records[r]));
    }
    return t;
}

void ingest_jsonl(std::istream& in, const std::function<void(RawTable&&)>& sink,
                  IngestReport& report) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            report.add(line_no, "not a JSON object");
            continue;
        }
        try {
            RawTable t;
            t.table_id = obj.at("table_id").get<std::string>();
            t.header = obj.at("header").get<std::vector<std::string>>();
            t.rows = obj.at("rows").get<std::vector<std::vector<std::string>>>();
            if (obj.contains("source_uri")) t.source_uri = obj["source_uri"].get<std::string>();
            if (t.header.empty()) {
                report.add(line_no, "header must be non-empty");
                continue;
            }
            sink(std::move(t));
        } catch (const nlohmann::json::exception& e) {
            report.add(line_no, e.what());
        }
    }
}

Table shuffle_rows(const Table& t, std::uint64_t seed) {
    Rng rng(mix_seed(seed, hash_str(t.table_id())));
    std::vector<std::size_t> order(t.row_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    std::vector<std::vector<Cell>> rows;
    rows.reserve(order.size());
    for (const std::size_t idx : order) rows.push_back(t.rows()[idx]);
    return Table(t.table_id(), t.columns(), std::move(rows), t.fixture());
}

}  // namespace tabsynth
