#include "tabsynth/typeinfer.hpp"

#include <array>
#include <cctype>

#include "tabsynth/ingest.hpp"
#include "tabsynth/strutil.hpp"

namespace tabsynth {

namespace {

// One optional currency prefix; the euro and pound signs are multi-byte UTF-8.
bool strip_currency(std::string_view& s) {
    static constexpr std::array<std::string_view, 3> symbols = {"$", "€", "£"};
    for (const auto sym : symbols) {
        if (s.substr(0, sym.size()) == sym) {
            s.remove_prefix(sym.size());
            return true;
        }
    }
    return false;
}

// Digits with optional comma grouping: first group 1-3 digits, every
// following group exactly 3. Returns the digits sans commas, or nullopt.
std::optional<std::string> read_grouped_digits(std::string_view& s) {
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == 0 || i > 3) {
        // Ungrouped run of any length is fine as long as no comma follows it.
        if (i == 0) return std::nullopt;
        if (i < s.size() && s[i] == ',') return std::nullopt;
        std::string digits(s.substr(0, i));
        s.remove_prefix(i);
        return digits;
    }
    std::string digits(s.substr(0, i));
    std::size_t pos = i;
    while (pos < s.size() && s[pos] == ',') {
        if (pos + 4 > s.size()) return std::nullopt;
        for (std::size_t k = 1; k <= 3; ++k) {
            if (!std::isdigit(static_cast<unsigned char>(s[pos + k]))) return std::nullopt;
        }
        digits.append(s.substr(pos + 1, 3));
        pos += 4;
    }
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) return std::nullopt;
    s.remove_prefix(pos);
    return digits;
}

struct MonthName {
    std::string_view name;
    int number;
};

constexpr std::array<MonthName, 24> kMonths = {{
    {"january", 1},  {"february", 2}, {"march", 3},     {"april", 4},
    {"may", 5},      {"june", 6},     {"july", 7},      {"august", 8},
    {"september", 9},{"october", 10}, {"november", 11}, {"december", 12},
    {"jan", 1},      {"feb", 2},      {"mar", 3},       {"apr", 4},
    {"may", 5},      {"jun", 6},      {"jul", 7},       {"aug", 8},
    {"sep", 9},      {"oct", 10},     {"nov", 11},      {"dec", 12},
}};

std::optional<int> month_from_name(std::string_view word) {
    std::string w = to_lower_ascii(word);
    if (!w.empty() && w.back() == '.') w.pop_back();  // "Jun." style abbreviation
    for (const auto& m : kMonths) {
        if (w == m.name) return m.number;
    }
    return std::nullopt;
}

std::optional<int> parse_int_field(std::string_view s, std::size_t min_len, std::size_t max_len) {
    if (s.size() < min_len || s.size() > max_len) return std::nullopt;
    int v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

std::optional<Date> parse_iso_date(std::string_view s) {
    const auto p1 = s.find('-');
    if (p1 == std::string_view::npos) return std::nullopt;
    const auto p2 = s.find('-', p1 + 1);
    if (p2 == std::string_view::npos) return std::nullopt;
    const auto year = parse_int_field(s.substr(0, p1), 4, 4);
    const auto month = parse_int_field(s.substr(p1 + 1, p2 - p1 - 1), 1, 2);
    const auto day = parse_int_field(s.substr(p2 + 1), 1, 2);
    if (!year || !month || !day) return std::nullopt;
    if (*year < 1 || *month < 1 || *month > 12) return std::nullopt;
    if (*day < 1 || *day > days_in_month(*year, *month)) return std::nullopt;
    return Date{*year, *month, *day};
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_ascii_space(s[i])) ++i;
        std::size_t j = i;
        while (j < s.size() && !is_ascii_space(s[j])) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

constexpr std::array<std::string_view, 6> kDateCues = {"year", "date", "founded",
                                                       "born", "died", "since"};

}  // namespace

std::optional<Decimal> parse_number(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    bool seen_sign = false;
    bool seen_currency = false;
    std::string sign;
    // Accept sign and currency in either order, at most one of each.
    for (;;) {
        if (!seen_currency && strip_currency(s)) {
            seen_currency = true;
            continue;
        }
        if (!seen_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
            sign.push_back(s.front());
            s.remove_prefix(1);
            seen_sign = true;
            continue;
        }
        break;
    }
    auto digits = read_grouped_digits(s);
    if (!digits) return std::nullopt;
    std::string literal = sign + *digits;
    if (!s.empty() && s.front() == '.') {
        s.remove_prefix(1);
        std::size_t i = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == 0) return std::nullopt;
        literal.push_back('.');
        literal.append(s.substr(0, i));
        s.remove_prefix(i);
    }
    if (!s.empty() && s.front() == '%') s.remove_prefix(1);
    if (!s.empty()) return std::nullopt;
    return Decimal::parse_plain(literal);
}

std::optional<Date> parse_date(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;

    if (auto iso = parse_iso_date(s)) return iso;

    const auto words = split_ws(s);
    if (words.size() == 3) {
        // "Month D, YYYY" (comma attached to the day token)
        if (auto month = month_from_name(words[0])) {
            std::string_view day_tok = words[1];
            if (day_tok.empty() || day_tok.back() != ',') return std::nullopt;
            day_tok.remove_suffix(1);
            const auto day = parse_int_field(day_tok, 1, 2);
            const auto year = parse_int_field(words[2], 4, 4);
            if (!day || !year) return std::nullopt;
            if (*year < 1000 || *day < 1 || *day > days_in_month(*year, *month)) return std::nullopt;
            return Date{*year, *month, *day};
        }
        // "D Month YYYY"
        const auto day = parse_int_field(words[0], 1, 2);
        const auto month = month_from_name(words[1]);
        const auto year = parse_int_field(words[2], 4, 4);
        if (!day || !month || !year) return std::nullopt;
        if (*year < 1000 || *day < 1 || *day > days_in_month(*year, *month)) return std::nullopt;
        return Date{*year, *month, *day};
    }
    if (words.size() == 2) {
        const auto month = month_from_name(words[0]);
        const auto year = parse_int_field(words[1], 4, 4);
        if (!month || !year || *year < 1000) return std::nullopt;
        return Date{*year, *month, std::nullopt};
    }
    if (words.size() == 1) {
        const auto year = parse_int_field(words[0], 4, 4);
        if (!year || *year < 1000 || *year > 2999) return std::nullopt;
        return Date{*year, std::nullopt, std::nullopt};
    }
    return std::nullopt;
}

DataType infer_column_type(const std::vector<std::string>& cells,
                           std::string_view column_name,
                           const TypeInferOptions& opts) {
    std::size_t non_empty = 0;
    std::size_t numbers = 0;
    std::size_t dates = 0;
    for (const auto& cell : cells) {
        if (trim(cell).empty()) continue;
        ++non_empty;
        if (parse_number(cell)) ++numbers;
        if (parse_date(cell)) ++dates;
    }
    if (non_empty == 0) return DataType::Text;
    const auto passes = [&](std::size_t hits) {
        return static_cast<double>(hits) >=
               opts.threshold * static_cast<double>(non_empty);
    };
    const bool number_ok = passes(numbers);
    const bool date_ok = passes(dates);
    if (number_ok && date_ok) {
        for (const auto cue : kDateCues) {
            if (contains_icase(column_name, cue)) return DataType::Date;
        }
        return DataType::Number;
    }
    if (number_ok) return DataType::Number;
    if (date_ok) return DataType::Date;
    return DataType::Text;
}

Cell typed_cell(std::string raw, DataType dtype) {
    Cell cell;
    cell.raw = std::move(raw);
    cell.parsed = collapse_ws(cell.raw);
    if (dtype == DataType::Number) {
        if (auto num = parse_number(cell.raw)) cell.parsed = *num;
    } else if (dtype == DataType::Date) {
        if (auto date = parse_date(cell.raw)) cell.parsed = *date;
    }
    return cell;
}

Table annotate(const RawTable& raw, bool fixture, const TypeInferOptions& opts) {
    const std::size_t ncols = raw.header.size();
    std::vector<Column> columns(ncols);
    std::vector<std::string> column_cells;
    column_cells.reserve(raw.rows.size());
    for (std::size_t c = 0; c < ncols; ++c) {
        column_cells.clear();
        for (const auto& row : raw.rows) {
            column_cells.push_back(c < row.size() ? row[c] : std::string());
        }
        columns[c].name = std::string(trim(raw.header[c]));
        columns[c].dtype = infer_column_type(column_cells, columns[c].name, opts);
    }
    std::vector<std::vector<Cell>> rows;
    rows.reserve(raw.rows.size());
    for (const auto& raw_row : raw.rows) {
        std::vector<Cell> row;
        row.reserve(ncols);
        for (std::size_t c = 0; c < ncols && c < raw_row.size(); ++c) {
            row.push_back(typed_cell(raw_row[c], columns[c].dtype));
        }
        rows.push_back(std::move(row));
    }
    return Table(raw.table_id, std::move(columns), std::move(rows), fixture);
}

}  // namespace tabsynth
