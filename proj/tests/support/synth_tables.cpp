#include "support/synth_tables.hpp"

#include <array>
#include <cstdio>
#include <string>

#include "tabsynth/ingest.hpp"
#include "tabsynth/rng.hpp"
#include "tabsynth/typeinfer.hpp"

namespace tabsynth::testsupport {

namespace {

constexpr std::array<const char*, 12> kNames = {
    "Alder", "Birch", "Cedar",  "Derwent", "Elm",    "Fallow",
    "Grove", "Hazel", "Juniper", "Kestrel", "Linden", "Marsh",
};
constexpr std::array<const char*, 8> kCities = {
    "Lyon", "Porto", "Graz", "Turku", "Leeds", "Gdansk", "Basel", "Ghent",
};
constexpr std::array<const char*, 12> kMonths = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December",
};

std::string text_value(Rng& rng, std::size_t row) {
    // A label pool larger than most tables keeps referents mostly unique
    // while cities repeat for equality filters.
    if (rng.coin()) return std::string(kCities[rng.pick_index(kCities.size())]);
    return std::string(kNames[rng.pick_index(kNames.size())]) + "-" + std::to_string(row + 1);
}

std::string number_value(Rng& rng) {
    const auto magnitude = rng.below(4);
    const auto base = rng.below(magnitude == 3 ? 2000000 : 95) + 1;
    std::string s = std::to_string(base);
    if (magnitude == 3 && s.size() > 4) {
        // occasional comma grouping, as scraped tables have
        std::string grouped;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i > 0 && (s.size() - i) % 3 == 0) grouped.push_back(',');
            grouped.push_back(s[i]);
        }
        return grouped;
    }
    if (magnitude == 2) s += "." + std::to_string(rng.below(9) + 1);
    return s;
}

std::string date_value(Rng& rng) {
    const int year = 1900 + static_cast<int>(rng.below(120));
    const auto style = rng.below(4);
    if (style == 0) return std::to_string(year);
    const int month = 1 + static_cast<int>(rng.below(12));
    const int day = 1 + static_cast<int>(rng.below(28));
    if (style == 1)
        return std::string(kMonths[static_cast<std::size_t>(month - 1)]) + " " +
               std::to_string(day) + ", " + std::to_string(year);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

}  // namespace

Table synth_table(std::uint64_t seed, std::size_t rows, std::size_t cols) {
    Rng rng(seed);
    RawTable raw;
    raw.table_id = "synth-" + std::to_string(seed);

    enum class Kind { Text, Number, Date };
    std::vector<Kind> kinds = {Kind::Text, Kind::Number, Kind::Date};
    while (kinds.size() < cols) {
        const auto pick = rng.below(3);
        kinds.push_back(pick == 0 ? Kind::Text : pick == 1 ? Kind::Number : Kind::Date);
    }

    std::size_t text_n = 0, num_n = 0, date_n = 0;
    for (const Kind k : kinds) {
        switch (k) {
            case Kind::Text:
                raw.header.push_back(++text_n == 1 ? "Name" : "Site " + std::to_string(text_n));
                break;
            case Kind::Number:
                raw.header.push_back(++num_n == 1 ? "Score" : "Total " + std::to_string(num_n));
                break;
            case Kind::Date:
                raw.header.push_back(++date_n == 1 ? "Founded"
                                                   : "Date " + std::to_string(date_n));
                break;
        }
    }

    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<std::string> row;
        row.reserve(cols);
        for (std::size_t c = 0; c < cols; ++c) {
            switch (kinds[c]) {
                case Kind::Text: row.push_back(text_value(rng, r)); break;
                case Kind::Number: row.push_back(number_value(rng)); break;
                case Kind::Date: row.push_back(date_value(rng)); break;
            }
        }
        raw.rows.push_back(std::move(row));
    }
    return annotate(raw);
}

std::vector<Table> synth_tables(std::uint64_t seed, std::size_t count, std::size_t min_rows,
                                std::size_t max_rows) {
    Rng rng(mix_seed(seed, 0x7ab1e5ull));
    std::vector<Table> tables;
    tables.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t rows = min_rows + rng.below(max_rows - min_rows + 1);
        const std::size_t cols = 3 + rng.below(4);
        char id[32];
        std::snprintf(id, sizeof id, "synth-%06zu", i);
        Table t = synth_table(rng.next(), rows, cols);
        // synth_table ids carry the seed; rebuild with the padded id so
        // lexicographic order matches creation order.
        tables.emplace_back(id, std::vector<Column>(t.columns()),
                            std::vector<std::vector<Cell>>(t.rows()));
    }
    return tables;
}

}  // namespace tabsynth::testsupport
