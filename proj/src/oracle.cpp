#include "tabsynth/oracle.hpp"

#include <algorithm>

#include "tabsynth/errors.hpp"

namespace tabsynth {

std::vector<std::size_t> select_rows(const Table& t, const Condition& c, EvalDiag* diag) {
    if (c.column_index < 0 || static_cast<std::size_t>(c.column_index) >= t.column_count()) {
        throw ColumnOutOfRangeError(c.column_index);
    }
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        if (eval_condition(t.cell(r, static_cast<std::size_t>(c.column_index)), c, diag)) {
            out.push_back(r);
        }
    }
    return out;
}

Decimal aggregate(const std::vector<Decimal>& values, AggOp op) {
    if (op == AggOp::Count) return Decimal::from_int(static_cast<std::int64_t>(values.size()));
    if (values.empty()) throw EmptyInputError();
    Decimal sum = values.front();
    for (std::size_t i = 1; i < values.size(); ++i) sum = sum.plus(values[i]);
    if (op == AggOp::Sum) return sum;
    return sum.divided_by(static_cast<std::int64_t>(values.size()));
}

std::vector<std::size_t> sorted_by(const Table& t, const std::vector<std::size_t>& rows,
                                   int key_col, SortOrder order) {
    if (key_col < 0 || static_cast<std::size_t>(key_col) >= t.column_count()) {
        throw ColumnOutOfRangeError(key_col);
    }
    const auto col = static_cast<std::size_t>(key_col);
    const DataType dtype = t.columns()[col].dtype;
    for (const std::size_t r : rows) {
        const Value& v = t.cell(r, col).parsed;
        if (dtype == DataType::Number && !std::holds_alternative<Decimal>(v)) {
            throw UnparsableKeyError(r);
        }
        if (dtype == DataType::Date && !std::holds_alternative<Date>(v)) {
            throw UnparsableKeyError(r);
        }
    }
    std::vector<std::size_t> sorted = rows;
    const auto less = [&](std::size_t a, std::size_t b) {
        const Value& va = t.cell(a, col).parsed;
        const Value& vb = t.cell(b, col).parsed;
        int cmp = 0;
        if (dtype == DataType::Number) {
            cmp = std::get<Decimal>(va).compare(std::get<Decimal>(vb));
        } else if (dtype == DataType::Date) {
            cmp = std::get<Date>(va).compare(std::get<Date>(vb));
        } else {
            const auto& sa = std::get<std::string>(va);
            const auto& sb = std::get<std::string>(vb);
            cmp = sa.compare(sb) < 0 ? -1 : (sa == sb ? 0 : 1);
        }
        return order == SortOrder::Ascending ? cmp < 0 : cmp > 0;
    };
    std::stable_sort(sorted.begin(), sorted.end(), less);
    return sorted;
}

std::size_t kth_by(const Table& t, const std::vector<std::size_t>& rows,
                   int key_col, SortOrder order, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > rows.size()) throw KOutOfRangeError(k);
    return sorted_by(t, rows, key_col, order)[static_cast<std::size_t>(k - 1)];
}

Duration date_difference(const Date& a, const Date& b) {
    const Date& earlier = a.compare(b) <= 0 ? a : b;
    const Date& later = a.compare(b) <= 0 ? b : a;
    int y1 = earlier.year, m1 = earlier.month.value_or(1), d1 = earlier.day.value_or(1);
    int y2 = later.year, m2 = later.month.value_or(1), d2 = later.day.value_or(1);
    int days = d2 - d1;
    int months = m2 - m1;
    int years = y2 - y1;
    if (days < 0) {
        // Borrow the month preceding (y2, m2).
        int bm = m2 - 1, by = y2;
        if (bm == 0) {
            bm = 12;
            --by;
        }
        days += days_in_month(by, bm);
        --months;
    }
    if (months < 0) {
        months += 12;
        --years;
    }
    return Duration{years, months, days};
}

namespace {

std::string group_integer_digits(const std::string& digits) {
    std::string out;
    const std::size_t n = digits.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && (n - i) % 3 == 0) out.push_back(',');
        out.push_back(digits[i]);
    }
    return out;
}

}  // namespace

std::string format_number(const Decimal& v) {
    std::string plain = v.to_string();
    std::string sign;
    if (!plain.empty() && plain[0] == '-') {
        sign = "-";
        plain.erase(0, 1);
    }
    const auto dot = plain.find('.');
    std::string int_part = dot == std::string::npos ? plain : plain.substr(0, dot);
    const std::string frac_part = dot == std::string::npos ? "" : plain.substr(dot);
    if (int_part.size() >= 5) int_part = group_integer_digits(int_part);
    return sign + int_part + frac_part;
}

std::string format_number_max2(const Decimal& v) { return format_number(v.rounded(2)); }

std::string format_duration(const Duration& d) {
    const auto unit = [](int n, const char* name) {
        return std::to_string(n) + " " + name + (n == 1 ? "" : "s");
    };
    if (d.years > 0) return unit(d.years, "year");
    if (d.months > 0) return unit(d.months, "month");
    return unit(d.days, "day");
}

}  // namespace tabsynth
