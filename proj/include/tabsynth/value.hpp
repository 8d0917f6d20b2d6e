#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace tabsynth {

// Exact decimal number: mantissa * 10^-scale. No binary floats anywhere on
// the answer path; parsing "841,969" and formatting it back yields the same
// digits. Mantissa capped at 18 significant digits and scale at 12, which
// leaves headroom in __int128 for 30-row sums plus average guard digits.
class Decimal {
public:
    static constexpr int kMaxDigits = 18;
    static constexpr int kMaxScale = 12;

    Decimal() = default;
    static Decimal from_int(std::int64_t v);
    // Parses a bare decimal literal: optional sign, digits, optional fraction.
    // No separators, currency or percent; cell-level syntax lives in typeinfer.
    static std::optional<Decimal> parse_plain(std::string_view s);
    static Decimal make(__int128 mantissa, int scale);

    int compare(const Decimal& o) const;  // -1, 0, 1
    bool operator==(const Decimal& o) const { return compare(o) == 0; }
    bool operator<(const Decimal& o) const { return compare(o) < 0; }

    Decimal plus(const Decimal& o) const;
    // Truncating division by a positive integer count, carried out with
    // `guard_digits` extra fraction digits past the wider operand scale.
    Decimal divided_by(std::int64_t count, int guard_digits = 4) const;
    // Half-away-from-zero rounding to at most max_dp fraction digits.
    Decimal rounded(int max_dp) const;

    bool is_integer() const { return scale_ == 0; }
    bool is_negative() const { return mantissa_ < 0; }
    __int128 mantissa() const { return mantissa_; }
    int scale() const { return scale_; }

    // Plain digits, no grouping; fraction trailing zeros already normalized
    // away at construction ("-3.50" parses to "-3.5").
    std::string to_string() const;

private:
    __int128 mantissa_ = 0;
    int scale_ = 0;
    void normalize();
};

// Calendar date with optional month/day ("1964" carries a year only).
// Ordering treats missing parts as month=1, day=1.
struct Date {
    std::int32_t year = 1;
    std::optional<std::int32_t> month;
    std::optional<std::int32_t> day;

    int compare(const Date& o) const;
    bool operator==(const Date& o) const { return compare(o) == 0; }
    bool operator<(const Date& o) const { return compare(o) < 0; }

    std::string to_string() const;  // ISO-style; partial dates render what they have
};

bool is_leap_year(int year);
int days_in_month(int year, int month);

// Cell value: text (canonical whitespace-collapsed form), exact number,
// or calendar date. Exactly one alternative.
using Value = std::variant<std::string, Decimal, Date>;

bool value_equal(const Value& a, const Value& b);

}  // namespace tabsynth
