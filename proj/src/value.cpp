#include "tabsynth/value.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace tabsynth {

namespace {

__int128 pow10_i128(int n) {
    __int128 p = 1;
    for (int i = 0; i < n; ++i) p *= 10;
    return p;
}

void append_i128_digits(std::string& out, __int128 v) {
    if (v == 0) {
        out.push_back('0');
        return;
    }
    std::array<char, 40> buf;
    int n = 0;
    while (v > 0) {
        buf[n++] = static_cast<char>('0' + static_cast<int>(v % 10));
        v /= 10;
    }
    while (n > 0) out.push_back(buf[--n]);
}

}  // namespace

Decimal Decimal::from_int(std::int64_t v) {
    Decimal d;
    d.mantissa_ = v;
    d.scale_ = 0;
    return d;
}

Decimal Decimal::make(__int128 mantissa, int scale) {
    Decimal d;
    d.mantissa_ = mantissa;
    d.scale_ = scale;
    d.normalize();
    return d;
}

void Decimal::normalize() {
    while (scale_ > 0 && mantissa_ % 10 == 0) {
        mantissa_ /= 10;
        --scale_;
    }
    if (mantissa_ == 0) scale_ = 0;
}

std::optional<Decimal> Decimal::parse_plain(std::string_view s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
        negative = s[i] == '-';
        ++i;
    }
    __int128 mantissa = 0;
    int digits = 0;
    int scale = 0;
    bool any_int_digit = false;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
        mantissa = mantissa * 10 + (s[i] - '0');
        ++digits;
        any_int_digit = true;
        ++i;
    }
    if (i < s.size() && s[i] == '.') {
        ++i;
        bool any_frac_digit = false;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            mantissa = mantissa * 10 + (s[i] - '0');
            ++digits;
            ++scale;
            any_frac_digit = true;
            ++i;
        }
        if (!any_frac_digit) return std::nullopt;
    }
    if (!any_int_digit || i != s.size()) return std::nullopt;
    if (digits > kMaxDigits || scale > kMaxScale) return std::nullopt;
    if (negative) mantissa = -mantissa;
    Decimal d;
    d.mantissa_ = mantissa;
    d.scale_ = scale;
    d.normalize();
    return d;
}

int Decimal::compare(const Decimal& o) const {
    const int s = std::max(scale_, o.scale_);
    const __int128 a = mantissa_ * pow10_i128(s - scale_);
    const __int128 b = o.mantissa_ * pow10_i128(s - o.scale_);
    if (a < b) return -1;
    if (a > b) return 1;
    return 0;
}

Decimal Decimal::plus(const Decimal& o) const {
    const int s = std::max(scale_, o.scale_);
    Decimal d;
    d.mantissa_ = mantissa_ * pow10_i128(s - scale_) + o.mantissa_ * pow10_i128(s - o.scale_);
    d.scale_ = s;
    d.normalize();
    return d;
}

Decimal Decimal::divided_by(std::int64_t count, int guard_digits) const {
    const __int128 scaled = mantissa_ * pow10_i128(guard_digits);
    Decimal d;
    d.mantissa_ = scaled / count;  // truncates toward zero
    d.scale_ = scale_ + guard_digits;
    d.normalize();
    return d;
}

Decimal Decimal::rounded(int max_dp) const {
    if (scale_ <= max_dp) return *this;
    const __int128 divisor = pow10_i128(scale_ - max_dp);
    __int128 q = mantissa_ / divisor;
    const __int128 rem = mantissa_ % divisor;
    const __int128 half = divisor / 2;  // exact, divisor is 10^k with k >= 1
    if (rem >= half) {
        ++q;
    } else if (-rem >= half) {
        --q;
    }
    Decimal d;
    d.mantissa_ = q;
    d.scale_ = max_dp;
    d.normalize();
    return d;
}

std::string Decimal::to_string() const {
    std::string out;
    __int128 m = mantissa_;
    if (m < 0) {
        out.push_back('-');
        m = -m;
    }
    if (scale_ == 0) {
        append_i128_digits(out, m);
        return out;
    }
    const __int128 p = pow10_i128(scale_);
    append_i128_digits(out, m / p);
    out.push_back('.');
    std::string frac;
    append_i128_digits(frac, m % p);
    out.append(std::string(static_cast<std::size_t>(scale_) - frac.size(), '0'));
    out.append(frac);
    return out;
}

int Date::compare(const Date& o) const {
    const auto key = [](const Date& d) {
        return std::array<int, 3>{d.year, d.month.value_or(1), d.day.value_or(1)};
    };
    const auto a = key(*this);
    const auto b = key(o);
    if (a < b) return -1;
    if (a > b) return 1;
    return 0;
}

std::string Date::to_string() const {
    std::string out = std::to_string(year);
    if (month) {
        out += (*month < 10 ? "-0" : "-") + std::to_string(*month);
        if (day) out += (*day < 10 ? "-0" : "-") + std::to_string(*day);
    }
    return out;
}

bool is_leap_year(int year) {
    return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

int days_in_month(int year, int month) {
    static constexpr int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[month - 1];
}

bool value_equal(const Value& a, const Value& b) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<std::string>(a)) {
        return std::get<std::string>(a) == std::get<std::string>(b);
    }
    if (std::holds_alternative<Decimal>(a)) {
        return std::get<Decimal>(a) == std::get<Decimal>(b);
    }
    return std::get<Date>(a) == std::get<Date>(b);
}

}  // namespace tabsynth
