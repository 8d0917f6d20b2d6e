#include <string>
#include <vector>

#include "doctest.h"
#include "support/fixture.hpp"
#include "tabsynth/errors.hpp"
#include "tabsynth/oracle.hpp"

using namespace tabsynth;

TEST_CASE("select_rows returns ascending matching indices") {
    const Table t = testsup::t_fix();
    CHECK(select_rows(t, testsup::num_cmp(3, NumOp::Greater, "9")) ==
          std::vector<std::size_t>{0, 1, 3, 4});
    CHECK(select_rows(t, testsup::equals_text(1, "Atlantis")).empty());
    CHECK(select_rows(t, testsup::date_cmp(2, DateOp::Later, Date{1994, 12, 31}, "1994-12-31")) ==
          std::vector<std::size_t>{2, 3, 4});
    CHECK_THROWS_AS(select_rows(t, testsup::equals_text(9, "x")), ColumnOutOfRangeError);
}

TEST_CASE("aggregate is exact") {
    const auto d = [](const char* s) { return *Decimal::parse_plain(s); };
    CHECK(aggregate({d("20"), d("15")}, AggOp::Sum).to_string() == "35");
    CHECK(aggregate({d("10"), d("5")}, AggOp::Average).to_string() == "7.5");
    CHECK(aggregate({}, AggOp::Count).to_string() == "0");
    CHECK(aggregate({d("0.1"), d("0.2")}, AggOp::Sum).to_string() == "0.3");
    CHECK_THROWS_AS(aggregate({}, AggOp::Sum), EmptyInputError);
    CHECK_THROWS_AS(aggregate({}, AggOp::Average), EmptyInputError);
}

TEST_CASE("average stays within the input range") {
    const auto d = [](const char* s) { return *Decimal::parse_plain(s); };
    const std::vector<Decimal> vals = {d("3"), d("4"), d("8")};
    const Decimal avg = aggregate(vals, AggOp::Average);
    CHECK(d("3").compare(avg) <= 0);
    CHECK(avg.compare(d("8")) <= 0);
    CHECK(format_number_max2(avg) == "5");
}

TEST_CASE("kth_by sorts stably by the parsed key") {
    const Table t = testsup::t_fix();
    const std::vector<std::size_t> all = {0, 1, 2, 3, 4};
    // Founded ascending: Beta 1985 < Alpha 1990 < Delta 1995 < Gamma 2000 < Epsilon 2010.
    CHECK(kth_by(t, all, 2, SortOrder::Ascending, 1) == 1);
    CHECK(kth_by(t, all, 2, SortOrder::Ascending, 2) == 0);
    CHECK(kth_by(t, all, 2, SortOrder::Descending, 1) == 4);
    CHECK(kth_by(t, {0, 2}, 3, SortOrder::Descending, 2) == 2);

    // Beta and Delta tie at profit 20; stable sort keeps row order.
    const auto sorted = sorted_by(t, all, 3, SortOrder::Descending);
    CHECK(sorted == std::vector<std::size_t>{1, 3, 4, 0, 2});

    CHECK_THROWS_AS(kth_by(t, all, 3, SortOrder::Ascending, 0), KOutOfRangeError);
    CHECK_THROWS_AS(kth_by(t, all, 3, SortOrder::Ascending, 6), KOutOfRangeError);
}

TEST_CASE("asc at k equals desc at n-k+1 when keys are distinct") {
    const Table t = testsup::t_fix();
    const std::vector<std::size_t> all = {0, 1, 2, 3, 4};
    for (int k = 1; k <= 5; ++k) {
        CHECK(kth_by(t, all, 2, SortOrder::Ascending, k) ==
              kth_by(t, all, 2, SortOrder::Descending, 5 - k + 1));
    }
}

TEST_CASE("unparsable sort keys are reported") {
    const Table t = testsup::quick_table("gaps", {"Name", "Score", "Pad"},
                                         {{"a", "10", "x"},
                                          {"b", "n/a", "x"},
                                          {"c", "30", "x"},
                                          {"d", "40", "x"},
                                          {"e", "50", "x"}});
    REQUIRE(t.columns()[1].dtype == DataType::Number);
    CHECK_THROWS_AS(kth_by(t, {0, 1, 2}, 1, SortOrder::Ascending, 1), UnparsableKeyError);
    CHECK(kth_by(t, {0, 2}, 1, SortOrder::Ascending, 2) == 2);
}

TEST_CASE("date differences borrow like age computation") {
    const Duration d = date_difference(Date{1985, 6, 15}, Date{1990, 1, 1});
    CHECK(d == Duration{4, 6, 17});
    CHECK(date_difference(Date{1990, 1, 1}, Date{1985, 6, 15}) == d);
    CHECK(date_difference(Date{1990, 1, 1}, Date{1990, 1, 1}) == Duration{0, 0, 0});
    CHECK(date_difference(Date{2000, {}, {}}, Date{2016, {}, {}}) == Duration{16, 0, 0});
    CHECK(date_difference(Date{2020, 12, 15}, Date{2021, 1, 1}) == Duration{0, 0, 17});
    CHECK(date_difference(Date{1999, 2, 1}, Date{1999, 3, 1}) == Duration{0, 1, 0});
    CHECK(date_difference(Date{2000, 2, 1}, Date{2000, 2, 29}) == Duration{0, 0, 28});
}

TEST_CASE("year-only differences satisfy the triangle equality") {
    const Date a{1950, {}, {}}, b{1972, {}, {}}, c{2001, {}, {}};
    CHECK(date_difference(a, c).years ==
          date_difference(a, b).years + date_difference(b, c).years);
}

TEST_CASE("number formatting groups large integers") {
    const auto d = [](const char* s) { return *Decimal::parse_plain(s); };
    CHECK(format_number(d("1574013")) == "1,574,013");
    CHECK(format_number(d("7.5")) == "7.5");
    CHECK(format_number(d("35")) == "35");
    CHECK(format_number(d("9999")) == "9999");
    CHECK(format_number(d("10000")) == "10,000");
    CHECK(format_number(d("-10000")) == "-10,000");
    CHECK(format_number(d("12345.678")) == "12,345.678");
    CHECK(format_number(d("-3.50")) == "-3.5");

    CHECK(format_number_max2(d("3.3333")) == "3.33");
    CHECK(format_number_max2(d("0.125")) == "0.13");
    CHECK(format_number_max2(d("20000.005")) == "20,000.01");
}

TEST_CASE("durations format as the largest nonzero unit") {
    CHECK(format_duration(Duration{16, 0, 0}) == "16 years");
    CHECK(format_duration(Duration{0, 7, 3}) == "7 months");
    CHECK(format_duration(Duration{0, 0, 1}) == "1 day");
    CHECK(format_duration(Duration{1, 2, 3}) == "1 year");
    CHECK(format_duration(Duration{0, 1, 0}) == "1 month");
    CHECK(format_duration(Duration{0, 0, 0}) == "0 days");
    CHECK(format_duration(date_difference(Date{2021, 1, 31}, Date{2021, 3, 1})) == "1 month");
}
