#include <sstream>

#include <gtest/gtest.h>

#include "kelly/date.hpp"
#include "kelly/errors.hpp"
#include "kelly/prices.hpp"

using namespace kelly;
using namespace kelly::backtest;

namespace {

std::size_t error_line(const std::string& csv) {
    std::istringstream in(csv);
    try {
        (void)ingest_prices(in);
    } catch (const IngestError& e) {
        return e.line();
    }
    ADD_FAILURE() << "no IngestError for:\n" << csv;
    return 0;
}

}  // namespace

TEST(Date, ParseAndFormat) {
    const auto d = Date::parse("1985-01-29");
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(d->year, 1985);
    EXPECT_EQ(d->to_string(), "1985-01-29");
    EXPECT_TRUE(Date::parse("2000-02-29").has_value());
    EXPECT_FALSE(Date::parse("1900-02-29").has_value());
    EXPECT_FALSE(Date::parse("2019-13-01").has_value());
    EXPECT_FALSE(Date::parse("2019-1-01").has_value());
    EXPECT_FALSE(Date::parse("01/02/2019").has_value());
    EXPECT_FALSE(Date::parse("2019-01-01x").has_value());
}

TEST(Date, OrdinalAndOrdering) {
    EXPECT_EQ((Date{1970, 1, 1}).ordinal(), 0);
    EXPECT_EQ((Date{2000, 3, 1}).ordinal() - (Date{2000, 2, 28}).ordinal(), 2);
    EXPECT_LT((Date{2019, 8, 27}), (Date{2019, 8, 28}));
}

TEST(Ingest, AcceptsBomCrlfAndBlankLines) {
    std::istringstream in("\xEF\xBB\xBF" "date,close\r\n2019-01-02,23346.24\r\n\r\n2019-01-03,22686.22\r\n");
    const PriceSeries s = ingest_prices(in);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s.date(1).to_string(), "2019-01-03");
    EXPECT_DOUBLE_EQ(s.close(0), 23346.24);
}

TEST(Ingest, ReportsOffendingLine) {
    EXPECT_EQ(error_line("date,close\n2019-01-02,100\n2019-01-03,-5\n"), 3u);
    EXPECT_EQ(error_line("date,close\n2019-01-02,abc\n"), 2u);
    EXPECT_EQ(error_line("date,close\n2019-01-02,1\n2019-01-02,2\n"), 3u);
    EXPECT_EQ(error_line("date,close\n2019-01-03,1\n2019-01-02,2\n"), 3u);
    EXPECT_EQ(error_line("date,close\n2019-02-30,1\n"), 2u);
    EXPECT_EQ(error_line("date,close\n2019-01-02\n"), 2u);
    EXPECT_EQ(error_line("Date,Open\n2019-01-02,1\n"), 1u);
    EXPECT_EQ(error_line("date,close\n2019-01-02,0\n"), 2u);
}

TEST(Ingest, MessageNamesLineAndReason) {
    std::istringstream in("date,close\n2019-01-02,100\n2019-01-03,-5\n");
    try {
        (void)ingest_prices(in);
        FAIL();
    } catch (const IngestError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("non-positive close"), std::string::npos);
    }
}

TEST(Ingest, EmptyInput) {
    std::istringstream header_only("date,close\n");
    EXPECT_THROW((void)ingest_prices(header_only), IngestError);
    std::istringstream nothing("");
    EXPECT_THROW((void)ingest_prices(nothing), IngestError);
}

TEST(Ingest, MissingFile) {
    try {
        (void)ingest_prices_file("/nonexistent/prices.csv");
        FAIL();
    } catch (const IngestError& e) {
        EXPECT_EQ(e.line(), 0u);
        EXPECT_NE(std::string(e.what()).find("/nonexistent/prices.csv"), std::string::npos);
    }
}

TEST(PriceSeries, ConstructorValidates) {
    EXPECT_THROW(PriceSeries({{Date{2019, 1, 2}, 1.0}, {Date{2019, 1, 1}, 1.0}}), DomainError);
    EXPECT_THROW(PriceSeries({{Date{2019, 1, 2}, 0.0}}), DomainError);
}
