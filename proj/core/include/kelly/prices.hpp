#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string_view>
#include <vector>

#include "kelly/date.hpp"

namespace kelly::backtest {

struct PricePoint {
    Date date;
    double close = 0.0;
};

/// Dated closing prices with strictly increasing dates and positive closes.
class PriceSeries {
public:
    PriceSeries() = default;
    /// Validates the invariants; throws DomainError on violation.
    explicit PriceSeries(std::vector<PricePoint> entries);

    [[nodiscard]] std::span<const PricePoint> entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
    [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
    [[nodiscard]] const PricePoint& operator[](std::size_t i) const { return entries_[i]; }
    [[nodiscard]] double close(std::size_t i) const { return entries_[i].close; }
    [[nodiscard]] const Date& date(std::size_t i) const { return entries_[i].date; }

private:
    std::vector<PricePoint> entries_;
};

/// Reads `date,close` CSV (ISO-8601 dates, LF or CRLF, optional UTF-8 BOM).
/// Throws IngestError naming the offending line.
[[nodiscard]] PriceSeries ingest_prices(std::istream& in);

/// Convenience overload for a file path; IngestError on unreadable files
/// carries line 0.
[[nodiscard]] PriceSeries ingest_prices_file(const std::string& path);

}  // namespace kelly::backtest
