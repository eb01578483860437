#include "kelly/prices.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "kelly/errors.hpp"

namespace kelly::backtest {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

PriceSeries::PriceSeries(std::vector<PricePoint> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (!(entries_[i].close > 0.0) || !std::isfinite(entries_[i].close)) {
            throw DomainError("PriceSeries: non-positive close on " + entries_[i].date.to_string());
        }
        if (i > 0 && !(entries_[i - 1].date < entries_[i].date)) {
            throw DomainError("PriceSeries: dates not strictly increasing at " + entries_[i].date.to_string());
        }
    }
}

PriceSeries ingest_prices(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<PricePoint> entries;
    bool header_seen = false;

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
        view = trim(view);
        if (view.empty()) continue;

        const auto comma = view.find(',');
        if (!header_seen) {
            if (comma == std::string_view::npos || trim(view.substr(0, comma)) != "date" ||
                trim(view.substr(comma + 1)) != "close") {
                throw IngestError(line_no, "expected header 'date,close'");
            }
            header_seen = true;
            continue;
        }
        if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos) {
            throw IngestError(line_no, "expected two fields 'date,close'");
        }
        const std::string_view date_text = trim(view.substr(0, comma));
        const std::string_view close_text = trim(view.substr(comma + 1));

        const auto date = Date::parse(date_text);
        if (!date) throw IngestError(line_no, "invalid ISO-8601 date '" + std::string(date_text) + "'");

        double close = 0.0;
        const auto [ptr, ec] = std::from_chars(close_text.data(), close_text.data() + close_text.size(), close);
        if (ec != std::errc() || ptr != close_text.data() + close_text.size() || close_text.empty() ||
            !std::isfinite(close)) {
            throw IngestError(line_no, "non-numeric close '" + std::string(close_text) + "'");
        }
        if (!(close > 0.0)) {
            throw IngestError(line_no, "non-positive close " + std::string(close_text));
        }
        if (!entries.empty()) {
            if (entries.back().date == *date) throw IngestError(line_no, "duplicate date " + date->to_string());
            if (*date < entries.back().date) {
                throw IngestError(line_no, "date " + date->to_string() + " precedes " +
                                               entries.back().date.to_string());
            }
        }
        entries.push_back({*date, close});
    }
    if (!header_seen) throw IngestError(line_no, "empty input, expected header 'date,close'");
    if (entries.empty()) throw IngestError(line_no, "price series is empty");
    return PriceSeries(std::move(entries));
}

PriceSeries ingest_prices_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError(0, "cannot open file", path);
    try {
        return ingest_prices(in);
    } catch (const IngestError& e) {
        throw IngestError(e.line(), e.detail(), path);
    }
}

}  // namespace kelly::backtest
