#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace kelly {

/// Proleptic Gregorian calendar day.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    /// Strict YYYY-MM-DD; nullopt on bad syntax or an impossible day.
    [[nodiscard]] static std::optional<Date> parse(std::string_view text);

    [[nodiscard]] std::string to_string() const;

    /// Days since 1970-01-01.
    [[nodiscard]] long long ordinal() const noexcept;

    friend auto operator<=>(const Date&, const Date&) = default;
};

[[nodiscard]] bool is_valid_date(int year, int month, int day) noexcept;

}  // namespace kelly
