#pragma once

#include "kelly/date.hpp"

namespace support {

/// Inverse of Date::ordinal (days since 1970-01-01).
inline kelly::Date date_from_ordinal(long long days) {
    const long long z = days + 719468;
    const long long era = (z >= 0 ? z : z - 146096) / 146097;
    const long long doe = z - era * 146097;
    const long long yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long long doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const long long mp = (5 * doy + 2) / 153;
    const int d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    const int m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    return {static_cast<int>(yoe + era * 400 + (m <= 2 ? 1 : 0)), m, d};
}

/// 0 = Monday.
inline int weekday(long long days) { return static_cast<int>(((days % 7) + 7 + 3) % 7); }

}  // namespace support
