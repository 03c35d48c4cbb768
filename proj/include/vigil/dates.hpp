#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

// ISO-8601 date helpers. Internally dates travel as strings; arithmetic is
// only needed by the synthetic generator (weekday grids).

namespace vigil {

inline bool is_iso_date(const std::string& s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

// days since 1970-01-01 (proleptic Gregorian)
inline long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    long era = (y >= 0 ? y : y - 399) / 400;
    unsigned yoe = static_cast<unsigned>(y - era * 400);
    unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1u;
    unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

inline void civil_from_days(long z, int& y, int& m, int& d) {
    z += 719468;
    long era = (z >= 0 ? z : z - 146096) / 146097;
    unsigned doe = static_cast<unsigned>(z - era * 146097);
    unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    long yy = static_cast<long>(yoe) + era * 400;
    unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yy + (m <= 2));
}

inline long date_to_days(const std::string& iso) {
    if (!is_iso_date(iso)) throw std::invalid_argument("invalid ISO date: " + iso);
    int y = std::stoi(iso.substr(0, 4));
    int m = std::stoi(iso.substr(5, 2));
    int d = std::stoi(iso.substr(8, 2));
    return days_from_civil(y, m, d);
}

inline std::string days_to_date(long days) {
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
    return buf;
}

// 0 == Monday ... 6 == Sunday
inline int weekday_of(long days) {
    long w = (days + 3) % 7;
    return static_cast<int>(w < 0 ? w + 7 : w);
}

// n consecutive weekdays starting at `start` (start moved forward to a
// weekday if it falls on a weekend)
inline std::vector<std::string> weekday_grid(const std::string& start, int n) {
    std::vector<std::string> out;
    out.reserve(n);
    long d = date_to_days(start);
    while (static_cast<int>(out.size()) < n) {
        if (weekday_of(d) < 5) out.push_back(days_to_date(d));
        ++d;
    }
    return out;
}

}  // namespace vigil
