#pragma once

// Shared scaffolding for the unit suites: portable date arithmetic for
// building synthetic weekday calendars, a self-contained normal sampler on
// the library's deterministic RNG, and temp-file plumbing.

#include "quantbench/calendar.hpp"
#include "quantbench/rng.hpp"
#include "quantbench/series.hpp"

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace qbtest {

inline bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

inline int days_in_month(int y, int m) {
    static const int base[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && is_leap(y) ? 29 : base[m - 1];
}

inline quantbench::Date next_day(quantbench::Date d) {
    if (++d.day > days_in_month(d.year, d.month)) {
        d.day = 1;
        if (++d.month > 12) {
            d.month = 1;
            ++d.year;
        }
    }
    return d;
}

// Sakamoto's method; 0 = Sunday.
inline int day_of_week(const quantbench::Date& d) {
    static const int t[] = {0, 3, 2, 5, 0, 3, 5, 1, 4, 6, 2, 4};
    int y = d.year - (d.month < 3);
    return (y + y / 4 - y / 100 + y / 400 + t[d.month - 1] + d.day) % 7;
}

inline quantbench::TradingCalendar weekday_calendar(quantbench::Date start, std::size_t n) {
    std::vector<quantbench::Date> dates;
    quantbench::Date d = start;
    while (dates.size() < n) {
        const int dow = day_of_week(d);
        if (dow != 0 && dow != 6) dates.push_back(d);
        d = next_day(d);
    }
    return quantbench::TradingCalendar(std::move(dates));
}

// Box-Muller on the library RNG so sampled values are identical on every
// platform (std::normal_distribution is not portable across libstdc++/libc++).
inline double normal_draw(quantbench::Rng& rng) {
    double u1 = rng.next_double();
    while (u1 <= 0.0) u1 = rng.next_double();
    const double u2 = rng.next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline std::filesystem::path temp_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "quantbench_tests";
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = temp_dir() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline quantbench::ReturnSeries make_series(const std::string& name,
                                            const quantbench::TradingCalendar& cal,
                                            std::vector<double> values) {
    return quantbench::ReturnSeries(name, cal, std::move(values));
}

} // namespace qbtest
