#include "quantbench/calendar.hpp"

#include "quantbench/errors.hpp"

#include <algorithm>
#include <cstdio>

namespace quantbench {

namespace {

bool leap_year(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
}

int days_in_month(int y, int m) {
    static const int lengths[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && leap_year(y)) return 29;
    return lengths[m - 1];
}

} // namespace

bool Date::is_valid(int y, int m, int d) {
    if (y < 1 || m < 1 || m > 12 || d < 1) return false;
    return d <= days_in_month(y, m);
}

Date Date::parse(const std::string& iso) {
    int y = 0, m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(iso.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &tail) != 3 || iso.size() != 10) {
        throw InputError("bad date '" + iso + "': expected YYYY-MM-DD");
    }
    if (!is_valid(y, m, d)) {
        throw InputError("bad date '" + iso + "': not a calendar date");
    }
    return Date{y, m, d};
}

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

TradingCalendar::TradingCalendar(std::vector<Date> dates) : dates_(std::move(dates)) {
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (dates_[i] == dates_[i - 1]) {
            throw InputError("duplicate calendar date " + dates_[i].to_string());
        }
        if (dates_[i] < dates_[i - 1]) {
            throw InputError("calendar dates out of order at " + dates_[i].to_string());
        }
    }
}

std::optional<std::size_t> TradingCalendar::index_of(const Date& d) const {
    auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.end() || *it != d) return std::nullopt;
    return static_cast<std::size_t>(it - dates_.begin());
}

std::optional<std::size_t> TradingCalendar::first_on_or_after(const Date& d) const {
    auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - dates_.begin());
}

TradingCalendar TradingCalendar::intersect(const TradingCalendar& other) const {
    std::vector<Date> common;
    std::set_intersection(dates_.begin(), dates_.end(),
                          other.dates_.begin(), other.dates_.end(),
                          std::back_inserter(common));
    return TradingCalendar(std::move(common));
}

TradingCalendar TradingCalendar::slice(std::size_t begin, std::size_t end) const {
    if (begin > end || end > dates_.size()) {
        throw InputError("calendar slice out of range");
    }
    return TradingCalendar(std::vector<Date>(dates_.begin() + begin, dates_.begin() + end));
}

} // namespace quantbench
