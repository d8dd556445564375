#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace quantbench {

// Calendar date (no time-of-day). Series carry one observation per date.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    static Date parse(const std::string& iso);      // "YYYY-MM-DD", throws InputError
    static bool is_valid(int y, int m, int d);
    std::string to_string() const;

    auto operator<=>(const Date&) const = default;
};

// Strictly increasing list of trading dates shared by the series defined on it.
class TradingCalendar {
public:
    TradingCalendar() = default;
    explicit TradingCalendar(std::vector<Date> dates); // throws InputError on duplicates / disorder

    std::size_t size() const { return dates_.size(); }
    bool empty() const { return dates_.empty(); }
    const std::vector<Date>& dates() const { return dates_; }
    const Date& operator[](std::size_t i) const { return dates_[i]; }
    const Date& front() const { return dates_.front(); }
    const Date& back() const { return dates_.back(); }

    std::optional<std::size_t> index_of(const Date& d) const;
    // First trading day on or after d (how non-trading submission dates land on the calendar).
    std::optional<std::size_t> first_on_or_after(const Date& d) const;

    TradingCalendar intersect(const TradingCalendar& other) const;
    TradingCalendar slice(std::size_t begin, std::size_t end) const; // [begin, end)

    bool operator==(const TradingCalendar&) const = default;

private:
    std::vector<Date> dates_;
};

} // namespace quantbench
