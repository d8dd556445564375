#pragma once

#include "quantbench/calendar.hpp"

#include <string>
#include <vector>

namespace quantbench {

// Daily simple returns (decimal fractions, 0.01 == 1%) for one named entity.
// Immutable after construction; every return is > -1.
class ReturnSeries {
public:
    ReturnSeries(std::string name, TradingCalendar calendar, std::vector<double> returns);

    const std::string& name() const { return name_; }
    const TradingCalendar& calendar() const { return calendar_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

private:
    std::string name_;
    TradingCalendar calendar_;
    std::vector<double> values_;
};

// Net asset values compounded from an initial capital, one per trading day.
class NavSeries {
public:
    NavSeries(std::string name, double initial_capital, TradingCalendar calendar,
              std::vector<double> navs);

    const std::string& name() const { return name_; }
    double initial_capital() const { return initial_capital_; }
    const TradingCalendar& calendar() const { return calendar_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

    // Last NAV; the initial capital when no observations exist (empty product).
    double ending_nav() const { return values_.empty() ? initial_capital_ : values_.back(); }

private:
    std::string name_;
    double initial_capital_;
    TradingCalendar calendar_;
    std::vector<double> values_;
};

// Per-date cross-sectional quantile of a cohort of NAV series.
struct QuantileBand {
    double q = 0.5;
    TradingCalendar calendar;
    std::vector<double> values;
};

// Simple returns from a dated positive price sequence. The output calendar
// drops the first date (no prior price to difference against).
ReturnSeries returns_from_prices(const std::string& name, const TradingCalendar& calendar,
                                 const std::vector<double>& prices);

// NAV_t = capital * prod_{t' <= t} (1 + r_t').
NavSeries nav_from_returns(const ReturnSeries& r, double initial_capital = 100.0);

// Restrict every series to the intersection of all calendars. Returns on the
// dropped dates are discarded, never compounded into neighbours.
std::vector<ReturnSeries> align_series(const std::vector<ReturnSeries>& series);

// Per-date empirical quantile (linear interpolation between order statistics)
// across series sharing one calendar.
QuantileBand quantile_band(const std::vector<NavSeries>& series, double q);

} // namespace quantbench
