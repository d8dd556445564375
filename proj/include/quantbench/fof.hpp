#pragma once

#include "quantbench/series.hpp"

#include <cstddef>
#include <vector>

namespace quantbench {

// Contiguous monthly periods carved out of a trading calendar by the
// selection dates: period p covers the trading days after boundary p up to
// and including boundary p+1 (the last period runs to the calendar end).
class PeriodGrid {
public:
    static PeriodGrid make(const TradingCalendar& calendar, const std::vector<Date>& boundaries);

    std::size_t num_periods() const { return spans_.size(); }

    struct Span {
        std::size_t begin = 0; // calendar index, inclusive
        std::size_t end = 0;   // calendar index, exclusive
    };
    const Span& period(std::size_t p) const { return spans_[p]; }

    const TradingCalendar& calendar() const { return calendar_; }
    const std::vector<Date>& boundaries() const { return boundaries_; } // mapped to trading days

private:
    TradingCalendar calendar_;
    std::vector<Date> boundaries_;
    std::vector<Span> spans_;
};

// Compounded return of each grid period.
std::vector<double> period_returns(const ReturnSeries& r, const PeriodGrid& grid);

enum class Selector { top, bottom };

// Members to hold during period p (0-based), picked by their period p-1
// returns; ties break toward the lower member index. p == 0 has no signal.
std::vector<std::size_t> select_team(const std::vector<std::vector<double>>& cohort_period_returns,
                                     std::size_t p, Selector selector, std::size_t k);

struct FofBacktest {
    Selector selector = Selector::top;
    std::size_t k = 10;
    std::size_t first_invested_period = 1;
    std::vector<std::vector<std::size_t>> selections; // per invested period, member indices
    std::vector<double> strategy_returns;             // per invested period
    NavSeries nav;        // dated at each invested period's last trading day
    NavSeries daily_nav;  // day-by-day curve over the invested span
    double total_return = 0.0;
};

// Monthly reselection backtest: at each period boundary from the second
// onward, pick the k best (top) or worst (bottom) members of the previous
// period and hold them equal-weighted through the period. No fees.
FofBacktest fof_backtest(const std::vector<ReturnSeries>& cohort, const PeriodGrid& grid,
                         Selector selector, std::size_t k);

} // namespace quantbench
