#include "quantbench/fof.hpp"

#include "quantbench/errors.hpp"

#include <algorithm>
#include <numeric>

namespace quantbench {

PeriodGrid PeriodGrid::make(const TradingCalendar& calendar, const std::vector<Date>& boundaries) {
    if (calendar.empty()) throw InputError("period grid over an empty calendar");
    if (boundaries.empty()) throw InputError("period grid needs at least one boundary date");

    PeriodGrid grid;
    grid.calendar_ = calendar;

    std::vector<std::size_t> idx;
    for (const Date& d : boundaries) {
        const auto at = calendar.first_on_or_after(d);
        if (!at) throw InputError("boundary " + d.to_string() + " is past the calendar end");
        if (!idx.empty() && *at <= idx.back()) {
            throw InputError("boundaries collapse onto the same trading day at " + d.to_string());
        }
        idx.push_back(*at);
        grid.boundaries_.push_back(calendar[*at]);
    }

    for (std::size_t p = 0; p < idx.size(); ++p) {
        Span span;
        span.begin = idx[p] + 1;
        span.end = p + 1 < idx.size() ? idx[p + 1] + 1 : calendar.size();
        if (span.begin >= span.end) {
            throw InputError("period " + std::to_string(p + 1) + " holds no trading days");
        }
        grid.spans_.push_back(span);
    }
    return grid;
}

std::vector<double> period_returns(const ReturnSeries& r, const PeriodGrid& grid) {
    // The series must carry every day the grid covers.
    std::vector<double> out;
    out.reserve(grid.num_periods());
    for (std::size_t p = 0; p < grid.num_periods(); ++p) {
        const auto& span = grid.period(p);
        double growth = 1.0;
        for (std::size_t t = span.begin; t < span.end; ++t) {
            const Date& d = grid.calendar()[t];
            const auto at = r.calendar().index_of(d);
            if (!at) {
                throw InputError("series '" + r.name() + "' is missing " + d.to_string() +
                                 " in period " + std::to_string(p + 1));
            }
            growth *= 1.0 + r.values()[*at];
        }
        out.push_back(growth - 1.0);
    }
    return out;
}

std::vector<std::size_t> select_team(const std::vector<std::vector<double>>& cohort_period_returns,
                                     std::size_t p, Selector selector, std::size_t k) {
    if (p == 0) throw InputError("no prior period to select from");
    const std::size_t m = cohort_period_returns.size();
    if (k == 0) throw InputError("team size must be positive");
    if (m < k) {
        throw InputError("cohort of " + std::to_string(m) + " cannot fill a team of " +
                         std::to_string(k));
    }
    for (const auto& rets : cohort_period_returns) {
        if (p - 1 >= rets.size()) throw InputError("period index past the cohort's grid");
    }

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ra = cohort_period_returns[a][p - 1];
        const double rb = cohort_period_returns[b][p - 1];
        if (ra != rb) return selector == Selector::top ? ra > rb : ra < rb;
        return a < b;
    });
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
}

FofBacktest fof_backtest(const std::vector<ReturnSeries>& cohort, const PeriodGrid& grid,
                         Selector selector, std::size_t k) {
    if (cohort.empty()) throw InputError("fund-of-funds backtest over an empty cohort");
    if (grid.num_periods() < 2) {
        throw InputError("fund-of-funds backtest needs at least two periods");
    }

    std::vector<std::vector<double>> per_member;
    per_member.reserve(cohort.size());
    for (const auto& s : cohort) per_member.push_back(period_returns(s, grid));

    std::vector<std::vector<std::size_t>> selections;
    std::vector<double> strategy_returns;
    std::vector<Date> nav_dates;
    std::vector<double> navs;
    std::vector<Date> daily_dates;
    std::vector<double> daily_navs;
    double nav = 100.0;

    for (std::size_t p = 1; p < grid.num_periods(); ++p) {
        const std::vector<std::size_t> team = select_team(per_member, p, selector, k);

        double sum = 0.0;
        for (std::size_t member : team) sum += per_member[member][p];
        const double strat_ret = sum / static_cast<double>(k);

        // Daily curve: an equal split across the team at the period open,
        // held without re-equalization, matches the mean of period returns.
        const auto& span = grid.period(p);
        for (std::size_t t = span.begin; t < span.end; ++t) {
            const Date& d = grid.calendar()[t];
            double basket = 0.0;
            for (std::size_t member : team) {
                const auto& s = cohort[member];
                double growth = 1.0;
                for (std::size_t t2 = span.begin; t2 <= t; ++t2) {
                    growth *= 1.0 + s.values()[*s.calendar().index_of(grid.calendar()[t2])];
                }
                basket += growth;
            }
            daily_dates.push_back(d);
            daily_navs.push_back(nav * basket / static_cast<double>(k));
        }

        nav *= 1.0 + strat_ret;
        selections.push_back(team);
        strategy_returns.push_back(strat_ret);
        nav_dates.push_back(grid.calendar()[span.end - 1]);
        navs.push_back(nav);
    }

    const std::string label = selector == Selector::top ? "superstars" : "superlosers";
    NavSeries nav_series(label, 100.0, TradingCalendar(std::move(nav_dates)), std::move(navs));
    NavSeries daily_series(label, 100.0, TradingCalendar(std::move(daily_dates)),
                           std::move(daily_navs));
    const double total_return = nav_series.ending_nav() / 100.0 - 1.0;
    return FofBacktest{selector,
                       k,
                       1,
                       std::move(selections),
                       std::move(strategy_returns),
                       std::move(nav_series),
                       std::move(daily_series),
                       total_return};
}

} // namespace quantbench
