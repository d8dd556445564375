#include "quantbench/series.hpp"

#include "quantbench/errors.hpp"
#include "quantbench/stats.hpp"

#include <cmath>
#include <utility>

namespace quantbench {

ReturnSeries::ReturnSeries(std::string name, TradingCalendar calendar, std::vector<double> returns)
    : name_(std::move(name)), calendar_(std::move(calendar)), values_(std::move(returns)) {
    if (values_.size() != calendar_.size()) {
        throw InputError("return series '" + name_ + "': " + std::to_string(values_.size()) +
                         " returns vs " + std::to_string(calendar_.size()) + " dates");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] <= -1.0) {
            throw InputError("return series '" + name_ + "': return " + std::to_string(values_[i]) +
                             " on " + calendar_[i].to_string() + " is not > -1");
        }
    }
}

NavSeries::NavSeries(std::string name, double initial_capital, TradingCalendar calendar,
                     std::vector<double> navs)
    : name_(std::move(name)),
      initial_capital_(initial_capital),
      calendar_(std::move(calendar)),
      values_(std::move(navs)) {
    if (!(initial_capital_ > 0.0)) {
        throw InputError("nav series '" + name_ + "': initial capital must be positive");
    }
    if (values_.size() != calendar_.size()) {
        throw InputError("nav series '" + name_ + "': " + std::to_string(values_.size()) +
                         " navs vs " + std::to_string(calendar_.size()) + " dates");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
            throw InputError("nav series '" + name_ + "': non-positive NAV on " +
                             calendar_[i].to_string());
        }
    }
}

ReturnSeries returns_from_prices(const std::string& name, const TradingCalendar& calendar,
                                 const std::vector<double>& prices) {
    if (prices.empty()) throw InputError("price series '" + name + "' is empty");
    if (prices.size() < 2) {
        throw InputError("price series '" + name + "' needs at least two prices to difference");
    }
    if (prices.size() != calendar.size()) {
        throw InputError("price series '" + name + "': price/date count mismatch");
    }
    for (std::size_t i = 0; i < prices.size(); ++i) {
        if (!std::isfinite(prices[i]) || prices[i] <= 0.0) {
            throw InputError("non-positive price in '" + name + "' on " +
                             calendar[i].to_string());
        }
    }
    std::vector<double> rets;
    rets.reserve(prices.size() - 1);
    for (std::size_t i = 1; i < prices.size(); ++i) {
        rets.push_back(prices[i] / prices[i - 1] - 1.0);
    }
    return ReturnSeries(name, calendar.slice(1, calendar.size()), std::move(rets));
}

NavSeries nav_from_returns(const ReturnSeries& r, double initial_capital) {
    if (!(initial_capital > 0.0)) throw InputError("initial capital must be positive");
    std::vector<double> navs;
    navs.reserve(r.size());
    double nav = initial_capital;
    for (double ret : r.values()) {
        nav *= 1.0 + ret; // ret > -1 held by the series invariant
        navs.push_back(nav);
    }
    return NavSeries(r.name(), initial_capital, r.calendar(), std::move(navs));
}

std::vector<ReturnSeries> align_series(const std::vector<ReturnSeries>& series) {
    if (series.empty()) throw InputError("align_series needs at least one series");
    TradingCalendar common = series.front().calendar();
    for (std::size_t i = 1; i < series.size(); ++i) {
        common = common.intersect(series[i].calendar());
    }
    if (common.empty()) throw InputError("empty intersection of calendars");

    std::vector<ReturnSeries> out;
    out.reserve(series.size());
    for (const auto& s : series) {
        if (s.calendar() == common) {
            out.push_back(s);
            continue;
        }
        std::vector<double> kept;
        kept.reserve(common.size());
        for (const auto& d : common.dates()) {
            kept.push_back(s.values()[*s.calendar().index_of(d)]);
        }
        out.emplace_back(s.name(), common, std::move(kept));
    }
    return out;
}

QuantileBand quantile_band(const std::vector<NavSeries>& series, double q) {
    if (series.empty()) throw InputError("quantile band over empty cohort");
    if (q < 0.0 || q > 1.0) throw InputError("quantile level outside [0, 1]");
    const TradingCalendar& cal = series.front().calendar();
    for (const auto& s : series) {
        if (s.calendar() != cal) {
            throw InputError("quantile band: '" + s.name() + "' is on a different calendar");
        }
    }
    QuantileBand band;
    band.q = q;
    band.calendar = cal;
    band.values.reserve(cal.size());
    std::vector<double> cross(series.size());
    for (std::size_t t = 0; t < cal.size(); ++t) {
        for (std::size_t i = 0; i < series.size(); ++i) cross[i] = series[i].values()[t];
        band.values.push_back(stats::quantile(cross, q));
    }
    return band;
}

} // namespace quantbench
