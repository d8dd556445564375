#include "quantbench/metrics.hpp"

#include "quantbench/errors.hpp"

#include <algorithm>
#include <cmath>

namespace quantbench {

DrawdownSeries drawdown_series(const NavSeries& nav) {
    if (nav.empty()) throw InputError("drawdown of empty nav series");
    DrawdownSeries out;
    out.calendar = nav.calendar();
    out.dd.reserve(nav.size());
    double peak = nav.initial_capital();
    for (double v : nav.values()) {
        peak = std::max(peak, v);
        // Difference quotient, not 1 - v/peak: round-trip losses like 100 -> 80
        // then come out as the exact published fraction (20/100 == 0.20).
        out.dd.push_back((peak - v) / peak);
    }
    return out;
}

double max_drawdown(const NavSeries& nav) {
    if (nav.empty()) throw InputError("max drawdown of empty nav series");
    double worst = 0.0;
    double peak = nav.initial_capital();
    for (double v : nav.values()) {
        peak = std::max(peak, v);
        worst = std::max(worst, (peak - v) / peak);
    }
    return worst;
}

double annualized_return(const ReturnSeries& r, const AnnualizationConfig& cfg) {
    if (r.empty()) throw InputError("annualized return of empty series");
    if (cfg.periods_per_year <= 0) throw InputError("periods per year must be positive");
    double growth = 1.0;
    for (double ret : r.values()) growth *= 1.0 + ret;
    const double exponent =
        static_cast<double>(cfg.periods_per_year) / static_cast<double>(r.size());
    return std::pow(growth, exponent) - 1.0;
}

namespace {

double daily_sd(const ReturnSeries& r, const AnnualizationConfig& cfg) {
    return cfg.sd_mode == SdMode::sample ? stats::sample_sd(r.values())
                                         : stats::population_sd(r.values());
}

} // namespace

double sharpe_ratio(const ReturnSeries& r, const AnnualizationConfig& cfg) {
    if (r.size() < 2) throw InputError("SR needs at least 2 returns");
    const double sd = daily_sd(r, cfg);
    if (sd == 0.0) throw DegeneracyError("undefined SR: zero volatility");
    return annualized_return(r, cfg) /
           (std::sqrt(static_cast<double>(cfg.periods_per_year)) * sd);
}

double calmar_ratio(const ReturnSeries& r, const NavSeries& nav, const AnnualizationConfig& cfg) {
    const double mdd = max_drawdown(nav);
    if (mdd == 0.0) throw DegeneracyError("undefined CR: zero max drawdown");
    return annualized_return(r, cfg) / mdd;
}

double ulcer_index(const NavSeries& nav) {
    const DrawdownSeries dds = drawdown_series(nav);
    double ss = 0.0;
    for (double d : dds.dd) ss += d * d;
    return std::sqrt(ss / static_cast<double>(dds.dd.size()));
}

double ulcer_performance_index(const ReturnSeries& r, const NavSeries& nav,
                               const AnnualizationConfig& cfg) {
    const double ui = ulcer_index(nav);
    if (ui == 0.0) throw DegeneracyError("undefined UPI: zero ulcer index");
    return annualized_return(r, cfg) / ui;
}

double side_volatility(const ReturnSeries& r, Side side) {
    std::vector<double> picked;
    for (double ret : r.values()) {
        if (side == Side::positive ? ret > 0.0 : ret < 0.0) picked.push_back(ret);
    }
    if (picked.empty()) {
        throw DegeneracyError(std::string("no returns on the ") +
                              (side == Side::positive ? "positive" : "negative") + " side");
    }
    return stats::population_sd(picked);
}

double autocorrelation(const ReturnSeries& r, int lag) {
    if (lag < 1) throw InputError("autocorrelation lag must be >= 1");
    const auto& xs = r.values();
    const auto n = static_cast<long long>(xs.size());
    if (n <= lag + 1) throw InputError("autocorrelation needs n > lag + 1");
    const double m = stats::mean(xs);
    double denom = 0.0;
    for (double x : xs) {
        const double d = x - m;
        denom += d * d;
    }
    if (denom == 0.0) throw DegeneracyError("autocorrelation of constant series");
    double num = 0.0;
    for (long long t = 0; t + lag < n; ++t) {
        num += (xs[t] - m) * (xs[t + lag] - m);
    }
    return num / denom;
}

namespace {

template <typename F>
MetricValue try_metric(F&& f) {
    try {
        return MetricValue::of(f());
    } catch (const DegeneracyError& e) {
        return MetricValue::absent(e.what());
    } catch (const InputError& e) {
        return MetricValue::absent(e.what());
    }
}

} // namespace

MetricsReport metrics_report(const ReturnSeries& r, double initial_capital,
                             const AnnualizationConfig& cfg) {
    if (r.empty()) throw InputError("metrics report of empty series");
    const NavSeries nav = nav_from_returns(r, initial_capital);

    MetricsReport rep;
    rep.name = r.name();
    rep.ann_return = annualized_return(r, cfg);
    rep.mdd = max_drawdown(nav);
    rep.ui = ulcer_index(nav);
    rep.ending_nav = nav.ending_nav();

    // SR, CR, and UPI divide the one annualized return already stored in the
    // report, so the three share their numerator bit for bit.
    rep.ann_sd = try_metric([&] {
        if (r.size() < 2) throw InputError("needs at least 2 returns");
        const double sd = daily_sd(r, cfg);
        if (sd == 0.0) throw DegeneracyError("zero volatility");
        return std::sqrt(static_cast<double>(cfg.periods_per_year)) * sd;
    });
    rep.sr = rep.ann_sd.defined()
                 ? MetricValue::of(rep.ann_return / *rep.ann_sd.value)
                 : MetricValue::absent("undefined SR: " + rep.ann_sd.absent_reason);
    rep.cr = rep.mdd > 0.0 ? MetricValue::of(rep.ann_return / rep.mdd)
                           : MetricValue::absent("undefined CR: zero max drawdown");
    rep.upi = rep.ui > 0.0 ? MetricValue::of(rep.ann_return / rep.ui)
                           : MetricValue::absent("undefined UPI: zero ulcer index");
    rep.vol_up = try_metric([&] { return side_volatility(r, Side::positive); });
    rep.vol_down = try_metric([&] { return side_volatility(r, Side::negative); });
    rep.autocorr = try_metric([&] { return autocorrelation(r); });
    return rep;
}

const std::vector<std::string>& metric_column_names() {
    static const std::vector<std::string> names = {
        "sr", "mdd", "cr", "vol_up", "vol_down", "upi", "ui",
        "autocorr", "ann_return", "ann_sd", "ending_nav"};
    return names;
}

namespace {

MetricValue report_field(const MetricsReport& rep, const std::string& metric) {
    if (metric == "sr") return rep.sr;
    if (metric == "mdd") return MetricValue::of(rep.mdd);
    if (metric == "cr") return rep.cr;
    if (metric == "vol_up") return rep.vol_up;
    if (metric == "vol_down") return rep.vol_down;
    if (metric == "upi") return rep.upi;
    if (metric == "ui") return MetricValue::of(rep.ui);
    if (metric == "autocorr") return rep.autocorr;
    if (metric == "ann_return") return MetricValue::of(rep.ann_return);
    if (metric == "ann_sd") return rep.ann_sd;
    if (metric == "ending_nav") return MetricValue::of(rep.ending_nav);
    throw InputError("unknown metric column '" + metric + "'");
}

} // namespace

CohortSummary cohort_summary(const std::vector<MetricsReport>& reports) {
    if (reports.empty()) throw InputError("cohort summary of empty cohort");
    CohortSummary out;
    for (const auto& metric : metric_column_names()) {
        std::vector<double> values;
        std::size_t skipped = 0;
        for (const auto& rep : reports) {
            const MetricValue v = report_field(rep, metric);
            if (v.defined()) {
                values.push_back(*v.value);
            } else {
                ++skipped;
            }
        }
        CohortSummary::Column col;
        col.metric = metric;
        col.used = values.size();
        col.skipped = skipped;
        if (!values.empty()) col.summary = stats::summarize(values);
        out.columns.push_back(std::move(col));
    }
    return out;
}

} // namespace quantbench
