#pragma once

#include "quantbench/series.hpp"
#include "quantbench/stats.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quantbench {

enum class SdMode { sample, population };

struct AnnualizationConfig {
    int periods_per_year = 252;
    SdMode sd_mode = SdMode::sample;
};

// Per-date drawdown from the running peak; the initial capital counts as the
// day-zero peak, so dd[t] = 0 exactly when NAV_t sets (or ties) a new maximum.
struct DrawdownSeries {
    TradingCalendar calendar;
    std::vector<double> dd;
};

// A metric that may be undefined for a given series (zero volatility, no
// losses, ...). Absences carry the reason instead of poisoning the row.
struct MetricValue {
    std::optional<double> value;
    std::string absent_reason;

    static MetricValue of(double v) { return {v, {}}; }
    static MetricValue absent(std::string reason) { return {std::nullopt, std::move(reason)}; }
    bool defined() const { return value.has_value(); }
};

// One report row: every headline metric for one series.
struct MetricsReport {
    std::string name;
    double ann_return = 0.0; // shared numerator of SR, CR, and UPI
    MetricValue ann_sd;
    MetricValue sr;
    double mdd = 0.0;
    MetricValue cr;
    double ui = 0.0;
    MetricValue upi;
    MetricValue vol_up;
    MetricValue vol_down;
    MetricValue autocorr;
    double ending_nav = 0.0;
};

DrawdownSeries drawdown_series(const NavSeries& nav);

// Largest fractional peak-to-trough loss; the initial capital is a candidate peak.
double max_drawdown(const NavSeries& nav);

// (prod(1+r))^(n*/n) - 1.
double annualized_return(const ReturnSeries& r, const AnnualizationConfig& cfg);

double sharpe_ratio(const ReturnSeries& r, const AnnualizationConfig& cfg);
double calmar_ratio(const ReturnSeries& r, const NavSeries& nav, const AnnualizationConfig& cfg);

// Root mean square of the daily drawdowns.
double ulcer_index(const NavSeries& nav);
double ulcer_performance_index(const ReturnSeries& r, const NavSeries& nav,
                               const AnnualizationConfig& cfg);

enum class Side { positive, negative };

// Deviation of one side's returns about that side's own mean, divided by the
// side's count. Zero returns belong to neither side.
double side_volatility(const ReturnSeries& r, Side side);

double autocorrelation(const ReturnSeries& r, int lag = 1);

MetricsReport metrics_report(const ReturnSeries& r, double initial_capital,
                             const AnnualizationConfig& cfg);

// Six summary statistics per metric column over a cohort of reports, skipping
// (and counting) absent values.
struct CohortSummary {
    struct Column {
        std::string metric;
        stats::Summary summary;
        std::size_t used = 0;
        std::size_t skipped = 0;
    };
    std::vector<Column> columns;
};

CohortSummary cohort_summary(const std::vector<MetricsReport>& reports);

// Fixed emission order of report columns.
const std::vector<std::string>& metric_column_names();

} // namespace quantbench
