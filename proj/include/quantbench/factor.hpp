#pragma once

#include "quantbench/series.hpp"
#include "quantbench/stats.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace quantbench {

// Named daily factor return series plus an optional daily risk-free rate,
// all on one calendar. An absent risk-free series means zero throughout.
class FactorPanel {
public:
    FactorPanel(TradingCalendar calendar, std::vector<std::string> factor_names,
                std::vector<std::vector<double>> factor_returns,
                std::vector<double> risk_free = {});

    static FactorPanel from_series(const std::vector<ReturnSeries>& factors,
                                   const ReturnSeries* risk_free = nullptr);

    const TradingCalendar& calendar() const { return calendar_; }
    std::size_t num_factors() const { return factor_names_.size(); }
    const std::vector<std::string>& factor_names() const { return factor_names_; }
    const std::vector<double>& factor(std::size_t j) const { return factors_[j]; }
    bool has_risk_free() const { return !risk_free_.empty(); }
    const std::vector<double>& risk_free() const { return risk_free_; }

private:
    TradingCalendar calendar_;
    std::vector<std::string> factor_names_;
    std::vector<std::vector<double>> factors_;
    std::vector<double> risk_free_;
};

// Least-squares fit of one portfolio's excess returns on the factor panel.
struct FactorModelFit {
    std::string name;
    double alpha = 0.0;          // daily intercept
    std::vector<double> betas;   // one per factor
    double resid_sd = 0.0;       // sd of residuals on n - J - 1 dof
    double alpha_se = 0.0;       // standard error of the intercept
    int dof = 0;                 // n - J - 1
    std::vector<double> residuals;
    double excess_sd = 0.0;      // sd of the portfolio's excess returns (alternate AR denominator)

    bool degenerate = false;     // zero residual variance: inference undefined

    // Filled by alpha_inference / annualize when the fit is not degenerate.
    double t_stat = std::numeric_limits<double>::quiet_NaN();
    double p_value = std::numeric_limits<double>::quiet_NaN();
    double ar_daily = std::numeric_limits<double>::quiet_NaN();
    double alpha_annualized = std::numeric_limits<double>::quiet_NaN();
    double ar_annualized = std::numeric_limits<double>::quiet_NaN();
    double ar_annualized_excess_sd = std::numeric_limits<double>::quiet_NaN();
};

// Fits r - rf = alpha + sum_j beta_j (f_j - rf) + eps by least squares (QR on
// the design matrix). Inference fields are filled when resid_sd > 0; an exact
// fit comes back with degenerate = true. trading_days drives annualization.
FactorModelFit ols_fit(const ReturnSeries& portfolio, const FactorPanel& panel,
                       int trading_days = 238);

struct AlphaInference {
    double t_stat = 0.0;
    double p_value = 1.0;
};

// t = alpha / SE(alpha); two-sided p from the Student-t with n - J - 1 dof.
AlphaInference alpha_inference(const FactorModelFit& fit);

struct AnnualizedAlpha {
    double alpha_annualized = 0.0;
    double ar_annualized = 0.0;
};

// alpha * trading_days, and the annualized alpha over the annualized residual sd.
AnnualizedAlpha annualize(const FactorModelFit& fit, int trading_days);

// Benjamini-Hochberg adjustment across a cohort of p-values.
enum class BHMode {
    step_up,       // adjusted_p(r) = min_{r' >= r} p(r') * m / r', capped at 1
    multiply_only  // adjusted_p(r) = p(r) * m / r, capped at 1 (no monotonicity pass)
};

struct BHEntry {
    std::size_t index = 0;     // position in the input cohort
    double raw_p = 0.0;
    std::size_t rank = 0;      // 1-based ascending rank of raw_p
    double adjusted_p = 0.0;
    double cutoff = 0.0;       // rank * level / m, the significance line
    bool significant = false;  // step-up verdict regardless of mode
};

struct BHResult {
    double level = 0.05;
    std::size_t m = 0;
    BHMode mode = BHMode::step_up;
    std::vector<BHEntry> entries; // input order
    std::size_t num_significant = 0;
};

BHResult bh_adjust(std::span<const double> pvalues, double level = 0.05,
                   BHMode mode = BHMode::step_up);

// Normality test with mean and variance estimated from the sample, including
// the small-sample correction and the piecewise-exponential p-value.
struct AndersonDarlingResult {
    double a2 = 0.0;       // uncorrected statistic
    double a2_star = 0.0;  // A^2 * (1 + 0.75/n + 2.25/n^2)
    double p_value = 0.0;
    std::size_t n = 0;
};

AndersonDarlingResult anderson_darling(std::span<const double> values);

// Whole-cohort fit: per-portfolio models, summary columns, sign and
// significance counts, BH adjustment, and the normality test on the alphas.
struct CohortFit {
    std::vector<FactorModelFit> fits;                          // one per ingested portfolio
    std::vector<std::pair<std::string, std::string>> failures; // name -> reason

    struct Column {
        std::string name;
        stats::Summary summary;
        std::size_t used = 0;
    };
    std::vector<Column> columns; // alpha_annualized, ar_annualized, then one per factor

    std::size_t positive_alphas = 0;
    std::size_t negative_alphas = 0;
    std::size_t degenerate_fits = 0;
    std::size_t significant_raw = 0; // p <= level before adjustment
    BHResult bh;                     // over the non-degenerate fits, in fit order
    std::vector<std::size_t> bh_fit_index; // entry i of bh refers to fits[bh_fit_index[i]]

    bool ad_available = false;
    AndersonDarlingResult ad; // over all fitted alphas, when n >= 8
};

CohortFit cohort_fit(const std::vector<ReturnSeries>& portfolios, const FactorPanel& panel,
                     double bh_level = 0.05, int trading_days = 238,
                     BHMode mode = BHMode::step_up);

} // namespace quantbench
