#include "quantbench/factor.hpp"

#include "quantbench/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace quantbench {

FactorPanel::FactorPanel(TradingCalendar calendar, std::vector<std::string> factor_names,
                         std::vector<std::vector<double>> factor_returns,
                         std::vector<double> risk_free)
    : calendar_(std::move(calendar)),
      factor_names_(std::move(factor_names)),
      factors_(std::move(factor_returns)),
      risk_free_(std::move(risk_free)) {
    if (factor_names_.empty()) throw InputError("factor panel needs at least one factor");
    if (factor_names_.size() != factors_.size()) {
        throw InputError("factor panel: name/series count mismatch");
    }
    for (std::size_t j = 0; j < factors_.size(); ++j) {
        if (factors_[j].size() != calendar_.size()) {
            throw InputError("factor '" + factor_names_[j] + "' is off the panel calendar");
        }
    }
    if (!risk_free_.empty() && risk_free_.size() != calendar_.size()) {
        throw InputError("risk-free series is off the panel calendar");
    }
}

FactorPanel FactorPanel::from_series(const std::vector<ReturnSeries>& factors,
                                     const ReturnSeries* risk_free) {
    if (factors.empty()) throw InputError("factor panel needs at least one factor");
    const TradingCalendar& cal = factors.front().calendar();
    std::vector<std::string> names;
    std::vector<std::vector<double>> values;
    for (const auto& f : factors) {
        if (f.calendar() != cal) {
            throw InputError("factor '" + f.name() + "' is on a different calendar");
        }
        names.push_back(f.name());
        values.push_back(f.values());
    }
    std::vector<double> rf;
    if (risk_free != nullptr) {
        if (risk_free->calendar() != cal) {
            throw InputError("risk-free series is on a different calendar");
        }
        rf = risk_free->values();
    }
    return FactorPanel(cal, std::move(names), std::move(values), std::move(rf));
}

namespace {

// Rank decision for the pivoted QR: a pivot below this fraction of the
// leading pivot marks the column as dependent.
constexpr double kRankTolerance = 1e-10;

} // namespace

FactorModelFit ols_fit(const ReturnSeries& portfolio, const FactorPanel& panel,
                       int trading_days) {
    if (portfolio.calendar() != panel.calendar()) {
        throw InputError("portfolio '" + portfolio.name() + "' is off the panel calendar");
    }
    const auto n = static_cast<Eigen::Index>(portfolio.size());
    const auto j_count = static_cast<Eigen::Index>(panel.num_factors());
    const Eigen::Index p = j_count + 1; // intercept column
    if (n <= p) {
        throw InputError("fit of '" + portfolio.name() + "': needs more than " +
                         std::to_string(p) + " observations, has " + std::to_string(n));
    }

    Eigen::MatrixXd design(n, p);
    Eigen::VectorXd y(n);
    const auto& rets = portfolio.values();
    for (Eigen::Index t = 0; t < n; ++t) {
        const double rf = panel.has_risk_free() ? panel.risk_free()[t] : 0.0;
        design(t, 0) = 1.0;
        for (Eigen::Index j = 0; j < j_count; ++j) {
            design(t, j + 1) = panel.factor(j)[t] - rf;
        }
        y(t) = rets[t] - rf;
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(kRankTolerance);
    if (qr.rank() < p) {
        // Columns outside the first rank() pivots are the dependent ones.
        std::string collinear;
        const auto& perm = qr.colsPermutation().indices();
        for (Eigen::Index k = qr.rank(); k < p; ++k) {
            const Eigen::Index col = perm(k);
            if (!collinear.empty()) collinear += ", ";
            collinear += col == 0 ? "intercept" : panel.factor_names()[col - 1];
        }
        throw DegeneracyError("rank-deficient factor panel for '" + portfolio.name() +
                              "': collinear columns {" + collinear + "}");
    }

    const Eigen::VectorXd coef = qr.solve(y);
    const Eigen::VectorXd resid = y - design * coef;

    FactorModelFit fit;
    fit.name = portfolio.name();
    fit.alpha = coef(0);
    fit.betas.assign(coef.data() + 1, coef.data() + p);
    fit.dof = static_cast<int>(n - p);
    fit.residuals.assign(resid.data(), resid.data() + n);

    const double ssr = resid.squaredNorm();
    const double resid_var = ssr / static_cast<double>(fit.dof);
    fit.resid_sd = std::sqrt(resid_var);
    fit.excess_sd = stats::sample_sd(std::span<const double>(y.data(), y.size()));

    // (X'X)^-1 through the already-factored R: X'X = P R'R P'.
    const Eigen::MatrixXd r_upper =
        qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r_upper.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::MatrixXd rtr_inv = r_inv * r_inv.transpose();
    const Eigen::MatrixXd xtx_inv =
        qr.colsPermutation() * rtr_inv * qr.colsPermutation().transpose();
    fit.alpha_se = std::sqrt(resid_var * xtx_inv(0, 0));

    // An exact fit leaves only rounding noise in the residuals; treat any
    // residual scale below 1e-12 of the response scale as zero.
    if (fit.excess_sd == 0.0 || fit.resid_sd <= 1e-12 * fit.excess_sd) {
        fit.degenerate = true;
        return fit;
    }

    const AlphaInference inf = alpha_inference(fit);
    fit.t_stat = inf.t_stat;
    fit.p_value = inf.p_value;
    fit.ar_daily = fit.alpha / fit.resid_sd;
    const AnnualizedAlpha ann = annualize(fit, trading_days);
    fit.alpha_annualized = ann.alpha_annualized;
    fit.ar_annualized = ann.ar_annualized;
    fit.ar_annualized_excess_sd =
        ann.alpha_annualized / (fit.excess_sd * std::sqrt(static_cast<double>(trading_days)));
    return fit;
}

AlphaInference alpha_inference(const FactorModelFit& fit) {
    if (fit.degenerate || fit.resid_sd == 0.0 || fit.alpha_se == 0.0) {
        throw DegeneracyError("degenerate fit for '" + fit.name +
                              "': zero residual variance");
    }
    if (fit.dof < 1) throw InputError("inference needs dof >= 1");
    AlphaInference inf;
    inf.t_stat = fit.alpha / fit.alpha_se;
    inf.p_value = stats::student_t_two_sided_p(inf.t_stat, static_cast<double>(fit.dof));
    return inf;
}

AnnualizedAlpha annualize(const FactorModelFit& fit, int trading_days) {
    if (trading_days <= 0) throw InputError("annualization needs trading_days > 0");
    AnnualizedAlpha out;
    out.alpha_annualized = fit.alpha * static_cast<double>(trading_days);
    if (fit.resid_sd > 0.0) {
        out.ar_annualized =
            out.alpha_annualized / (fit.resid_sd * std::sqrt(static_cast<double>(trading_days)));
    }
    return out;
}

BHResult bh_adjust(std::span<const double> pvalues, double level, BHMode mode) {
    if (pvalues.empty()) throw InputError("BH adjustment of empty cohort");
    if (level <= 0.0 || level >= 1.0) throw InputError("BH level must be in (0, 1)");
    for (double p : pvalues) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InputError("p-value " + std::to_string(p) + " outside [0, 1]");
        }
    }

    const std::size_t m = pvalues.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pvalues[a] != pvalues[b]) return pvalues[a] < pvalues[b];
        return a < b;
    });

    // Step-up pass from the largest rank down. The ratio m/rank is formed
    // first so the top rank scales by exactly 1.0 and the largest raw
    // p-value survives the adjustment bit for bit.
    std::vector<double> step_up(m);
    double running = 1.0;
    for (std::size_t k = m; k-- > 0;) {
        const double scaled = pvalues[order[k]] *
                              (static_cast<double>(m) / static_cast<double>(k + 1));
        running = std::min(running, std::min(scaled, 1.0));
        step_up[k] = running;
    }

    BHResult out;
    out.level = level;
    out.m = m;
    out.mode = mode;
    out.entries.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        BHEntry& e = out.entries[order[k]];
        e.index = order[k];
        e.raw_p = pvalues[order[k]];
        e.rank = k + 1;
        e.cutoff = static_cast<double>(k + 1) * level / static_cast<double>(m);
        e.adjusted_p = mode == BHMode::step_up
                           ? step_up[k]
                           : std::min(1.0, e.raw_p * (static_cast<double>(m) /
                                                      static_cast<double>(k + 1)));
        // The verdict is the step-up procedure's in either mode.
        e.significant = step_up[k] <= level;
        if (e.significant) ++out.num_significant;
    }
    return out;
}

AndersonDarlingResult anderson_darling(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 8) throw InputError("normality test needs at least 8 observations");
    const double m = stats::mean(values);
    const double sd = stats::sample_sd(values);
    if (sd == 0.0) throw DegeneracyError("normality test of constant sample");

    std::vector<double> z(values.begin(), values.end());
    std::sort(z.begin(), z.end());
    for (double& v : z) v = (v - m) / sd;

    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = stats::normal_cdf(z[i]);
        const double hi = stats::normal_cdf(z[n - 1 - i]);
        acc += static_cast<double>(2 * i + 1) * (std::log(lo) + std::log1p(-hi));
    }
    AndersonDarlingResult res;
    res.n = n;
    res.a2 = -static_cast<double>(n) - acc / static_cast<double>(n);
    const double nn = static_cast<double>(n);
    res.a2_star = res.a2 * (1.0 + 0.75 / nn + 2.25 / (nn * nn));

    const double a = res.a2_star;
    if (a < 0.2) {
        res.p_value = 1.0 - std::exp(-13.436 + 101.14 * a - 223.73 * a * a);
    } else if (a < 0.34) {
        res.p_value = 1.0 - std::exp(-8.318 + 42.796 * a - 59.938 * a * a);
    } else if (a < 0.6) {
        res.p_value = std::exp(0.9177 - 4.279 * a - 1.38 * a * a);
    } else if (a < 10.0) {
        res.p_value = std::exp(1.2937 - 5.709 * a + 0.0186 * a * a);
    } else {
        res.p_value = 3.7e-24;
    }
    return res;
}

CohortFit cohort_fit(const std::vector<ReturnSeries>& portfolios, const FactorPanel& panel,
                     double bh_level, int trading_days, BHMode mode) {
    if (portfolios.empty()) throw InputError("cohort fit of empty cohort");

    CohortFit out;
    std::vector<double> alphas;
    std::vector<double> pvals;
    for (const auto& port : portfolios) {
        try {
            FactorModelFit fit = ols_fit(port, panel, trading_days);
            if (fit.alpha > 0.0) ++out.positive_alphas;
            if (fit.alpha < 0.0) ++out.negative_alphas;
            alphas.push_back(fit.alpha);
            if (fit.degenerate) {
                ++out.degenerate_fits;
            } else {
                if (fit.p_value <= bh_level) ++out.significant_raw;
                pvals.push_back(fit.p_value);
                out.bh_fit_index.push_back(out.fits.size());
            }
            out.fits.push_back(std::move(fit));
        } catch (const std::exception& e) {
            out.failures.emplace_back(port.name(), e.what());
        }
    }
    if (out.fits.empty()) throw DegeneracyError("no portfolio in the cohort could be fitted");

    auto add_column = [&](const std::string& name, const std::vector<double>& vals) {
        CohortFit::Column col;
        col.name = name;
        col.used = vals.size();
        if (!vals.empty()) col.summary = stats::summarize(vals);
        out.columns.push_back(std::move(col));
    };

    std::vector<double> col;
    col.reserve(out.fits.size());
    for (const auto& f : out.fits) {
        if (!f.degenerate) col.push_back(f.alpha_annualized);
    }
    add_column("alpha_annualized", col);
    col.clear();
    for (const auto& f : out.fits) {
        if (!f.degenerate) col.push_back(f.ar_annualized);
    }
    add_column("ar_annualized", col);
    for (std::size_t j = 0; j < panel.num_factors(); ++j) {
        col.clear();
        for (const auto& f : out.fits) col.push_back(f.betas[j]);
        add_column("beta_" + panel.factor_names()[j], col);
    }

    if (!pvals.empty()) out.bh = bh_adjust(pvals, bh_level, mode);
    if (alphas.size() >= 8) {
        try {
            out.ad = anderson_darling(alphas);
            out.ad_available = true;
        } catch (const DegeneracyError&) {
            out.ad_available = false;
        }
    }
    return out;
}

} // namespace quantbench
