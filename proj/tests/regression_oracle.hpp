#pragma once

// An independent route to the factor regression, shared by the unit suite and
// the acceptance gate: explicit normal equations (X'X) b = X'y solved by
// Gauss-Jordan elimination with partial pivoting, with SE(alpha) read off the
// inverted moment matrix. Deliberately shares no code path with the library's
// QR-based fit. Also provides the seeded instance generator both callers
// exercise it with.

#include "helpers.hpp"
#include "quantbench/factor.hpp"
#include "quantbench/rng.hpp"
#include "quantbench/series.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qbtest {

struct Oracle {
    double alpha = 0.0;
    std::vector<double> betas;
    double resid_sd = 0.0;
    double alpha_se = 0.0;
    std::vector<double> residuals;
};

inline Oracle normal_equations(const std::vector<double>& y_raw,
                               const std::vector<std::vector<double>>& factors,
                               const std::vector<double>& rf) {
    const std::size_t n = y_raw.size();
    const std::size_t p = factors.size() + 1;
    std::vector<std::vector<double>> x(n, std::vector<double>(p, 1.0));
    std::vector<double> y(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double r = rf.empty() ? 0.0 : rf[t];
        for (std::size_t j = 0; j + 1 < p; ++j) x[t][j + 1] = factors[j][t] - r;
        y[t] = y_raw[t] - r;
    }

    // [X'X | I] augmented system, reduced in place to [I | (X'X)^-1].
    std::vector<std::vector<double>> a(p, std::vector<double>(2 * p, 0.0));
    std::vector<double> xty(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            for (std::size_t t = 0; t < n; ++t) a[i][j] += x[t][i] * x[t][j];
        }
        a[i][p + i] = 1.0;
        for (std::size_t t = 0; t < n; ++t) xty[i] += x[t][i] * y[t];
    }
    for (std::size_t c = 0; c < p; ++c) {
        std::size_t piv = c;
        for (std::size_t r2 = c + 1; r2 < p; ++r2) {
            if (std::fabs(a[r2][c]) > std::fabs(a[piv][c])) piv = r2;
        }
        std::swap(a[c], a[piv]);
        const double d = a[c][c];
        for (double& v : a[c]) v /= d;
        for (std::size_t r2 = 0; r2 < p; ++r2) {
            if (r2 == c) continue;
            const double f = a[r2][c];
            if (f == 0.0) continue;
            for (std::size_t k = 0; k < 2 * p; ++k) a[r2][k] -= f * a[c][k];
        }
    }

    std::vector<double> coef(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) coef[i] += a[i][p + j] * xty[j];
    }

    Oracle o;
    o.alpha = coef[0];
    o.betas.assign(coef.begin() + 1, coef.end());
    o.residuals.resize(n);
    double ssr = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        double fitted = 0.0;
        for (std::size_t j = 0; j < p; ++j) fitted += x[t][j] * coef[j];
        o.residuals[t] = y[t] - fitted;
        ssr += o.residuals[t] * o.residuals[t];
    }
    const double resid_var = ssr / static_cast<double>(n - p);
    o.resid_sd = std::sqrt(resid_var);
    o.alpha_se = std::sqrt(resid_var * a[0][p]); // (X'X)^-1 (0,0)
    return o;
}

struct Instance {
    quantbench::TradingCalendar cal;
    std::vector<std::vector<double>> factors;
    std::vector<double> rf;
    std::vector<double> y;
};

// One seeded regression problem: J factors, optional risk-free leg, and a
// response with known loadings plus noise.
inline Instance random_instance(std::uint64_t seed, std::size_t n, std::size_t j_count,
                                bool with_rf) {
    quantbench::Rng rng(seed, 0);
    Instance inst;
    inst.cal = weekday_calendar({2021, 1, 4}, n);
    inst.factors.resize(j_count);
    for (std::size_t j = 0; j < j_count; ++j) {
        for (std::size_t t = 0; t < n; ++t) {
            inst.factors[j].push_back(0.0004 + 0.009 * normal_draw(rng));
        }
    }
    if (with_rf) {
        for (std::size_t t = 0; t < n; ++t) {
            inst.rf.push_back(0.00005 + 0.00001 * rng.next_double());
        }
    }
    const double alpha = 0.002 * (rng.next_double() - 0.5);
    std::vector<double> beta(j_count);
    for (auto& b : beta) b = 2.0 * rng.next_double() - 0.5;
    for (std::size_t t = 0; t < n; ++t) {
        const double r = with_rf ? inst.rf[t] : 0.0;
        double v = r + alpha + 0.004 * normal_draw(rng);
        for (std::size_t j = 0; j < j_count; ++j) {
            v += beta[j] * (inst.factors[j][t] - r);
        }
        inst.y.push_back(v);
    }
    return inst;
}

inline quantbench::FactorPanel make_panel(const Instance& inst) {
    std::vector<std::string> names;
    for (std::size_t j = 0; j < inst.factors.size(); ++j) {
        names.push_back("f" + std::to_string(j + 1));
    }
    return quantbench::FactorPanel(inst.cal, names, inst.factors, inst.rf);
}

} // namespace qbtest
