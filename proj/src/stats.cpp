#include "quantbench/stats.hpp"

#include "quantbench/errors.hpp"

#include <algorithm>
#include <cmath>

namespace quantbench::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw InputError("mean of empty sample");
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

namespace {

double sum_sq_dev(std::span<const double> xs, double m) {
    double ss = 0.0;
    for (double x : xs) {
        const double d = x - m;
        ss += d * d;
    }
    return ss;
}

} // namespace

double sample_sd(std::span<const double> xs) {
    if (xs.size() < 2) throw InputError("sample sd needs at least 2 observations");
    return std::sqrt(sum_sq_dev(xs, mean(xs)) / static_cast<double>(xs.size() - 1));
}

double population_sd(std::span<const double> xs) {
    if (xs.empty()) throw InputError("population sd of empty sample");
    return std::sqrt(sum_sq_dev(xs, mean(xs)) / static_cast<double>(xs.size()));
}

double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw InputError("correlation over unequal lengths");
    if (xs.size() < 2) throw InputError("correlation needs at least 2 observations");
    const double mx = mean(xs);
    const double my = mean(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DegeneracyError("correlation with constant input");
    return sxy / std::sqrt(sxx * syy);
}

double quantile(std::span<const double> xs, double q) {
    if (xs.empty()) throw InputError("quantile of empty sample");
    if (q < 0.0 || q > 1.0) throw InputError("quantile level outside [0, 1]");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double h = q * static_cast<double>(n - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

Summary summarize(std::span<const double> xs) {
    if (xs.empty()) throw InputError("summary of empty sample");
    Summary s;
    s.min = quantile(xs, 0.0);
    s.q25 = quantile(xs, 0.25);
    s.median = quantile(xs, 0.5);
    s.mean = mean(xs);
    s.q75 = quantile(xs, 0.75);
    s.max = quantile(xs, 1.0);
    return s;
}

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw DegeneracyError("incomplete beta continued fraction did not converge");
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw InputError("incomplete beta needs a, b > 0");
    if (x < 0.0 || x > 1.0) throw InputError("incomplete beta needs x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(a, b, x) / a;
    }
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
    if (dof <= 0.0) throw InputError("t distribution needs dof > 0");
    return incomplete_beta(dof / 2.0, 0.5, dof / (dof + t * t));
}

double student_t_cdf(double t, double dof) {
    const double tail = 0.5 * student_t_two_sided_p(t, dof);
    return t >= 0.0 ? 1.0 - tail : tail;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double silverman_bandwidth(std::span<const double> xs) {
    if (xs.size() < 2) throw InputError("bandwidth needs at least 2 observations");
    const double sd = sample_sd(xs);
    const double iqr = quantile(xs, 0.75) - quantile(xs, 0.25);
    double spread = sd;
    if (iqr > 0.0) spread = std::min(sd, iqr / 1.34);
    if (spread == 0.0) throw DegeneracyError("bandwidth of constant sample");
    return 0.9 * spread * std::pow(static_cast<double>(xs.size()), -0.2);
}

Density gaussian_kde(std::span<const double> xs, double grid_lo, double grid_hi,
                     std::size_t grid_points) {
    if (xs.empty()) throw InputError("density of empty sample");
    if (grid_points < 2 || grid_hi <= grid_lo) throw InputError("bad density grid");
    const double h = silverman_bandwidth(xs);
    Density out;
    out.x.resize(grid_points);
    out.y.resize(grid_points);
    const double step = (grid_hi - grid_lo) / static_cast<double>(grid_points - 1);
    const double norm = 1.0 / (static_cast<double>(xs.size()) * h * std::sqrt(2.0 * M_PI));
    for (std::size_t i = 0; i < grid_points; ++i) {
        const double g = grid_lo + step * static_cast<double>(i);
        double acc = 0.0;
        for (double x : xs) {
            const double z = (g - x) / h;
            acc += std::exp(-0.5 * z * z);
        }
        out.x[i] = g;
        out.y[i] = acc * norm;
    }
    return out;
}

} // namespace quantbench::stats
