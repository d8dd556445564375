#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

// Descriptive statistics and the special functions the inference code needs.
namespace quantbench::stats {

double mean(std::span<const double> xs);
double sample_sd(std::span<const double> xs);      // divides by n-1, needs n >= 2
double population_sd(std::span<const double> xs);  // divides by n, needs n >= 1
double pearson_correlation(std::span<const double> xs, std::span<const double> ys);

// Empirical inverse-CDF quantile with linear interpolation between order
// statistics (the convention behind the NAV bands and summary tables).
double quantile(std::span<const double> xs, double q);

struct Summary {
    double min = 0, q25 = 0, median = 0, mean = 0, q75 = 0, max = 0;
};
Summary summarize(std::span<const double> xs); // throws InputError on empty input

// Regularized incomplete beta I_x(a, b) via the standard continued fraction.
double incomplete_beta(double a, double b, double x);

// Student-t CDF with dof degrees of freedom.
double student_t_cdf(double t, double dof);

// Two-sided tail probability P(|T_dof| > |t|), evaluated directly from the
// incomplete beta so the tails do not cancel.
double student_t_two_sided_p(double t, double dof);

double normal_cdf(double x);

// Gaussian kernel density on an evenly spaced grid (Silverman bandwidth).
struct Density {
    std::vector<double> x;
    std::vector<double> y;
};
Density gaussian_kde(std::span<const double> xs, double grid_lo, double grid_hi,
                     std::size_t grid_points = 256);
double silverman_bandwidth(std::span<const double> xs);

} // namespace quantbench::stats
