#pragma once

#include "quantbench/series.hpp"

#include <vector>

namespace quantbench {

struct FeeSchedule {
    double mgmt_rate = 0.01;  // annual, prorated over trading days
    double perf_rate = 0.10;  // share of gains above the high-water mark
    int periods_per_year = 252;
};

// What the next crystallization compares against: the pre-performance-fee
// value (the $200 that stays the mark after netting) or the post-fee NAV.
enum class HwmBasis { pre_perf_fee, post_perf_fee };

// Daily fee accrual against a gross NAV path.
struct FeeLedger {
    TradingCalendar calendar;
    std::vector<double> mgmt_fees;       // per day
    std::vector<double> perf_fees;       // per day
    std::vector<double> high_water_mark; // after the day's crystallization
    NavSeries net;                       // post-fee NAV path
    double total_mgmt_fee = 0.0;
    double total_perf_fee = 0.0;
};

// Each day, in order: apply the day's gross growth to yesterday's net NAV,
// deduct the prorated management fee, then crystallize the performance fee on
// any excess over the high-water mark. The mark starts at the initial capital.
FeeLedger apply_fees(const NavSeries& gross, const FeeSchedule& schedule,
                     HwmBasis basis = HwmBasis::pre_perf_fee);

} // namespace quantbench
