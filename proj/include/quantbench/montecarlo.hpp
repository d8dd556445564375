#pragma once

#include "quantbench/metrics.hpp"
#include "quantbench/rng.hpp"
#include "quantbench/series.hpp"

#include <cstdint>
#include <vector>

namespace quantbench {

enum class RebalanceMode {
    buy_and_hold,       // weights drift with relative returns between draws
    daily_equal_weight  // reset to 1/k every day
};

// The twelve monthly selection dates of the 2022-23 competition season.
const std::vector<Date>& default_selection_dates();

struct SimulationConfig {
    std::size_t portfolio_size = 10;                         // k assets per draw
    std::vector<Date> rebalance_dates = default_selection_dates();
    std::size_t num_sims = 10000;
    std::uint64_t master_seed = 0;
    RebalanceMode mode = RebalanceMode::buy_and_hold;
    double initial_capital = 100.0;
};

struct SimulatedCohort {
    TradingCalendar calendar;            // simulated span (after the first draw date)
    std::vector<NavSeries> navs;         // one per simulation
    std::vector<MetricsReport> reports;  // one per simulation
    CohortSummary summary;
    std::uint64_t master_seed = 0;
    std::uint64_t config_hash = 0;
};

// k distinct uniformly drawn asset indices out of [0, universe_size), sorted.
// Equal weights 1/k are implied.
std::vector<std::uint32_t> sample_portfolio(Rng& rng, std::size_t universe_size, std::size_t k);

// Dart-throwing cohort: per simulation, a fresh equal-weight draw at each
// rebalance date (mapped to the next trading day when it is not one), held
// through the following period, NAV compounded from the initial capital.
// threads = 0 picks the hardware concurrency; results are identical for any
// thread count.
SimulatedCohort simulate_cohort(const std::vector<ReturnSeries>& universe,
                                const SimulationConfig& cfg,
                                const AnnualizationConfig& annualization = {},
                                unsigned threads = 0);

std::uint64_t simulation_config_hash(const std::vector<ReturnSeries>& universe,
                                     const SimulationConfig& cfg);

} // namespace quantbench
