#include "quantbench/montecarlo.hpp"

#include "quantbench/errors.hpp"
#include "quantbench/hashing.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace quantbench {

const std::vector<Date>& default_selection_dates() {
    static const std::vector<Date> dates = {
        {2022, 3, 6},  {2022, 4, 3},  {2022, 5, 1},  {2022, 5, 29},
        {2022, 6, 26}, {2022, 7, 24}, {2022, 8, 21}, {2022, 9, 18},
        {2022, 10, 16}, {2022, 11, 13}, {2022, 12, 11}, {2023, 1, 8}};
    return dates;
}

std::vector<std::uint32_t> sample_portfolio(Rng& rng, std::size_t universe_size, std::size_t k) {
    if (k == 0) throw InputError("portfolio size must be positive");
    if (k > universe_size) {
        throw InputError("portfolio size " + std::to_string(k) + " exceeds universe of " +
                         std::to_string(universe_size));
    }
    // Partial Fisher-Yates over the index range.
    std::vector<std::uint32_t> pool(universe_size);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(universe_size - i));
        std::swap(pool[i], pool[j]);
    }
    std::vector<std::uint32_t> picked(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(picked.begin(), picked.end());
    return picked;
}

namespace {

// Calendar indices at which draws happen: each configured date mapped to the
// next trading day when it is not one itself.
std::vector<std::size_t> mapped_rebalance_indices(const TradingCalendar& cal,
                                                  const std::vector<Date>& dates) {
    if (dates.empty()) throw InputError("no rebalance dates configured");
    std::vector<std::size_t> idx;
    idx.reserve(dates.size());
    for (const Date& d : dates) {
        const auto at = cal.first_on_or_after(d);
        if (!at) {
            throw InputError("rebalance date " + d.to_string() + " is past the calendar end");
        }
        if (!idx.empty() && *at <= idx.back()) {
            throw InputError("rebalance dates collapse onto the same trading day at " +
                             d.to_string());
        }
        idx.push_back(*at);
    }
    return idx;
}

} // namespace

std::uint64_t simulation_config_hash(const std::vector<ReturnSeries>& universe,
                                     const SimulationConfig& cfg) {
    Fnv1a h;
    h.add("k=").add(static_cast<std::uint64_t>(cfg.portfolio_size));
    h.add(";sims=").add(static_cast<std::uint64_t>(cfg.num_sims));
    h.add(";seed=").add(cfg.master_seed);
    h.add(";mode=").add(cfg.mode == RebalanceMode::buy_and_hold ? "buyhold" : "daily");
    h.add(";capital=").add(cfg.initial_capital);
    h.add(";dates=");
    for (const Date& d : cfg.rebalance_dates) h.add(d.to_string()).add(",");
    h.add(";universe=");
    for (const auto& s : universe) h.add(s.name()).add(",");
    return h.value();
}

SimulatedCohort simulate_cohort(const std::vector<ReturnSeries>& universe,
                                const SimulationConfig& cfg,
                                const AnnualizationConfig& annualization,
                                unsigned threads) {
    if (universe.empty()) throw InputError("simulation needs a universe");
    if (cfg.num_sims < 1) throw InputError("num_sims must be at least 1");
    const TradingCalendar& cal = universe.front().calendar();
    for (const auto& s : universe) {
        if (s.calendar() != cal) {
            throw InputError("universe series '" + s.name() + "' is on a different calendar");
        }
    }
    const std::size_t u_count = universe.size();
    const std::size_t k = cfg.portfolio_size;
    if (k > u_count) {
        throw InputError("portfolio size " + std::to_string(k) + " exceeds universe of " +
                         std::to_string(u_count));
    }

    const std::vector<std::size_t> reb = mapped_rebalance_indices(cal, cfg.rebalance_dates);
    const std::size_t first = reb.front();
    if (first + 1 >= cal.size()) {
        throw InputError("no trading days after the first rebalance date");
    }

    // Simulated span: days after the first draw (positions earn from the next day).
    const TradingCalendar span = cal.slice(first + 1, cal.size());
    const std::size_t span_len = span.size();

    SimulatedCohort cohort;
    cohort.calendar = span;
    cohort.master_seed = cfg.master_seed;
    cohort.config_hash = simulation_config_hash(universe, cfg);
    cohort.navs.resize(cfg.num_sims, NavSeries("", 1.0, TradingCalendar(), {}));
    cohort.reports.resize(cfg.num_sims);

    // Period boundaries in span coordinates: draw p holds (reb[p], reb[p+1]].
    std::vector<std::size_t> period_end; // exclusive, in span indices
    for (std::size_t p = 1; p < reb.size(); ++p) period_end.push_back(reb[p] - first);
    period_end.push_back(span_len);

    auto run_one = [&](std::size_t sim) {
        Rng rng(cfg.master_seed, sim);
        std::vector<double> navs;
        navs.reserve(span_len);
        std::vector<double> day_returns;
        day_returns.reserve(span_len);

        double nav = cfg.initial_capital;
        std::size_t t = 0; // span index
        std::vector<double> weights(k);
        for (std::size_t p = 0; p < period_end.size(); ++p) {
            const std::vector<std::uint32_t> ids = sample_portfolio(rng, u_count, k);
            std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(k));
            for (; t < period_end[p]; ++t) {
                const std::size_t cal_t = t + first + 1;
                double growth = 0.0;
                for (std::size_t i = 0; i < k; ++i) {
                    growth += weights[i] * (1.0 + universe[ids[i]].values()[cal_t]);
                }
                if (cfg.mode == RebalanceMode::buy_and_hold) {
                    for (std::size_t i = 0; i < k; ++i) {
                        weights[i] = weights[i] * (1.0 + universe[ids[i]].values()[cal_t]) / growth;
                    }
                } else {
                    std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(k));
                }
                nav *= growth;
                navs.push_back(nav);
                day_returns.push_back(growth - 1.0);
            }
        }

        const std::string name = "sim_" + std::to_string(sim);
        ReturnSeries rets(name, span, std::move(day_returns));
        cohort.navs[sim] = NavSeries(name, cfg.initial_capital, span, std::move(navs));
        cohort.reports[sim] = metrics_report(rets, cfg.initial_capital, annualization);
    };

    unsigned n_threads = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;
    n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(cfg.num_sims));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < cfg.num_sims; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned w = 0; w < n_threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < cfg.num_sims;
                     i = next.fetch_add(1)) {
                    run_one(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    cohort.summary = cohort_summary(cohort.reports);
    return cohort;
}

} // namespace quantbench
