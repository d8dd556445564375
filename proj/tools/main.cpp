#include "quantbench/csv.hpp"
#include "quantbench/errors.hpp"
#include "quantbench/report.hpp"

#include <CLI11.hpp>

#include <array>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace {

constexpr int kExitInput = 2;
constexpr int kExitDataset = 3;
constexpr int kExitDegenerate = 4;

} // namespace

int main(int argc, char** argv) {
    using namespace quantbench;

    CLI::App app{"Deterministic portfolio analytics: metric tables, fee simulation, factor-model "
                 "alpha inference, random-portfolio cohorts, and selection backtests."};
    app.get_formatter()->column_width(28);

    std::string command;
    app.add_option("command", command,
                   "one of: metrics | navs | fees | alpha | simulate | fof")
        ->required();

    std::string competitors_path, benchmarks_path, universe_path, risk_free_path, config_path;
    std::string competitors_kind = "returns", benchmarks_kind = "returns",
                universe_kind = "returns";
    const auto kind_check = CLI::IsMember({"returns", "prices"});
    app.add_option("--competitors", competitors_path, "CSV of competitor series")
        ->check(CLI::ExistingFile);
    app.add_option("--competitors-kind", competitors_kind, "returns|prices")->check(kind_check);
    app.add_option("--benchmarks", benchmarks_path, "CSV of benchmark/factor series")
        ->check(CLI::ExistingFile);
    app.add_option("--benchmarks-kind", benchmarks_kind, "returns|prices")->check(kind_check);
    app.add_option("--universe", universe_path, "CSV of tradable-asset series")
        ->check(CLI::ExistingFile);
    app.add_option("--universe-kind", universe_kind, "returns|prices")->check(kind_check);
    app.add_option("--risk-free", risk_free_path, "CSV holding one daily risk-free return series")
        ->check(CLI::ExistingFile);
    app.add_option("--config", config_path, "key = value settings file")
        ->check(CLI::ExistingFile);

    // Every settings key is also a flag; flags win over the config file.
    struct Override {
        const char* key;
        const char* flag;
        const char* help;
        std::string value;
    };
    std::array<Override, 16> overrides{{
        {"n_star", "--n-star", "annualization periods per year", {}},
        {"sd_mode", "--sd-mode", "sample|population", {}},
        {"alpha_days", "--alpha-days", "trading days for alpha annualization", {}},
        {"mgmt", "--mgmt", "annual management fee rate (decimal)", {}},
        {"perf", "--perf", "performance fee rate (decimal)", {}},
        {"fee_periods", "--fee-periods", "fee accrual periods per year", {}},
        {"sims", "--sims", "number of random portfolios", {}},
        {"seed", "--seed", "master RNG seed", {}},
        {"k", "--k", "assets per random portfolio / members per team", {}},
        {"bh_level", "--bh-level", "multiple-testing significance level", {}},
        {"bh_mode", "--bh-mode", "stepup|multiply", {}},
        {"mc_mode", "--mc-mode", "buyhold|daily", {}},
        {"rebalance_dates", "--rebalance-dates", "comma-separated ISO dates", {}},
        {"capital", "--capital", "initial capital", {}},
        {"format", "--format", "csv|json", {}},
        {"out_dir", "--out-dir", "output directory", {}},
    }};
    for (auto& o : overrides) app.add_option(o.flag, o.value, o.help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        for (const auto& o : overrides) {
            if (!o.value.empty()) apply_config_entry(cfg, o.key, o.value);
        }

        const auto load = [](const std::string& path, const std::string& kind) {
            return ingest_csv(path, kind == "prices" ? SeriesKind::prices : SeriesKind::returns);
        };
        std::vector<ReturnSeries> competitors, benchmarks, universe;
        std::optional<ReturnSeries> risk_free;
        if (!competitors_path.empty()) competitors = load(competitors_path, competitors_kind);
        if (!benchmarks_path.empty()) benchmarks = load(benchmarks_path, benchmarks_kind);
        if (!universe_path.empty()) universe = load(universe_path, universe_kind);
        if (!risk_free_path.empty()) {
            auto series = ingest_csv(risk_free_path, SeriesKind::returns);
            if (series.size() != 1) {
                throw InputError("risk-free file must hold exactly one series, found " +
                                 std::to_string(series.size()));
            }
            risk_free = std::move(series.front());
        }
        if (competitors.empty() && benchmarks.empty() && universe.empty()) {
            throw InputError(
                "no input series: pass --competitors, --benchmarks, and/or --universe");
        }

        const Dataset data = build_dataset(std::move(competitors), std::move(benchmarks),
                                           std::move(universe), std::move(risk_free));
        const auto written = run_report(data, cfg, command);
        for (const auto& path : written) std::cout << "wrote " << path.string() << "\n";
        return 0;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DatasetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDataset;
    } catch (const DegeneracyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    }
}
