#pragma once

#include "quantbench/factor.hpp"
#include "quantbench/fees.hpp"
#include "quantbench/fof.hpp"
#include "quantbench/metrics.hpp"
#include "quantbench/montecarlo.hpp"
#include "quantbench/series.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace quantbench {

// All ingested series, aligned onto one shared calendar.
struct Dataset {
    std::vector<ReturnSeries> competitors;
    std::vector<ReturnSeries> benchmarks;
    std::vector<ReturnSeries> universe;
    std::optional<ReturnSeries> risk_free;
    TradingCalendar calendar;
};

// Intersects every supplied series onto a common calendar.
Dataset build_dataset(std::vector<ReturnSeries> competitors, std::vector<ReturnSeries> benchmarks,
                      std::vector<ReturnSeries> universe, std::optional<ReturnSeries> risk_free);

enum class OutputFormat { csv, json };

struct RunConfig {
    AnnualizationConfig annualization;
    int alpha_days = 238;  // competition-length annualization for alphas; 252 = industry mode
    FeeSchedule fees;
    SimulationConfig sim;
    std::size_t fof_k = 10;
    double bh_level = 0.05;
    BHMode bh_mode = BHMode::step_up;
    double initial_capital = 100.0;
    OutputFormat format = OutputFormat::csv;
    std::filesystem::path out_dir = "out";
};

// Flat key = value file; '#' starts a comment. Unknown keys are rejected.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

std::uint64_t run_config_hash(const RunConfig& cfg, const std::string& command);

struct Provenance {
    std::string config_hash_hex;
    std::uint64_t seed = 0;
};

// Plot-data payloads (data emission only; rendering is out of scope).
struct HistogramPayload {
    std::vector<double> edges;        // n+1 edges
    std::vector<std::size_t> counts;  // n bins
};

struct CurvesPayload {
    std::string x_label;
    std::vector<std::string> x;  // shared abscissa, already formatted (dates, ranks, ...)
    std::vector<std::pair<std::string, std::vector<double>>> columns;
};

struct ScatterPayload {
    std::string id_label;
    std::string x_label;
    std::string y_label;
    std::vector<std::string> ids;
    std::vector<double> x;
    std::vector<double> y;
};

using PlotPayload = std::variant<HistogramPayload, CurvesPayload, ScatterPayload>;

// Writes fig<id>.dat plus the fig<id>.legend sidecar; the payload kind must
// match the figure's schema.
std::filesystem::path emit_plot_data(const std::filesystem::path& out_dir, int figure_id,
                                     const PlotPayload& payload, const std::string& legend,
                                     const Provenance& prov);

// Commands: metrics | fees | alpha | simulate | fof | navs.
// Returns the files written (tables plus plot data).
std::vector<std::filesystem::path> run_report(const Dataset& data, const RunConfig& cfg,
                                              const std::string& command);

// 6-significant-digit rendering used for every numeric cell.
std::string format_number(double v);

} // namespace quantbench
