#include "quantbench/report.hpp"

#include "quantbench/csv.hpp"
#include "quantbench/errors.hpp"
#include "quantbench/hashing.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace quantbench {

namespace {

using Json = nlohmann::ordered_json;

// One table cell: a number, an absence, or a label.
struct Cell {
    enum class Kind { number, absent, text } kind = Kind::absent;
    double num = 0.0;
    std::string text;

    static Cell of(double v) { return {Kind::number, v, {}}; }
    static Cell of(const MetricValue& v) {
        return v.defined() ? of(*v.value) : Cell{Kind::absent, 0.0, {}};
    }
    static Cell label(std::string s) { return {Kind::text, 0.0, std::move(s)}; }
    static Cell none() { return {}; }
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string provenance_line(const Provenance& prov) {
    return "# config=" + prov.config_hash_hex + " seed=" + std::to_string(prov.seed);
}

std::filesystem::path write_table(const std::filesystem::path& out_dir, const Table& table,
                                  OutputFormat format, const Provenance& prov) {
    if (format == OutputFormat::csv) {
        const auto path = out_dir / (table.name + ".csv");
        std::ofstream out(path);
        if (!out) throw InputError("cannot write '" + path.string() + "'");
        out << provenance_line(prov) << "\n";
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            out << (c ? "," : "") << table.columns[c];
        }
        out << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) out << ",";
                switch (row[c].kind) {
                    case Cell::Kind::number: out << format_number(row[c].num); break;
                    case Cell::Kind::text: out << row[c].text; break;
                    case Cell::Kind::absent: break;
                }
            }
            out << "\n";
        }
        return path;
    }

    const auto path = out_dir / (table.name + ".json");
    Json doc;
    doc["table"] = table.name;
    doc["provenance"] = {{"config", prov.config_hash_hex}, {"seed", prov.seed}};
    doc["columns"] = table.columns;
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json r = Json::array();
        for (const auto& cell : row) {
            switch (cell.kind) {
                case Cell::Kind::number:
                    // Re-parse the 6-digit rendering so CSV and JSON agree.
                    r.push_back(std::strtod(format_number(cell.num).c_str(), nullptr));
                    break;
                case Cell::Kind::text: r.push_back(cell.text); break;
                case Cell::Kind::absent: r.push_back(nullptr); break;
            }
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << doc.dump(2) << "\n";
    return path;
}

} // namespace

std::string format_number(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

Dataset build_dataset(std::vector<ReturnSeries> competitors, std::vector<ReturnSeries> benchmarks,
                      std::vector<ReturnSeries> universe, std::optional<ReturnSeries> risk_free) {
    std::vector<ReturnSeries> all;
    all.reserve(competitors.size() + benchmarks.size() + universe.size() + 1);
    for (auto& s : competitors) all.push_back(std::move(s));
    for (auto& s : benchmarks) all.push_back(std::move(s));
    for (auto& s : universe) all.push_back(std::move(s));
    if (risk_free) all.push_back(std::move(*risk_free));
    if (all.empty()) throw InputError("no input series supplied");

    std::vector<ReturnSeries> aligned = align_series(all);

    Dataset data;
    data.calendar = aligned.front().calendar();
    std::size_t i = 0;
    for (std::size_t c = 0; c < competitors.size(); ++c) data.competitors.push_back(aligned[i++]);
    for (std::size_t c = 0; c < benchmarks.size(); ++c) data.benchmarks.push_back(aligned[i++]);
    for (std::size_t c = 0; c < universe.size(); ++c) data.universe.push_back(aligned[i++]);
    if (risk_free) data.risk_free = aligned[i++];
    return data;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw InputError("config key '" + key + "': not a number: '" + value + "'");
    }
    return v;
}

long parse_long(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw InputError("config key '" + key + "': not an integer: '" + value + "'");
    }
    return v;
}

} // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "n_star") {
        const long v = parse_long(key, value);
        if (v <= 0) throw InputError("n_star must be positive");
        cfg.annualization.periods_per_year = static_cast<int>(v);
    } else if (key == "sd_mode") {
        if (value == "sample") cfg.annualization.sd_mode = SdMode::sample;
        else if (value == "population") cfg.annualization.sd_mode = SdMode::population;
        else throw InputError("sd_mode must be 'sample' or 'population'");
    } else if (key == "alpha_days") {
        const long v = parse_long(key, value);
        if (v <= 0) throw InputError("alpha_days must be positive");
        cfg.alpha_days = static_cast<int>(v);
    } else if (key == "mgmt") {
        cfg.fees.mgmt_rate = parse_double(key, value);
    } else if (key == "perf") {
        cfg.fees.perf_rate = parse_double(key, value);
    } else if (key == "fee_periods") {
        const long v = parse_long(key, value);
        if (v <= 0) throw InputError("fee_periods must be positive");
        cfg.fees.periods_per_year = static_cast<int>(v);
    } else if (key == "sims") {
        const long v = parse_long(key, value);
        if (v < 1) throw InputError("sims must be at least 1");
        cfg.sim.num_sims = static_cast<std::size_t>(v);
    } else if (key == "seed") {
        char* end = nullptr;
        cfg.sim.master_seed = std::strtoull(value.c_str(), &end, 10);
        if (end == value.c_str() || *end != '\0') {
            throw InputError("config key 'seed': not an integer: '" + value + "'");
        }
    } else if (key == "k") {
        const long v = parse_long(key, value);
        if (v < 1) throw InputError("k must be at least 1");
        cfg.sim.portfolio_size = static_cast<std::size_t>(v);
        cfg.fof_k = static_cast<std::size_t>(v);
    } else if (key == "bh_level") {
        const double v = parse_double(key, value);
        if (v <= 0.0 || v >= 1.0) throw InputError("bh_level must be in (0, 1)");
        cfg.bh_level = v;
    } else if (key == "bh_mode") {
        if (value == "stepup") cfg.bh_mode = BHMode::step_up;
        else if (value == "multiply") cfg.bh_mode = BHMode::multiply_only;
        else throw InputError("bh_mode must be 'stepup' or 'multiply'");
    } else if (key == "mc_mode") {
        if (value == "buyhold") cfg.sim.mode = RebalanceMode::buy_and_hold;
        else if (value == "daily") cfg.sim.mode = RebalanceMode::daily_equal_weight;
        else throw InputError("mc_mode must be 'buyhold' or 'daily'");
    } else if (key == "rebalance_dates") {
        std::vector<Date> dates;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) dates.push_back(Date::parse(trim(item)));
        if (dates.empty()) throw InputError("rebalance_dates must list at least one date");
        cfg.sim.rebalance_dates = std::move(dates);
    } else if (key == "capital") {
        const double v = parse_double(key, value);
        if (!(v > 0.0)) throw InputError("capital must be positive");
        cfg.initial_capital = v;
        cfg.sim.initial_capital = v;
    } else if (key == "format") {
        if (value == "csv") cfg.format = OutputFormat::csv;
        else if (value == "json") cfg.format = OutputFormat::json;
        else throw InputError("format must be 'csv' or 'json'");
    } else if (key == "out_dir") {
        cfg.out_dir = value;
    } else {
        throw InputError("unknown config key '" + key + "'");
    }
}

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config '" + path.string() + "'");
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw InputError(path.filename().string() + ":" + std::to_string(lineno) +
                             ": expected key = value");
        }
        apply_config_entry(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
}

std::uint64_t run_config_hash(const RunConfig& cfg, const std::string& command) {
    Fnv1a h;
    h.add("command=").add(command);
    h.add(";n_star=").add(static_cast<std::uint64_t>(cfg.annualization.periods_per_year));
    h.add(";sd_mode=").add(cfg.annualization.sd_mode == SdMode::sample ? "sample" : "population");
    h.add(";alpha_days=").add(static_cast<std::uint64_t>(cfg.alpha_days));
    h.add(";mgmt=").add(cfg.fees.mgmt_rate);
    h.add(";perf=").add(cfg.fees.perf_rate);
    h.add(";fee_periods=").add(static_cast<std::uint64_t>(cfg.fees.periods_per_year));
    h.add(";sims=").add(static_cast<std::uint64_t>(cfg.sim.num_sims));
    h.add(";seed=").add(cfg.sim.master_seed);
    h.add(";k=").add(static_cast<std::uint64_t>(cfg.sim.portfolio_size));
    h.add(";fof_k=").add(static_cast<std::uint64_t>(cfg.fof_k));
    h.add(";mc_mode=").add(cfg.sim.mode == RebalanceMode::buy_and_hold ? "buyhold" : "daily");
    h.add(";dates=");
    for (const Date& d : cfg.sim.rebalance_dates) h.add(d.to_string()).add(",");
    h.add(";bh_level=").add(cfg.bh_level);
    h.add(";bh_mode=").add(cfg.bh_mode == BHMode::step_up ? "stepup" : "multiply");
    h.add(";capital=").add(cfg.initial_capital);
    h.add(";format=").add(cfg.format == OutputFormat::csv ? "csv" : "json");
    return h.value();
}

namespace {

struct FigureSchema {
    int id;
    enum class Kind { histogram, curves, scatter } kind;
};

FigureSchema::Kind figure_kind(int figure_id) {
    switch (figure_id) {
        case 1: return FigureSchema::Kind::histogram;
        case 6: return FigureSchema::Kind::scatter;
        case 2: case 3: case 4: case 5: case 7: case 8: case 9:
            return FigureSchema::Kind::curves;
        default: throw InputError("unknown figure id " + std::to_string(figure_id));
    }
}

} // namespace

std::filesystem::path emit_plot_data(const std::filesystem::path& out_dir, int figure_id,
                                     const PlotPayload& payload, const std::string& legend,
                                     const Provenance& prov) {
    const FigureSchema::Kind expected = figure_kind(figure_id);
    const auto path = out_dir / ("fig" + std::to_string(figure_id) + ".dat");
    // Buffer first: a payload that fails validation must not leave a stub file.
    std::ostringstream out;
    out << provenance_line(prov) << "\n";

    if (std::holds_alternative<HistogramPayload>(payload)) {
        if (expected != FigureSchema::Kind::histogram) {
            throw InputError("figure " + std::to_string(figure_id) + " does not take a histogram");
        }
        const auto& h = std::get<HistogramPayload>(payload);
        if (h.counts.empty() || h.edges.size() != h.counts.size() + 1) {
            throw InputError("figure " + std::to_string(figure_id) + ": no data");
        }
        out << "# bin_left\tbin_right\tcount\n";
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            out << format_number(h.edges[i]) << "\t" << format_number(h.edges[i + 1]) << "\t"
                << h.counts[i] << "\n";
        }
    } else if (std::holds_alternative<CurvesPayload>(payload)) {
        if (expected != FigureSchema::Kind::curves) {
            throw InputError("figure " + std::to_string(figure_id) + " does not take curves");
        }
        const auto& c = std::get<CurvesPayload>(payload);
        if (c.x.empty() || c.columns.empty()) {
            throw InputError("figure " + std::to_string(figure_id) + ": no data");
        }
        for (const auto& [name, values] : c.columns) {
            if (values.size() != c.x.size()) {
                throw InputError("figure " + std::to_string(figure_id) + ": column '" + name +
                                 "' is off the shared abscissa");
            }
        }
        out << "# " << c.x_label;
        for (const auto& [name, values] : c.columns) out << "\t" << name;
        out << "\n";
        for (std::size_t i = 0; i < c.x.size(); ++i) {
            out << c.x[i];
            for (const auto& [name, values] : c.columns) out << "\t" << format_number(values[i]);
            out << "\n";
        }
    } else {
        if (expected != FigureSchema::Kind::scatter) {
            throw InputError("figure " + std::to_string(figure_id) + " does not take a scatter");
        }
        const auto& s = std::get<ScatterPayload>(payload);
        if (s.ids.empty() || s.ids.size() != s.x.size() || s.ids.size() != s.y.size()) {
            throw InputError("figure " + std::to_string(figure_id) + ": no data");
        }
        out << "# " << s.id_label << "\t" << s.x_label << "\t" << s.y_label << "\n";
        for (std::size_t i = 0; i < s.ids.size(); ++i) {
            out << s.ids[i] << "\t" << format_number(s.x[i]) << "\t" << format_number(s.y[i])
                << "\n";
        }
    }

    std::ofstream file(path);
    if (!file) throw InputError("cannot write '" + path.string() + "'");
    file << out.str();

    const auto legend_path = out_dir / ("fig" + std::to_string(figure_id) + ".legend");
    std::ofstream leg(legend_path);
    if (!leg) throw InputError("cannot write '" + legend_path.string() + "'");
    leg << provenance_line(prov) << "\n" << legend;
    if (!legend.empty() && legend.back() != '\n') leg << "\n";
    return path;
}

namespace {

// ---- shared command helpers ----

std::vector<MetricsReport> reports_for(const std::vector<ReturnSeries>& series, double capital,
                                       const AnnualizationConfig& cfg) {
    std::vector<MetricsReport> out;
    out.reserve(series.size());
    for (const auto& s : series) out.push_back(metrics_report(s, capital, cfg));
    return out;
}

std::vector<Cell> report_row(const MetricsReport& rep) {
    return {Cell::label(rep.name), Cell::of(rep.sr),       Cell::of(rep.mdd),
            Cell::of(rep.cr),      Cell::of(rep.vol_up),   Cell::of(rep.vol_down),
            Cell::of(rep.upi),     Cell::of(rep.ui),       Cell::of(rep.autocorr),
            Cell::of(rep.ann_return), Cell::of(rep.ann_sd), Cell::of(rep.ending_nav)};
}

const std::vector<std::string>& report_columns() {
    static const std::vector<std::string> cols = {
        "name", "sr", "mdd", "cr", "vol_up", "vol_down", "upi", "ui",
        "autocorr_lag1", "ann_return", "ann_sd", "ending_nav"};
    return cols;
}

Table summary_table(const std::string& name, const CohortSummary& summary) {
    Table t;
    t.name = name;
    t.columns = {"metric", "min", "q25", "median", "mean", "q75", "max", "used", "skipped"};
    for (const auto& col : summary.columns) {
        std::vector<Cell> row;
        row.push_back(Cell::label(col.metric == "autocorr" ? "autocorr_lag1" : col.metric));
        if (col.used > 0) {
            row.push_back(Cell::of(col.summary.min));
            row.push_back(Cell::of(col.summary.q25));
            row.push_back(Cell::of(col.summary.median));
            row.push_back(Cell::of(col.summary.mean));
            row.push_back(Cell::of(col.summary.q75));
            row.push_back(Cell::of(col.summary.max));
        } else {
            for (int i = 0; i < 6; ++i) row.push_back(Cell::none());
        }
        row.push_back(Cell::of(static_cast<double>(col.used)));
        row.push_back(Cell::of(static_cast<double>(col.skipped)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::vector<std::string> calendar_labels(const TradingCalendar& cal) {
    std::vector<std::string> out;
    out.reserve(cal.size());
    for (const auto& d : cal.dates()) out.push_back(d.to_string());
    return out;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw DatasetError(message);
}

// ---- commands ----

struct CommandContext {
    const Dataset& data;
    const RunConfig& cfg;
    Provenance prov;
    std::vector<std::filesystem::path> written;

    void table(const Table& t) {
        written.push_back(write_table(cfg.out_dir, t, cfg.format, prov));
    }
    void figure(int id, const PlotPayload& payload, const std::string& legend) {
        written.push_back(emit_plot_data(cfg.out_dir, id, payload, legend, prov));
    }
};

void run_metrics(CommandContext& ctx) {
    const auto& data = ctx.data;
    const auto& cfg = ctx.cfg;
    require(!data.benchmarks.empty() || !data.competitors.empty(),
            "command 'metrics' needs benchmarks and/or competitors");

    if (!data.benchmarks.empty()) {
        auto reports = reports_for(data.benchmarks, cfg.initial_capital, cfg.annualization);
        // Ascending SR; rows without an SR go last, alphabetically.
        std::stable_sort(reports.begin(), reports.end(),
                         [](const MetricsReport& a, const MetricsReport& b) {
                             if (a.sr.defined() != b.sr.defined()) return a.sr.defined();
                             if (a.sr.defined()) return *a.sr.value < *b.sr.value;
                             return a.name < b.name;
                         });
        Table t;
        t.name = "metrics_benchmarks";
        t.columns = report_columns();
        for (const auto& rep : reports) t.rows.push_back(report_row(rep));
        ctx.table(t);
    }

    if (!data.competitors.empty()) {
        const auto reports = reports_for(data.competitors, cfg.initial_capital, cfg.annualization);
        Table t;
        t.name = "metrics_competitors";
        t.columns = report_columns();
        for (const auto& rep : reports) t.rows.push_back(report_row(rep));
        ctx.table(t);
        ctx.table(summary_table("metrics_summary", cohort_summary(reports)));
    }
}

void run_navs(CommandContext& ctx) {
    const auto& data = ctx.data;
    const auto& cfg = ctx.cfg;
    require(!data.competitors.empty(), "command 'navs' needs competitors");

    std::vector<NavSeries> comp_navs;
    comp_navs.reserve(data.competitors.size());
    for (const auto& s : data.competitors) {
        comp_navs.push_back(nav_from_returns(s, cfg.initial_capital));
    }

    Table t;
    t.name = "ending_navs";
    t.columns = {"name", "ending_nav"};
    std::vector<double> endings;
    for (const auto& nav : comp_navs) {
        endings.push_back(nav.ending_nav());
        t.rows.push_back({Cell::label(nav.name()), Cell::of(nav.ending_nav())});
    }
    ctx.table(t);

    // Ending-NAV histogram in fixed-width currency bins.
    const double width = 5.0;
    const double lo = std::floor(*std::min_element(endings.begin(), endings.end()) / width) * width;
    double hi = std::ceil(*std::max_element(endings.begin(), endings.end()) / width) * width;
    if (hi <= lo) hi = lo + width;
    HistogramPayload hist;
    for (double e = lo; e < hi + width / 2; e += width) hist.edges.push_back(e);
    hist.counts.assign(hist.edges.size() - 1, 0);
    for (double v : endings) {
        auto bin = static_cast<std::size_t>((v - lo) / width);
        if (bin >= hist.counts.size()) bin = hist.counts.size() - 1; // top edge closes the last bin
        ++hist.counts[bin];
    }
    ctx.figure(1, hist,
               "Histogram of competitor ending NAVs (initial capital " +
                   format_number(cfg.initial_capital) + "); bin width " + format_number(width) +
                   ".\ncolumns: bin_left, bin_right, count");

    CurvesPayload curves;
    curves.x_label = "date";
    curves.x = calendar_labels(data.calendar);
    for (double q : {0.05, 0.50, 0.95}) {
        const QuantileBand band = quantile_band(comp_navs, q);
        curves.columns.emplace_back("comp_q" + format_number(q * 100), band.values);
    }
    for (const auto& s : data.benchmarks) {
        curves.columns.emplace_back("bench_" + s.name(),
                                    nav_from_returns(s, cfg.initial_capital).values());
    }
    for (const auto& nav : comp_navs) {
        curves.columns.emplace_back("comp_" + nav.name(), nav.values());
    }
    ctx.figure(2, curves,
               "Daily NAVs: competitor cross-sectional quantiles (5%, 50%, 95%), benchmark "
               "NAVs, and every competitor NAV.\nAll paths compound from " +
                   format_number(cfg.initial_capital) + ".");
}

void run_fees(CommandContext& ctx) {
    const auto& data = ctx.data;
    const auto& cfg = ctx.cfg;
    require(!data.competitors.empty(), "command 'fees' needs competitors");

    std::vector<NavSeries> gross, net;
    Table detail;
    detail.name = "fees_detail";
    detail.columns = {"name", "ending_gross", "ending_net", "total_mgmt_fee", "total_perf_fee",
                      "sr_gross", "sr_net", "mdd_gross", "mdd_net"};
    std::vector<double> sr_g, sr_n, mdd_g, mdd_n;
    for (const auto& s : data.competitors) {
        NavSeries g = nav_from_returns(s, cfg.initial_capital);
        FeeLedger ledger = apply_fees(g, cfg.fees);
        // Net-of-fee daily returns over the same span as the gross series,
        // anchored at the initial capital.
        std::vector<double> full_net;
        full_net.reserve(g.size());
        double prev = cfg.initial_capital;
        for (double v : ledger.net.values()) {
            full_net.push_back(v / prev - 1.0);
            prev = v;
        }
        const ReturnSeries net_full(s.name(), g.calendar(), std::move(full_net));

        const MetricsReport rep_g = metrics_report(s, cfg.initial_capital, cfg.annualization);
        const MetricsReport rep_n =
            metrics_report(net_full, cfg.initial_capital, cfg.annualization);

        if (rep_g.sr.defined()) sr_g.push_back(*rep_g.sr.value);
        if (rep_n.sr.defined()) sr_n.push_back(*rep_n.sr.value);
        mdd_g.push_back(rep_g.mdd);
        mdd_n.push_back(rep_n.mdd);

        detail.rows.push_back({Cell::label(s.name()), Cell::of(g.ending_nav()),
                               Cell::of(ledger.net.ending_nav()), Cell::of(ledger.total_mgmt_fee),
                               Cell::of(ledger.total_perf_fee), Cell::of(rep_g.sr),
                               Cell::of(rep_n.sr), Cell::of(rep_g.mdd), Cell::of(rep_n.mdd)});
        gross.push_back(std::move(g));
        net.push_back(std::move(ledger.net));
    }
    ctx.table(detail);

    Table summary;
    summary.name = "fees_summary";
    summary.columns = {"quantity", "gross", "net"};
    summary.rows.push_back({Cell::label("median_sr"),
                            sr_g.empty() ? Cell::none() : Cell::of(stats::quantile(sr_g, 0.5)),
                            sr_n.empty() ? Cell::none() : Cell::of(stats::quantile(sr_n, 0.5))});
    summary.rows.push_back({Cell::label("median_mdd"), Cell::of(stats::quantile(mdd_g, 0.5)),
                            Cell::of(stats::quantile(mdd_n, 0.5))});
    ctx.table(summary);

    CurvesPayload curves;
    curves.x_label = "date";
    curves.x = calendar_labels(data.calendar);
    for (double q : {0.05, 0.50, 0.95}) {
        curves.columns.emplace_back("gross_q" + format_number(q * 100),
                                    quantile_band(gross, q).values);
    }
    for (double q : {0.05, 0.50, 0.95}) {
        curves.columns.emplace_back("net_q" + format_number(q * 100),
                                    quantile_band(net, q).values);
    }
    ctx.figure(3, curves,
               "Competitor NAV quantiles (5%, 50%, 95%) before fees (gross_*) and after " +
                   format_number(cfg.fees.mgmt_rate * 100) + "% management / " +
                   format_number(cfg.fees.perf_rate * 100) +
                   "% performance fees with daily accrual (net_*).");
}

void run_alpha(CommandContext& ctx) {
    const auto& data = ctx.data;
    const auto& cfg = ctx.cfg;
    std::vector<std::string> missing;
    if (data.competitors.empty()) missing.emplace_back("competitors");
    if (data.benchmarks.empty()) missing.emplace_back("benchmarks (factors)");
    if (!missing.empty()) {
        std::string joined;
        for (const auto& m : missing) joined += (joined.empty() ? "" : ", ") + m;
        throw DatasetError("command 'alpha' needs: " + joined);
    }

    const FactorPanel panel = FactorPanel::from_series(
        data.benchmarks, data.risk_free ? &*data.risk_free : nullptr);
    const CohortFit cohort =
        cohort_fit(data.competitors, panel, cfg.bh_level, cfg.alpha_days, cfg.bh_mode);

    // Map fit index -> BH entry.
    std::map<std::size_t, const BHEntry*> bh_of_fit;
    for (std::size_t i = 0; i < cohort.bh_fit_index.size(); ++i) {
        bh_of_fit[cohort.bh_fit_index[i]] = &cohort.bh.entries[i];
    }

    Table fits;
    fits.name = "alpha_fits";
    fits.columns = {"name",    "alpha_daily", "alpha_ann", "ar_ann", "ar_ann_ret_sd",
                    "alpha_se", "t_stat",     "p_value",   "p_adjusted", "bh_rank",
                    "significant", "degenerate"};
    for (const auto& f : panel.factor_names()) fits.columns.push_back("beta_" + f);
    for (std::size_t i = 0; i < cohort.fits.size(); ++i) {
        const FactorModelFit& f = cohort.fits[i];
        std::vector<Cell> row{Cell::label(f.name), Cell::of(f.alpha)};
        if (f.degenerate) {
            row.push_back(Cell::none()); // alpha_ann
            row.push_back(Cell::none()); // ar_ann
            row.push_back(Cell::none()); // ar_ann_ret_sd
            row.push_back(Cell::of(f.alpha_se));
            row.push_back(Cell::none()); // t
            row.push_back(Cell::none()); // p
            row.push_back(Cell::none()); // p_adjusted
            row.push_back(Cell::none()); // bh_rank
            row.push_back(Cell::none()); // significant
            row.push_back(Cell::of(1.0));
        } else {
            const BHEntry* bh = bh_of_fit.at(i);
            row.push_back(Cell::of(f.alpha_annualized));
            row.push_back(Cell::of(f.ar_annualized));
            row.push_back(Cell::of(f.ar_annualized_excess_sd));
            row.push_back(Cell::of(f.alpha_se));
            row.push_back(Cell::of(f.t_stat));
            row.push_back(Cell::of(f.p_value));
            row.push_back(Cell::of(bh->adjusted_p));
            row.push_back(Cell::of(static_cast<double>(bh->rank)));
            row.push_back(Cell::of(bh->significant ? 1.0 : 0.0));
            row.push_back(Cell::of(0.0));
        }
        for (double b : f.betas) row.push_back(Cell::of(b));
        fits.rows.push_back(std::move(row));
    }
    ctx.table(fits);

    Table summary;
    summary.name = "alpha_summary";
    summary.columns = {"column", "min", "q25", "median", "mean", "q75", "max", "used"};
    for (const auto& col : cohort.columns) {
        std::vector<Cell> row{Cell::label(col.name)};
        if (col.used > 0) {
            row.push_back(Cell::of(col.summary.min));
            row.push_back(Cell::of(col.summary.q25));
            row.push_back(Cell::of(col.summary.median));
            row.push_back(Cell::of(col.summary.mean));
            row.push_back(Cell::of(col.summary.q75));
            row.push_back(Cell::of(col.summary.max));
        } else {
            for (int i = 0; i < 6; ++i) row.push_back(Cell::none());
        }
        row.push_back(Cell::of(static_cast<double>(col.used)));
        summary.rows.push_back(std::move(row));
    }
    ctx.table(summary);

    Table counts;
    counts.name = "alpha_counts";
    counts.columns = {"quantity", "value"};
    auto count_row = [&](const std::string& name, double v) {
        counts.rows.push_back({Cell::label(name), Cell::of(v)});
    };
    count_row("portfolios", static_cast<double>(data.competitors.size()));
    count_row("fitted", static_cast<double>(cohort.fits.size()));
    count_row("failed", static_cast<double>(cohort.failures.size()));
    count_row("positive_alphas", static_cast<double>(cohort.positive_alphas));
    count_row("negative_alphas", static_cast<double>(cohort.negative_alphas));
    count_row("degenerate_fits", static_cast<double>(cohort.degenerate_fits));
    count_row("significant_raw", static_cast<double>(cohort.significant_raw));
    count_row("significant_bh", static_cast<double>(cohort.bh.num_significant));
    count_row("bonferroni_cutoff", cfg.bh_level / static_cast<double>(cohort.bh.m));
    if (cohort.ad_available) {
        count_row("ad_a2_star", cohort.ad.a2_star);
        count_row("ad_p_value", cohort.ad.p_value);
    } else {
        counts.rows.push_back({Cell::label("ad_a2_star"), Cell::none()});
        counts.rows.push_back({Cell::label("ad_p_value"), Cell::none()});
    }
    ctx.table(counts);

    // Rank-ordered p-values, their adjustments, and the significance line.
    std::vector<const BHEntry*> by_rank;
    by_rank.reserve(cohort.bh.entries.size());
    for (const auto& e : cohort.bh.entries) by_rank.push_back(&e);
    std::sort(by_rank.begin(), by_rank.end(),
              [](const BHEntry* a, const BHEntry* b) { return a->rank < b->rank; });
    CurvesPayload fig4;
    fig4.x_label = "rank";
    std::vector<double> raw, adj, cut;
    for (const BHEntry* e : by_rank) {
        fig4.x.push_back(std::to_string(e->rank));
        raw.push_back(e->raw_p);
        adj.push_back(e->adjusted_p);
        cut.push_back(e->cutoff);
    }
    fig4.columns.emplace_back("p_value", std::move(raw));
    fig4.columns.emplace_back("p_adjusted", std::move(adj));
    fig4.columns.emplace_back("cutoff", std::move(cut));
    ctx.figure(4, fig4,
               "Alpha p-values by ascending rank, their multiple-testing adjustment, and the "
               "rank*level/m significance line (level " + format_number(cfg.bh_level) + ").");
}

void run_simulate(CommandContext& ctx) {
    const auto& data = ctx.data;
    const auto& cfg = ctx.cfg;
    require(!data.universe.empty(), "command 'simulate' needs a universe");

    const SimulatedCohort cohort = simulate_cohort(data.universe, cfg.sim, cfg.annualization);
    ctx.table(summary_table("simulation_summary", cohort.summary));

    // Competitor metrics for comparison when available.
    std::vector<MetricsReport> comp_reports;
    if (!data.competitors.empty()) {
        comp_reports = reports_for(data.competitors, cfg.initial_capital, cfg.annualization);
    }

    auto srs_of = [](const std::vector<MetricsReport>& reports) {
        std::vector<double> out;
        for (const auto& r : reports) {
            if (r.sr.defined()) out.push_back(*r.sr.value);
        }
        return out;
    };
    const std::vector<double> sim_srs = srs_of(cohort.reports);
    if (sim_srs.size() < 2) throw DegeneracyError("too few defined simulated SRs for a density");

    CurvesPayload fig5;
    fig5.x_label = "sr";
    double lo = stats::quantile(sim_srs, 0.0);
    double hi = stats::quantile(sim_srs, 1.0);
    const double h_sim = stats::silverman_bandwidth(sim_srs);
    double pad = 3.0 * h_sim;
    std::vector<double> comp_srs;
    if (!comp_reports.empty()) {
        comp_srs = srs_of(comp_reports);
        if (comp_srs.size() >= 2) {
            const double h_comp = stats::silverman_bandwidth(comp_srs);
            pad = std::max(pad, 3.0 * h_comp);
            lo = std::min(lo, stats::quantile(comp_srs, 0.0));
            hi = std::max(hi, stats::quantile(comp_srs, 1.0));
        }
    }
    const std::string mode_text =
        cfg.sim.mode == RebalanceMode::buy_and_hold
            ? "Positions drift buy-and-hold between rebalance dates."
            : "Positions re-equalize daily.";

    const stats::Density sim_dens = stats::gaussian_kde(sim_srs, lo - pad, hi + pad);
    for (double x : sim_dens.x) fig5.x.push_back(format_number(x));
    if (comp_srs.size() >= 2) {
        fig5.columns.emplace_back("density_competitors",
                                  stats::gaussian_kde(comp_srs, lo - pad, hi + pad).y);
    }
    fig5.columns.emplace_back("density_random", sim_dens.y);
    ctx.figure(5, fig5,
               "Empirical density of annualized SRs: random equal-weight portfolios"
               + std::string(comp_srs.size() >= 2 ? " vs competitors" : "") +
               " (Gaussian kernel, Silverman bandwidth). " + mode_text);

    ScatterPayload fig6;
    fig6.id_label = "id";
    fig6.x_label = "sr";
    fig6.y_label = "mdd";
    auto add_points = [&](const std::vector<MetricsReport>& reports) {
        for (const auto& r : reports) {
            if (!r.sr.defined()) continue;
            fig6.ids.push_back(r.name);
            fig6.x.push_back(*r.sr.value);
            fig6.y.push_back(r.mdd);
        }
    };
    add_points(comp_reports);
    add_points(cohort.reports);
    ctx.figure(6, fig6,
               "SR vs MDD, one point per competitor and per simulated portfolio. " + mode_text);

    CurvesPayload fig7;
    fig7.x_label = "date";
    fig7.x = calendar_labels(cohort.calendar);
    for (double q : {0.05, 0.50, 0.95}) {
        fig7.columns.emplace_back("sim_q" + format_number(q * 100),
                                  quantile_band(cohort.navs, q).values);
    }
    const auto span_start = *data.calendar.index_of(cohort.calendar.front());
    auto sliced = [&](const NavSeries& nav) {
        return std::vector<double>(nav.values().begin() + static_cast<std::ptrdiff_t>(span_start),
                                   nav.values().end());
    };
    for (const auto& s : data.benchmarks) {
        fig7.columns.emplace_back("bench_" + s.name(),
                                  sliced(nav_from_returns(s, cfg.initial_capital)));
    }
    if (!data.competitors.empty()) {
        std::vector<NavSeries> comp_navs;
        for (const auto& s : data.competitors) {
            comp_navs.push_back(nav_from_returns(s, cfg.initial_capital));
        }
        for (double q : {0.05, 0.50, 0.95}) {
            const QuantileBand band = quantile_band(comp_navs, q);
            fig7.columns.emplace_back(
                "comp_q" + format_number(q * 100),
                std::vector<double>(band.values.begin() + static_cast<std::ptrdiff_t>(span_start),
                                    band.values.end()));
        }
    }
    ctx.figure(7, fig7,
               "Daily NAV quantiles of the simulated cohort over its trading span, with "
               "benchmark NAVs and competitor quantiles (both compounded from the full "
               "calendar start) for comparison. " + mode_text);
}

void run_fof(CommandContext& ctx) {
    const auto& data = ctx.data;
    const auto& cfg = ctx.cfg;
    require(!data.competitors.empty(), "command 'fof' needs competitors");
    require(data.competitors.size() >= cfg.fof_k,
            "command 'fof' needs at least k=" + std::to_string(cfg.fof_k) + " competitors, has " +
                std::to_string(data.competitors.size()));

    const PeriodGrid grid = PeriodGrid::make(data.calendar, cfg.sim.rebalance_dates);

    Table totals;
    totals.name = "fof_totals";
    totals.columns = {"strategy", "total_return", "ending_nav"};

    for (const Selector selector : {Selector::top, Selector::bottom}) {
        const FofBacktest bt = fof_backtest(data.competitors, grid, selector, cfg.fof_k);
        const std::string label = selector == Selector::top ? "superstars" : "superlosers";

        Table t;
        t.name = "fof_" + label;
        t.columns = {"period", "end_date", "strategy_return", "nav", "members"};
        for (std::size_t i = 0; i < bt.strategy_returns.size(); ++i) {
            std::string members;
            for (std::size_t m : bt.selections[i]) {
                if (!members.empty()) members += ";";
                members += data.competitors[m].name();
            }
            t.rows.push_back({Cell::of(static_cast<double>(i + 2)),
                              Cell::label(bt.nav.calendar()[i].to_string()),
                              Cell::of(bt.strategy_returns[i]), Cell::of(bt.nav.values()[i]),
                              Cell::label(members)});
        }
        ctx.table(t);
        totals.rows.push_back({Cell::label(label), Cell::of(bt.total_return),
                               Cell::of(bt.nav.ending_nav())});

        // Member curves restart at the capital each period; the strategy
        // curve compounds continuously.
        CurvesPayload fig;
        fig.x_label = "date";
        fig.x = calendar_labels(bt.daily_nav.calendar());
        std::vector<std::vector<double>> member_curves(cfg.fof_k);
        std::vector<double> avg_curve;
        std::size_t day = 0;
        for (std::size_t p = 1; p < grid.num_periods(); ++p) {
            const auto& span = grid.period(p);
            const auto& team = bt.selections[p - 1];
            std::vector<double> growth(cfg.fof_k, 1.0);
            for (std::size_t t2 = span.begin; t2 < span.end; ++t2) {
                double sum = 0.0;
                for (std::size_t mi = 0; mi < team.size(); ++mi) {
                    const auto& s = data.competitors[team[mi]];
                    growth[mi] *= 1.0 + s.values()[*s.calendar().index_of(grid.calendar()[t2])];
                    member_curves[mi].push_back(100.0 * growth[mi]);
                    sum += 100.0 * growth[mi];
                }
                avg_curve.push_back(sum / static_cast<double>(team.size()));
                ++day;
            }
        }
        fig.columns.emplace_back("strategy", bt.daily_nav.values());
        fig.columns.emplace_back("member_avg", std::move(avg_curve));
        for (std::size_t mi = 0; mi < cfg.fof_k; ++mi) {
            char suffix[32];
            std::snprintf(suffix, sizeof(suffix), "%02zu", mi + 1);
            fig.columns.emplace_back("member_" + std::string(suffix),
                                     std::move(member_curves[mi]));
        }
        ctx.figure(selector == Selector::top ? 8 : 9, fig,
                   "Monthly reselection (" + label + ", k=" + std::to_string(cfg.fof_k) +
                       "): member_* curves restart at 100 each period (identities per period "
                       "in fof_" + label + "), member_avg is their mean, and strategy is the "
                       "continuously compounded portfolio NAV.");
    }
    ctx.table(totals);
}

} // namespace

std::vector<std::filesystem::path> run_report(const Dataset& data, const RunConfig& cfg,
                                              const std::string& command) {
    std::filesystem::create_directories(cfg.out_dir);
    char hex[24];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(run_config_hash(cfg, command)));
    CommandContext ctx{data, cfg, Provenance{hex, cfg.sim.master_seed}, {}};

    if (command == "metrics") run_metrics(ctx);
    else if (command == "navs") run_navs(ctx);
    else if (command == "fees") run_fees(ctx);
    else if (command == "alpha") run_alpha(ctx);
    else if (command == "simulate") run_simulate(ctx);
    else if (command == "fof") run_fof(ctx);
    else throw InputError("unknown command '" + command + "'");
    return std::move(ctx.written);
}

} // namespace quantbench
