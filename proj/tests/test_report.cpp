#include <doctest.h>

#include "helpers.hpp"
#include "quantbench/errors.hpp"
#include "quantbench/report.hpp"
#include "quantbench/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace quantbench;
namespace fs = std::filesystem;

namespace {

const std::string kData = QB_TEST_DATA_DIR;
const std::string kGolden = QB_GOLDEN_DIR;
const std::string kCli = QB_CLI_PATH;

int run_cli(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string fixture_inputs() {
    return " --competitors " + kData + "/competitors.csv --benchmarks " + kData +
           "/benchmarks.csv --universe " + kData + "/universe.csv --risk-free " + kData +
           "/risk_free.csv --config " + kData + "/golden.cfg";
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = qbtest::temp_dir() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

// Byte-compares every file in `golden` against `produced`, and requires the
// two directories to hold exactly the same file names.
void compare_dirs(const fs::path& golden, const fs::path& produced) {
    REQUIRE_MESSAGE(fs::exists(golden), "missing golden directory ", golden.string());
    std::set<std::string> golden_names, produced_names;
    for (const auto& e : fs::directory_iterator(golden)) {
        golden_names.insert(e.path().filename().string());
    }
    for (const auto& e : fs::directory_iterator(produced)) {
        produced_names.insert(e.path().filename().string());
    }
    CHECK(golden_names == produced_names);
    for (const auto& name : golden_names) {
        INFO("file ", name);
        CHECK(qbtest::read_file(produced / name) == qbtest::read_file(golden / name));
    }
}

// A small two-competitor dataset: one noisy series, one flat (absent metrics).
Dataset tiny_dataset() {
    const auto cal = qbtest::weekday_calendar({2022, 3, 7}, 40);
    Rng rng(14, 0);
    std::vector<double> vals;
    for (int t = 0; t < 40; ++t) vals.push_back(0.01 * qbtest::normal_draw(rng));
    std::vector<ReturnSeries> comp;
    comp.push_back(qbtest::make_series("norm", cal, vals));
    comp.push_back(qbtest::make_series("zed", cal, std::vector<double>(40, 0.0)));
    return build_dataset(std::move(comp), {}, {}, std::nullopt);
}

} // namespace

TEST_CASE("numbers render with six significant digits") {
    CHECK(format_number(0.123456789) == "0.123457");
    CHECK(format_number(1234567.0) == "1.23457e+06");
    CHECK(format_number(-0.000012345678) == "-1.23457e-05");
    CHECK(format_number(100.0) == "100");
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.5) == "-0.5");
    CHECK(format_number(2.0 / 3.0) == "0.666667");
}

TEST_CASE("config entries reach their targets") {
    RunConfig cfg;

    apply_config_entry(cfg, "n_star", "238");
    CHECK(cfg.annualization.periods_per_year == 238);
    apply_config_entry(cfg, "sd_mode", "population");
    CHECK(cfg.annualization.sd_mode == SdMode::population);
    apply_config_entry(cfg, "sd_mode", "sample");
    CHECK(cfg.annualization.sd_mode == SdMode::sample);
    apply_config_entry(cfg, "alpha_days", "252");
    CHECK(cfg.alpha_days == 252);
    apply_config_entry(cfg, "mgmt", "0.01");
    CHECK(cfg.fees.mgmt_rate == 0.01);
    apply_config_entry(cfg, "perf", "0.1");
    CHECK(cfg.fees.perf_rate == 0.1);
    apply_config_entry(cfg, "fee_periods", "365");
    CHECK(cfg.fees.periods_per_year == 365);
    apply_config_entry(cfg, "sims", "500");
    CHECK(cfg.sim.num_sims == 500);
    apply_config_entry(cfg, "seed", "12345");
    CHECK(cfg.sim.master_seed == 12345);

    // One k drives both the random portfolios and the selection teams.
    apply_config_entry(cfg, "k", "7");
    CHECK(cfg.sim.portfolio_size == 7);
    CHECK(cfg.fof_k == 7);

    apply_config_entry(cfg, "bh_level", "0.1");
    CHECK(cfg.bh_level == 0.1);
    apply_config_entry(cfg, "bh_mode", "multiply");
    CHECK(cfg.bh_mode == BHMode::multiply_only);
    apply_config_entry(cfg, "mc_mode", "daily");
    CHECK(cfg.sim.mode == RebalanceMode::daily_equal_weight);

    apply_config_entry(cfg, "rebalance_dates", "2022-03-06, 2022-04-03");
    REQUIRE(cfg.sim.rebalance_dates.size() == 2);
    CHECK(cfg.sim.rebalance_dates[0] == Date{2022, 3, 6});
    CHECK(cfg.sim.rebalance_dates[1] == Date{2022, 4, 3});

    // Capital feeds both the metric tables and the simulation.
    apply_config_entry(cfg, "capital", "250");
    CHECK(cfg.initial_capital == 250.0);
    CHECK(cfg.sim.initial_capital == 250.0);

    apply_config_entry(cfg, "format", "json");
    CHECK(cfg.format == OutputFormat::json);
    apply_config_entry(cfg, "out_dir", "results");
    CHECK(cfg.out_dir == fs::path("results"));
}

TEST_CASE("config entries reject bad values") {
    RunConfig cfg;
    CHECK_THROWS_WITH_AS(apply_config_entry(cfg, "bogus", "1"),
                         doctest::Contains("unknown config key 'bogus'"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "n_star", "0"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "n_star", "abc"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "sd_mode", "medium"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "alpha_days", "-1"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "mgmt", "one percent"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "fee_periods", "0"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "sims", "0"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "seed", "abc"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "k", "0"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "bh_level", "0"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "bh_level", "1.5"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "bh_mode", "both"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "mc_mode", "weekly"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "rebalance_dates", "2022-13-40"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "capital", "-100"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "capital", "0"), InputError);
    CHECK_THROWS_AS(apply_config_entry(cfg, "format", "tsv"), InputError);
}

TEST_CASE("config files: comments, blanks, and errors with line numbers") {
    const auto path = qbtest::write_temp("cfg_ok.cfg",
                                         "# reference run\n"
                                         "\n"
                                         "  n_star = 238   # trading days\n"
                                         "seed=7\n"
                                         "sd_mode =population\n");
    RunConfig cfg;
    apply_config_file(cfg, path);
    CHECK(cfg.annualization.periods_per_year == 238);
    CHECK(cfg.sim.master_seed == 7);
    CHECK(cfg.annualization.sd_mode == SdMode::population);

    CHECK_THROWS_WITH_AS(apply_config_file(cfg, qbtest::temp_dir() / "absent.cfg"),
                         doctest::Contains("cannot open config"), InputError);

    const auto noeq = qbtest::write_temp("cfg_noeq.cfg", "n_star = 238\nseed 7\n");
    CHECK_THROWS_WITH_AS(apply_config_file(cfg, noeq),
                         doctest::Contains("cfg_noeq.cfg:2"), InputError);

    const auto unknown = qbtest::write_temp("cfg_unknown.cfg", "n_stars = 238\n");
    CHECK_THROWS_AS(apply_config_file(cfg, unknown), InputError);
}

TEST_CASE("the run hash pins the command and every setting") {
    RunConfig cfg;
    const std::uint64_t base = run_config_hash(cfg, "metrics");
    CHECK(base == run_config_hash(cfg, "metrics"));
    CHECK(run_config_hash(cfg, "fees") != base);

    RunConfig v = cfg;
    apply_config_entry(v, "seed", "1");
    CHECK(run_config_hash(v, "metrics") != base);
    v = cfg;
    apply_config_entry(v, "k", "3");
    CHECK(run_config_hash(v, "metrics") != base);
    v = cfg;
    apply_config_entry(v, "format", "json");
    CHECK(run_config_hash(v, "metrics") != base);
    v = cfg;
    apply_config_entry(v, "bh_mode", "multiply");
    CHECK(run_config_hash(v, "metrics") != base);
    v = cfg;
    apply_config_entry(v, "rebalance_dates", "2022-03-06");
    CHECK(run_config_hash(v, "metrics") != base);
    v = cfg;
    apply_config_entry(v, "sd_mode", "population");
    CHECK(run_config_hash(v, "metrics") != base);
}

TEST_CASE("dataset construction intersects the calendars") {
    const auto long_cal = qbtest::weekday_calendar({2022, 3, 7}, 30);
    const auto short_cal = qbtest::weekday_calendar({2022, 3, 14}, 15);

    Rng rng(90, 0);
    std::vector<double> a, b;
    for (int t = 0; t < 30; ++t) a.push_back(0.01 * qbtest::normal_draw(rng));
    for (int t = 0; t < 15; ++t) b.push_back(0.01 * qbtest::normal_draw(rng));

    std::vector<ReturnSeries> comp;
    comp.push_back(qbtest::make_series("long", long_cal, a));
    std::vector<ReturnSeries> bench;
    bench.push_back(qbtest::make_series("short", short_cal, b));

    const Dataset data = build_dataset(comp, bench, {}, std::nullopt);
    CHECK(data.calendar == short_cal.intersect(long_cal));
    CHECK(data.calendar.size() == 15);
    REQUIRE(data.competitors.size() == 1);
    REQUIRE(data.benchmarks.size() == 1);
    CHECK(data.competitors[0].calendar() == data.calendar);
    CHECK(data.benchmarks[0].calendar() == data.calendar);

    // Alignment drops rows rather than compounding them: the value on the
    // first shared date is the original observation.
    const auto at = long_cal.index_of(short_cal[0]);
    REQUIRE(at.has_value());
    CHECK(data.competitors[0].values()[0] == a[*at]);

    // Disjoint histories cannot be aligned.
    const auto apart = qbtest::weekday_calendar({2023, 1, 2}, 10);
    std::vector<ReturnSeries> far;
    far.push_back(qbtest::make_series("far", apart, std::vector<double>(10, 0.001)));
    CHECK_THROWS_WITH_AS((void)build_dataset(comp, far, {}, std::nullopt),
                         doctest::Contains("empty intersection"), InputError);

    // The risk-free series rides along on the shared calendar.
    const Dataset with_rf =
        build_dataset(comp, bench, {}, qbtest::make_series("rf", long_cal, a));
    REQUIRE(with_rf.risk_free.has_value());
    CHECK(with_rf.risk_free->calendar() == with_rf.calendar);
}

TEST_CASE("plot payloads are validated against the figure schema") {
    const auto dir = fresh_dir("figs");
    const Provenance prov{"00000000deadbeef", 42};

    HistogramPayload hist;
    hist.edges = {0.0, 5.0, 10.0};
    hist.counts = {3, 4};
    const auto path = emit_plot_data(dir, 1, hist, "counts of things", prov);
    CHECK(path.filename() == "fig1.dat");
    const std::string dat = qbtest::read_file(path);
    CHECK(dat ==
          "# config=00000000deadbeef seed=42\n"
          "# bin_left\tbin_right\tcount\n"
          "0\t5\t3\n"
          "5\t10\t4\n");
    const std::string legend = qbtest::read_file(dir / "fig1.legend");
    CHECK(legend ==
          "# config=00000000deadbeef seed=42\n"
          "counts of things\n");

    CurvesPayload curves;
    curves.x_label = "date";
    curves.x = {"2022-03-07", "2022-03-08"};
    curves.columns = {{"nav_a", {100.0, 101.0}}, {"nav_b", {100.0, 99.5}}};
    const auto p2 = emit_plot_data(dir, 2, curves, "navs", prov);
    CHECK(qbtest::read_file(p2) ==
          "# config=00000000deadbeef seed=42\n"
          "# date\tnav_a\tnav_b\n"
          "2022-03-07\t100\t100\n"
          "2022-03-08\t101\t99.5\n");

    ScatterPayload scatter;
    scatter.id_label = "name";
    scatter.x_label = "mdd";
    scatter.y_label = "sr";
    scatter.ids = {"a", "b"};
    scatter.x = {0.1, 0.2};
    scatter.y = {1.5, -0.5};
    const auto p6 = emit_plot_data(dir, 6, scatter, "risk vs reward", prov);
    CHECK(qbtest::read_file(p6) ==
          "# config=00000000deadbeef seed=42\n"
          "# name\tmdd\tsr\n"
          "a\t0.1\t1.5\n"
          "b\t0.2\t-0.5\n");
}

TEST_CASE("plot payload mismatches are rejected without leaving files") {
    const auto dir = fresh_dir("figs_bad");
    const Provenance prov{"0", 0};

    HistogramPayload hist;
    hist.edges = {0.0, 1.0};
    hist.counts = {1};
    CHECK_THROWS_AS((void)emit_plot_data(dir, 2, hist, "x", prov), InputError);
    CHECK(!fs::exists(dir / "fig2.dat"));

    CurvesPayload curves;
    curves.x = {"a"};
    curves.columns = {{"c", {1.0}}};
    CHECK_THROWS_AS((void)emit_plot_data(dir, 1, curves, "x", prov), InputError);
    CHECK_THROWS_AS((void)emit_plot_data(dir, 6, curves, "x", prov), InputError);

    ScatterPayload scatter;
    scatter.ids = {"a"};
    scatter.x = {1.0};
    scatter.y = {2.0};
    CHECK_THROWS_AS((void)emit_plot_data(dir, 3, scatter, "x", prov), InputError);

    // Malformed payloads.
    HistogramPayload bad_hist;
    bad_hist.edges = {0.0, 1.0, 2.0};
    bad_hist.counts = {1}; // edge/count mismatch
    CHECK_THROWS_AS((void)emit_plot_data(dir, 1, bad_hist, "x", prov), InputError);
    CHECK(!fs::exists(dir / "fig1.dat"));

    CurvesPayload ragged;
    ragged.x = {"a", "b"};
    ragged.columns = {{"c", {1.0}}};
    CHECK_THROWS_WITH_AS((void)emit_plot_data(dir, 7, ragged, "x", prov),
                         doctest::Contains("off the shared abscissa"), InputError);

    CurvesPayload empty;
    CHECK_THROWS_AS((void)emit_plot_data(dir, 8, empty, "x", prov), InputError);

    ScatterPayload uneven;
    uneven.ids = {"a", "b"};
    uneven.x = {1.0};
    uneven.y = {2.0, 3.0};
    CHECK_THROWS_AS((void)emit_plot_data(dir, 6, uneven, "x", prov), InputError);

    CHECK_THROWS_WITH_AS((void)emit_plot_data(dir, 10, hist, "x", prov),
                         doctest::Contains("unknown figure id"), InputError);
}

TEST_CASE("report commands validate their dataset") {
    const Dataset data = tiny_dataset();
    RunConfig cfg;
    cfg.out_dir = fresh_dir("guards");

    CHECK_THROWS_AS((void)run_report(data, cfg, "teleport"), InputError);
    // No universe: the simulation has nothing to draw from.
    CHECK_THROWS_AS((void)run_report(data, cfg, "simulate"), DatasetError);
    // No benchmarks: no factor panel.
    CHECK_THROWS_AS((void)run_report(data, cfg, "alpha"), DatasetError);
    // Two competitors cannot fill the default team of ten.
    CHECK_THROWS_AS((void)run_report(data, cfg, "fof"), DatasetError);
}

TEST_CASE("a flat universe leaves the simulation without defined ratios") {
    const auto cal = qbtest::weekday_calendar({2022, 3, 7}, 30);
    std::vector<ReturnSeries> universe;
    for (int i = 0; i < 4; ++i) {
        universe.push_back(
            qbtest::make_series("u" + std::to_string(i), cal, std::vector<double>(30, 0.0)));
    }
    const Dataset data = build_dataset({}, {}, universe, std::nullopt);

    RunConfig cfg;
    cfg.out_dir = fresh_dir("degenerate");
    cfg.sim.rebalance_dates = {Date{2022, 3, 7}};
    cfg.sim.portfolio_size = 2;
    cfg.sim.num_sims = 6;
    CHECK_THROWS_AS((void)run_report(data, cfg, "simulate"), DegeneracyError);
}

TEST_CASE("CSV tables open with the provenance line and header row") {
    const Dataset data = tiny_dataset();
    RunConfig cfg;
    cfg.out_dir = fresh_dir("csv_prov");
    cfg.sim.master_seed = 99;

    const auto written = run_report(data, cfg, "metrics");
    REQUIRE(!written.empty());
    for (const auto& path : written) {
        const std::string text = qbtest::read_file(path);
        INFO("file ", path.string());
        CHECK(text.rfind("# config=", 0) == 0);
        const auto eol = text.find('\n');
        const std::string first = text.substr(0, eol);
        CHECK(first.find(" seed=99") != std::string::npos);
        // 16 lowercase hex digits between 'config=' and ' seed'.
        const auto from = first.find("config=") + 7;
        const std::string hex = first.substr(from, 16);
        CHECK(hex.size() == 16);
        CHECK(hex.find_first_not_of("0123456789abcdef") == std::string::npos);
    }

    const std::string comp = qbtest::read_file(cfg.out_dir / "metrics_competitors.csv");
    const auto l1 = comp.find('\n');
    const auto l2 = comp.find('\n', l1 + 1);
    CHECK(comp.substr(l1 + 1, l2 - l1 - 1) ==
          "name,sr,mdd,cr,vol_up,vol_down,upi,ui,autocorr_lag1,ann_return,ann_sd,ending_nav");
}

TEST_CASE("JSON tables mirror the CSV cells with absent values as null") {
    const Dataset data = tiny_dataset();
    RunConfig cfg;
    cfg.out_dir = fresh_dir("json_out");
    cfg.format = OutputFormat::json;

    const auto written = run_report(data, cfg, "metrics");
    const auto comp_path = cfg.out_dir / "metrics_competitors.json";
    REQUIRE(std::find(written.begin(), written.end(), comp_path) != written.end());

    const auto doc = nlohmann::json::parse(qbtest::read_file(comp_path));
    CHECK(doc["table"] == "metrics_competitors");
    CHECK(doc["provenance"]["seed"] == 0);
    CHECK(doc["provenance"]["config"].get<std::string>().size() == 16);
    REQUIRE(doc["columns"].size() == 12);
    CHECK(doc["columns"][1] == "sr");
    REQUIRE(doc["rows"].size() == 2);

    // Input order: norm then zed. The flat series has no SR (index 1).
    const auto& norm = doc["rows"][0];
    const auto& zed = doc["rows"][1];
    CHECK(norm[0] == "norm");
    CHECK(zed[0] == "zed");
    CHECK(zed[1].is_null());
    CHECK(!norm[1].is_null());

    // Numbers agree with the CSV rendering after the 6-digit round trip.
    const MetricsReport rep =
        metrics_report(data.competitors[0], cfg.initial_capital, cfg.annualization);
    CHECK(norm[2].get<double>() ==
          std::strtod(format_number(rep.mdd).c_str(), nullptr));
}

TEST_CASE("command line: exit codes") {
    const auto out = fresh_dir("cli_codes");
    const std::string out_flag = " --out-dir " + (out / "x").string();

    // Help is not an error.
    CHECK(run_cli("--help") == 0);
    // A missing command or unknown command is an input error.
    CHECK(run_cli("") == 2);
    CHECK(run_cli("teleport" + fixture_inputs() + out_flag) == 2);
    // Unreadable input file.
    CHECK(run_cli("metrics --competitors /nonexistent.csv" + out_flag) == 2);
    // No input series at all.
    CHECK(run_cli("metrics" + out_flag) == 2);
    // Bad settings value.
    CHECK(run_cli("metrics" + fixture_inputs() + out_flag + " --sd-mode sideways") == 2);

    // Dataset too small for the command: five competitors, default k = 10.
    CHECK(run_cli("fof --competitors " + kData + "/competitors.csv" + out_flag) == 3);
    // Alpha with no factor panel.
    CHECK(run_cli("alpha --competitors " + kData + "/competitors.csv" + out_flag) == 3);
    // Simulate with no universe.
    CHECK(run_cli("simulate --competitors " + kData + "/competitors.csv" + out_flag) == 3);

    // A flat universe is degenerate, not merely invalid.
    const auto flat = qbtest::write_temp("flat_universe.csv",
                                         "date,u1,u2,u3\n"
                                         "2022-03-07,0,0,0\n"
                                         "2022-03-08,0,0,0\n"
                                         "2022-03-09,0,0,0\n"
                                         "2022-03-10,0,0,0\n"
                                         "2022-03-11,0,0,0\n");
    CHECK(run_cli("simulate --universe " + flat.string() +
                  " --rebalance-dates 2022-03-07 --k 2 --sims 4" + out_flag) == 4);
}

TEST_CASE("command line: flags override the config file") {
    const auto out_a = fresh_dir("cli_flags_a");
    const auto out_b = fresh_dir("cli_flags_b");

    REQUIRE(run_cli("metrics" + fixture_inputs() + " --out-dir " + out_a.string()) == 0);
    REQUIRE(run_cli("metrics" + fixture_inputs() + " --n-star 238 --out-dir " +
                    out_b.string()) == 0);

    const std::string a = qbtest::read_file(out_a / "metrics_competitors.csv");
    const std::string b = qbtest::read_file(out_b / "metrics_competitors.csv");
    CHECK(a != b);
    // The provenance hash moves with the override.
    CHECK(a.substr(0, a.find('\n')) != b.substr(0, b.find('\n')));
}

TEST_CASE("command line: reports every file it wrote") {
    const auto out = fresh_dir("cli_wrote");
    const fs::path log = qbtest::temp_dir() / "cli_wrote.log";
    const std::string cmd = kCli + " metrics" + fixture_inputs() + " --out-dir " +
                            out.string() + " > " + log.string() + " 2>/dev/null";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);

    const std::string text = qbtest::read_file(log);
    for (const char* name :
         {"metrics_benchmarks.csv", "metrics_competitors.csv", "metrics_summary.csv"}) {
        CHECK(text.find("wrote ") != std::string::npos);
        CHECK(text.find(name) != std::string::npos);
        CHECK(fs::exists(out / name));
    }
}

TEST_CASE("golden outputs: metrics") {
    const auto out = fresh_dir("golden_metrics");
    REQUIRE(run_cli("metrics" + fixture_inputs() + " --out-dir " + out.string()) == 0);
    compare_dirs(fs::path(kGolden) / "metrics", out);
}

TEST_CASE("golden outputs: navs") {
    const auto out = fresh_dir("golden_navs");
    REQUIRE(run_cli("navs" + fixture_inputs() + " --out-dir " + out.string()) == 0);
    compare_dirs(fs::path(kGolden) / "navs", out);
}

TEST_CASE("golden outputs: fees") {
    const auto out = fresh_dir("golden_fees");
    REQUIRE(run_cli("fees" + fixture_inputs() + " --mgmt 0.01 --perf 0.1 --out-dir " +
                    out.string()) == 0);
    compare_dirs(fs::path(kGolden) / "fees", out);
}

TEST_CASE("golden outputs: alpha") {
    const auto out = fresh_dir("golden_alpha");
    REQUIRE(run_cli("alpha" + fixture_inputs() + " --out-dir " + out.string()) == 0);
    compare_dirs(fs::path(kGolden) / "alpha", out);
}

TEST_CASE("golden outputs: simulate") {
    const auto out = fresh_dir("golden_simulate");
    REQUIRE(run_cli("simulate" + fixture_inputs() + " --out-dir " + out.string()) == 0);
    compare_dirs(fs::path(kGolden) / "simulate", out);
}

TEST_CASE("golden outputs: fof") {
    const auto out = fresh_dir("golden_fof");
    REQUIRE(run_cli("fof" + fixture_inputs() + " --out-dir " + out.string()) == 0);
    compare_dirs(fs::path(kGolden) / "fof", out);
}

TEST_CASE("repeated runs are byte-identical") {
    const auto out_a = fresh_dir("repeat_a");
    const auto out_b = fresh_dir("repeat_b");
    REQUIRE(run_cli("simulate" + fixture_inputs() + " --out-dir " + out_a.string()) == 0);
    REQUIRE(run_cli("simulate" + fixture_inputs() + " --out-dir " + out_b.string()) == 0);
    compare_dirs(out_a, out_b);
}
