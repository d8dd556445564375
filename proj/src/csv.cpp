#include "quantbench/csv.hpp"

#include "quantbench/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

namespace quantbench {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        // Trim surrounding whitespace; the format is plain (no quoting).
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col,
                  const std::string& file) {
    double v = 0.0;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end || cell.empty()) {
        throw InputError(file + ": non-numeric cell '" + cell + "' at row " +
                         std::to_string(row) + ", column " + std::to_string(col));
    }
    return v;
}

} // namespace

std::vector<ReturnSeries> ingest_csv(const std::filesystem::path& path, SeriesKind kind) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    const std::string file = path.filename().string();

    std::string line;
    if (!std::getline(in, line)) throw InputError(file + ": empty file");
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "date") {
        throw InputError(file + ": header must start with 'date' and name at least one series");
    }
    const std::size_t n_cols = header.size() - 1;

    std::vector<Date> dates;
    std::vector<std::vector<double>> columns(n_cols);
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw InputError(file + ": row " + std::to_string(row) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(header.size()));
        }
        Date d;
        try {
            d = Date::parse(cells[0]);
        } catch (const InputError& e) {
            throw InputError(file + ": row " + std::to_string(row) + ": " + e.what());
        }
        if (!dates.empty() && d == dates.back()) {
            throw InputError(file + ": duplicate date " + d.to_string() + " at row " +
                             std::to_string(row));
        }
        if (!dates.empty() && d < dates.back()) {
            throw InputError(file + ": date " + d.to_string() + " out of order at row " +
                             std::to_string(row));
        }
        dates.push_back(d);
        for (std::size_t c = 0; c < n_cols; ++c) {
            columns[c].push_back(parse_cell(cells[c + 1], row, c + 2, file));
        }
    }
    if (dates.empty()) throw InputError(file + ": no data rows");

    TradingCalendar calendar(std::move(dates));
    std::vector<ReturnSeries> out;
    out.reserve(n_cols);
    for (std::size_t c = 0; c < n_cols; ++c) {
        const std::string& name = header[c + 1];
        if (name.empty()) {
            throw InputError(file + ": unnamed series in header column " + std::to_string(c + 2));
        }
        try {
            if (kind == SeriesKind::returns) {
                out.emplace_back(name, calendar, std::move(columns[c]));
            } else {
                out.push_back(returns_from_prices(name, calendar, columns[c]));
            }
        } catch (const InputError& e) {
            throw InputError(file + ": " + e.what());
        }
    }
    return out;
}

} // namespace quantbench
