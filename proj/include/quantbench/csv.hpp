#pragma once

#include "quantbench/series.hpp"

#include <filesystem>
#include <vector>

namespace quantbench {

enum class SeriesKind { returns, prices };

// Reads a CSV with a leading ISO-8601 "date" column and one numeric column
// per series. Returns are decimal fractions; prices are converted through
// returns_from_prices (dropping the first date). Rejections carry the
// offending row/column coordinates.
std::vector<ReturnSeries> ingest_csv(const std::filesystem::path& path, SeriesKind kind);

} // namespace quantbench
