#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsbreak/model.hpp"
#include "tsbreak/series.hpp"

namespace tsbreak {

struct CsvOptions {
    char delimiter = ',';
    std::vector<std::string> na_values = {"", "NA"};
    // Header name of the time-index column, skipped on load. Empty disables
    // the skip.
    std::string time_column = "t";
    // Header names of the value columns to load; empty = every column except
    // the time column.
    std::vector<std::string> columns;
    // Collapse the selected columns into one series of row means over
    // non-missing cells (a row with no data stays missing).
    bool row_mean = false;
};

struct ImputationRecord {
    std::string series;
    int index = 0; // 1-based t
    double value = 0.0;
};

struct Dataset {
    std::vector<TimeSeries> series;
    std::string source_path;
    std::vector<ImputationRecord> imputation_log;
};

// Parses the CSV at path (one header row); each selected column becomes a
// TimeSeries whose mask marks cells that were empty or matched a configured
// sentinel. Row order defines t = 1..T. Unparsable cells and ragged rows
// raise FormatError with the row/column location.
Dataset load_csv(const std::string& path, const CsvOptions& options = {});

// Replaces every missing cell by the mean of that series' non-missing
// values and appends one log record per filled cell. A fully-missing series
// raises InsufficientDataError naming the series.
Dataset impute_temporal_average(Dataset dataset);

// Writes a "t,<label>" CSV that round-trips values bit-exactly.
void write_series_csv(const std::string& path, const TimeSeries& y);

// Tab-separated plot data: t, observed, trend, seasonal, residual. Values
// are printed with enough digits to re-parse to the fitted values exactly.
void write_plot_tsv(const std::string& path, const TimeSeries& y,
                    const DecompositionModel& model);

// FNV-1a 64-bit digest of a file's bytes, hex-encoded; used to reference
// inputs in run reports.
std::string fnv1a64_file(const std::string& path);

} // namespace tsbreak
