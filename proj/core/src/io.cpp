#include "tsbreak/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tsbreak/errors.hpp"

namespace tsbreak {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream stream(line);
    while (std::getline(stream, cell, delimiter)) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == delimiter) {
        cells.emplace_back();
    }
    return cells;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return line;
}

bool is_na(const std::string& cell, const std::vector<std::string>& na_values) {
    return std::find(na_values.begin(), na_values.end(), cell) != na_values.end();
}

double parse_cell(const std::string& cell, int row, const std::string& column) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    errno = 0;
    const double value = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE) {
        throw FormatError("load_csv: unparsable cell '" + cell + "' at row " +
                          std::to_string(row) + ", column '" + column + "'");
    }
    return value;
}

// Shortest decimal digits that round-trip a double.
std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    double parsed = 0.0;
    for (int precision = 15; precision <= 16; ++precision) {
        char shorter[32];
        std::snprintf(shorter, sizeof(shorter), "%.*g", precision, v);
        std::sscanf(shorter, "%lf", &parsed);
        if (parsed == v) {
            return shorter;
        }
    }
    return buf;
}

} // namespace

Dataset load_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("load_csv: cannot open '" + path + "'");
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("load_csv: '" + path + "' is empty (header row required)");
    }
    const auto header = split_line(strip_cr(line), options.delimiter);

    std::vector<std::size_t> selected;
    if (options.columns.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (options.time_column.empty() || header[c] != options.time_column) {
                selected.push_back(c);
            }
        }
    } else {
        for (const auto& name : options.columns) {
            const auto it = std::find(header.begin(), header.end(), name);
            if (it == header.end()) {
                throw FormatError("load_csv: column '" + name + "' not found in '" +
                                  path + "'");
            }
            selected.push_back(static_cast<std::size_t>(it - header.begin()));
        }
    }
    if (selected.empty()) {
        throw FormatError("load_csv: no value columns selected in '" + path + "'");
    }

    std::vector<std::vector<double>> values(selected.size());
    std::vector<std::vector<bool>> masks(selected.size());
    int row = 1;
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty() && in.peek() == EOF) {
            break; // trailing newline
        }
        ++row;
        const auto cells = split_line(line, options.delimiter);
        if (cells.size() != header.size()) {
            throw FormatError("load_csv: row " + std::to_string(row) + " has " +
                              std::to_string(cells.size()) + " cells, header has " +
                              std::to_string(header.size()));
        }
        for (std::size_t s = 0; s < selected.size(); ++s) {
            const auto& cell = cells[selected[s]];
            if (is_na(cell, options.na_values)) {
                values[s].push_back(0.0);
                masks[s].push_back(true);
            } else {
                values[s].push_back(parse_cell(cell, row, header[selected[s]]));
                masks[s].push_back(false);
            }
        }
    }
    if (values.front().empty()) {
        throw FormatError("load_csv: '" + path + "' contains no data rows");
    }

    Dataset dataset;
    dataset.source_path = path;
    if (options.row_mean) {
        const std::size_t T = values.front().size();
        std::vector<double> mean(T, 0.0);
        std::vector<bool> mask(T, false);
        for (std::size_t t = 0; t < T; ++t) {
            double sum = 0.0;
            int count = 0;
            for (std::size_t s = 0; s < selected.size(); ++s) {
                if (!masks[s][t]) {
                    sum += values[s][t];
                    ++count;
                }
            }
            if (count == 0) {
                mask[t] = true;
            } else {
                mean[t] = sum / count;
            }
        }
        dataset.series.emplace_back(std::move(mean), std::move(mask), "mean");
    } else {
        for (std::size_t s = 0; s < selected.size(); ++s) {
            dataset.series.emplace_back(std::move(values[s]), std::move(masks[s]),
                                        header[selected[s]]);
        }
    }
    return dataset;
}

Dataset impute_temporal_average(Dataset dataset) {
    for (auto& series : dataset.series) {
        if (!series.has_missing()) {
            continue;
        }
        double sum = 0.0;
        int count = 0;
        for (int t = 1; t <= series.size(); ++t) {
            if (!series.is_missing(t)) {
                sum += series.at(t);
                ++count;
            }
        }
        if (count == 0) {
            throw InsufficientDataError("impute_temporal_average: series '" +
                                        series.label() + "' has no observed values");
        }
        const double mean = sum / count;
        std::vector<double> filled = series.values();
        for (int t = 1; t <= series.size(); ++t) {
            if (series.is_missing(t)) {
                filled[static_cast<std::size_t>(t - 1)] = mean;
                dataset.imputation_log.push_back({series.label(), t, mean});
            }
        }
        series = TimeSeries(std::move(filled), series.label());
    }
    return dataset;
}

void write_series_csv(const std::string& path, const TimeSeries& y) {
    std::ofstream out(path);
    if (!out) {
        throw FormatError("write_series_csv: cannot open '" + path + "' for writing");
    }
    const std::string label = y.label().empty() ? "y" : y.label();
    out << "t," << label << "\n";
    for (int t = 1; t <= y.size(); ++t) {
        out << t << ',';
        if (y.is_missing(t)) {
            out << "NA";
        } else {
            out << format_double(y.at(t));
        }
        out << '\n';
    }
}

void write_plot_tsv(const std::string& path, const TimeSeries& y,
                    const DecompositionModel& model) {
    if (y.size() != model.series_length()) {
        throw std::invalid_argument("write_plot_tsv: series/model length mismatch");
    }
    std::ofstream out(path);
    if (!out) {
        throw FormatError("write_plot_tsv: cannot open '" + path + "' for writing");
    }
    out << "t\tobserved\ttrend\tseasonal\tresidual\n";
    for (int t = 1; t <= y.size(); ++t) {
        out << t << '\t' << format_double(y.at(t)) << '\t'
            << format_double(model.trend_at(t)) << '\t'
            << format_double(model.seasonal_at(t)) << '\t'
            << format_double(model.residuals[static_cast<std::size_t>(t - 1)])
            << '\n';
    }
}

std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("fnv1a64_file: cannot open '" + path + "'");
    }
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buffer[4096];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001b3ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(hash));
    return hex;
}

} // namespace tsbreak
