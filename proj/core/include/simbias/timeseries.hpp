#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "simbias/bitstring.hpp"

namespace simbias::maps {

struct TimeSeriesSpec {
    std::size_t window_length = 16;
    // Offset between consecutive windows cut from one series; defaults to
    // window_length (non-overlapping windows).
    std::size_t stride = 16;

    void validate() const;
};

struct Series {
    std::string id;
    std::vector<double> values;
};

struct InvalidRow {
    std::size_t row;  // zero-based among data rows (comments and blanks excluded)
    std::string message;
};

struct IngestResult {
    std::vector<Series> series;
    std::size_t too_short = 0;  // rows dropped for having fewer than window_length values
    std::vector<InvalidRow> invalid_rows;
};

struct IngestOptions {
    char delimiter = ',';
    bool skip_header = false;
    // Throw IngestionError on the first malformed row instead of collecting it.
    bool strict = false;
};

// CSV layout: one series per row, first column an identifier, remaining
// columns numeric or empty (missing, dropped). Lines starting with '#' and
// blank lines are ignored. Throws IngestionError (row -1) if unreadable.
IngestResult timeseries_ingest(const std::string& path, std::size_t window_length,
                               const IngestOptions& options = {});
IngestResult timeseries_ingest_text(const std::string& text, std::size_t window_length,
                                    const IngestOptions& options = {});

// Bit i is 1 iff series[i] > mean(series); ties go to 0.
BitString mean_discretize(const std::vector<double>& series, const TimeSeriesSpec& spec);

// Bit j is 1 iff values[j+1] > values[j]; ties go to 0.
BitString updown_discretize(const std::vector<double>& values);

}  // namespace simbias::maps
