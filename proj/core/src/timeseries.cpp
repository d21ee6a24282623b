#include "simbias/timeseries.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string_view>

#include "simbias/error.hpp"

namespace simbias::maps {

void TimeSeriesSpec::validate() const {
    if (window_length < 2) throw InvalidArgument("maps", "timeseries: window_length must be >= 2");
    if (stride < 1) throw InvalidArgument("maps", "timeseries: stride must be >= 1");
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view field, double& out) {
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

}  // namespace

IngestResult timeseries_ingest_text(const std::string& text, std::size_t window_length,
                                    const IngestOptions& options) {
    IngestResult result;
    std::istringstream in(text);
    std::string line;
    std::size_t row = 0;
    bool header_pending = options.skip_header;

    auto reject = [&](std::string message) {
        if (options.strict) {
            throw IngestionError("row " + std::to_string(row) + ": " + message, static_cast<long>(row));
        }
        result.invalid_rows.push_back({row, std::move(message)});
    };

    while (std::getline(in, line)) {
        const auto trimmed = trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        if (header_pending) {
            header_pending = false;
            continue;
        }

        Series series;
        bool ok = true;
        std::size_t column = 0;
        std::string_view rest = trimmed;
        for (;;) {
            const auto cut = rest.find(options.delimiter);
            const auto field = trim(rest.substr(0, cut));
            if (column == 0) {
                if (field.empty()) {
                    reject("missing series identifier");
                    ok = false;
                    break;
                }
                series.id = std::string(field);
            } else if (!field.empty()) {
                double value = 0.0;
                if (!parse_double(field, value)) {
                    reject("column " + std::to_string(column) + ": not a number: \"" + std::string(field) + "\"");
                    ok = false;
                    break;
                }
                series.values.push_back(value);
            }
            ++column;
            if (cut == std::string_view::npos) break;
            rest.remove_prefix(cut + 1);
        }

        if (ok) {
            if (series.values.size() < window_length) {
                ++result.too_short;
            } else {
                result.series.push_back(std::move(series));
            }
        }
        ++row;
    }
    return result;
}

IngestResult timeseries_ingest(const std::string& path, std::size_t window_length, const IngestOptions& options) {
    std::ifstream in(path);
    if (!in) throw IngestionError("cannot read time-series file: " + path, -1);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return timeseries_ingest_text(buffer.str(), window_length, options);
}

BitString mean_discretize(const std::vector<double>& series, const TimeSeriesSpec& spec) {
    if (series.size() != spec.window_length) {
        throw InvalidArgument("maps", "mean_discretize: expected " + std::to_string(spec.window_length) +
                                          " values, got " + std::to_string(series.size()));
    }
    // A constant series has no value above its mean; do not let rounding of
    // the sum decide that.
    if (std::adjacent_find(series.begin(), series.end(), std::not_equal_to<>{}) == series.end()) {
        return BitString::zeros(series.size());
    }
    const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(series.size());
    std::string bits;
    bits.reserve(series.size());
    for (double v : series) bits.push_back(v > mean ? '1' : '0');
    return BitString(std::move(bits));
}

BitString updown_discretize(const std::vector<double>& values) {
    if (values.size() < 2) throw InvalidArgument("maps", "updown_discretize: need at least 2 values");
    std::string bits;
    bits.reserve(values.size() - 1);
    for (std::size_t j = 0; j + 1 < values.size(); ++j) bits.push_back(values[j + 1] > values[j] ? '1' : '0');
    return BitString(std::move(bits));
}

}  // namespace simbias::maps
