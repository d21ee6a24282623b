#include "simbias/distribution.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "simbias/error.hpp"

namespace simbias::sampling {

std::string to_string(Mode mode) { return mode == Mode::sampled ? "sampled" : "enumerated"; }

Mode parse_mode(const std::string& text) {
    if (text == "sampled") return Mode::sampled;
    if (text == "enumerated") return Mode::enumerated;
    throw InvalidArgument("sampling", "unknown distribution mode: " + text);
}

OutputDistribution::OutputDistribution(Provenance provenance, Counts counts, double total)
    : provenance_(std::move(provenance)), counts_(std::move(counts)), total_(total) {
    double sum = 0.0;
    for (const auto& [x, c] : counts_) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw InvalidArgument("sampling", "count for " + x.str() + " must be positive");
        }
        sum += c;
    }
    if (counts_.empty() ? total_ != 0.0 : std::abs(sum - total_) > 1e-9 * total_) {
        throw InvalidArgument("sampling", fmt::format("counts sum to {} but total is {}", sum, total_));
    }
}

OutputDistribution OutputDistribution::empty(std::string map_digest, std::uint64_t master_seed) {
    Provenance prov;
    prov.map_digest = std::move(map_digest);
    prov.master_seed = master_seed;
    return {std::move(prov), {}, 0.0};
}

double OutputDistribution::probability(const BitString& x) const {
    const auto it = counts_.find(x);
    return it == counts_.end() ? 0.0 : it->second / total_;
}

OutputDistribution OutputDistribution::with_config_digest(std::string digest) const {
    OutputDistribution copy = *this;
    copy.provenance_.config_digest = std::move(digest);
    return copy;
}

std::string format_count(double value) {
    if (value == std::floor(value) && value >= 0.0 && value < 9007199254740992.0) {
        return fmt::format("{}", static_cast<std::uint64_t>(value));
    }
    return fmt::format("{:.17g}", value);
}

void write_distribution(std::ostream& out, const OutputDistribution& dist) {
    const auto& prov = dist.provenance();
    out << "# map=" << prov.map_digest << " seed=" << prov.master_seed << " mode=" << to_string(prov.mode)
        << " total=" << format_count(dist.total()) << '\n';
    if (prov.mode == Mode::sampled) {
        out << "# range=";
        for (std::size_t i = 0; i < prov.ranges.size(); ++i) {
            if (i) out << ',';
            out << prov.ranges[i].begin << ':' << prov.ranges[i].end;
        }
        out << '\n';
    }
    if (!prov.config_digest.empty()) out << "# config=" << prov.config_digest << '\n';
    for (const auto& [x, c] : dist.counts()) out << x.str() << ',' << format_count(c) << '\n';
}

namespace {

[[noreturn]] void bad_line(std::size_t line_no, const std::string& why) {
    throw InvalidArgument("sampling", fmt::format("distribution file line {}: {}", line_no, why));
}

double parse_number(std::string_view text, std::size_t line_no) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) bad_line(line_no, "bad number \"" + std::string(text) + "\"");
    return v;
}

std::uint64_t parse_u64(std::string_view text, std::size_t line_no) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) bad_line(line_no, "bad integer \"" + std::string(text) + "\"");
    return v;
}

}  // namespace

OutputDistribution read_distribution(std::istream& in) {
    Provenance prov;
    OutputDistribution::Counts counts;
    double total = -1.0;
    bool have_header = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::istringstream fields(line.substr(1));
            std::string field;
            while (fields >> field) {
                const auto eq = field.find('=');
                if (eq == std::string::npos) bad_line(line_no, "malformed header field \"" + field + "\"");
                const auto key = field.substr(0, eq);
                const auto value = std::string_view(field).substr(eq + 1);
                if (key == "map") {
                    prov.map_digest = std::string(value);
                    have_header = true;
                } else if (key == "seed") {
                    prov.master_seed = parse_u64(value, line_no);
                } else if (key == "mode") {
                    prov.mode = parse_mode(std::string(value));
                } else if (key == "total") {
                    total = parse_number(value, line_no);
                } else if (key == "config") {
                    prov.config_digest = std::string(value);
                } else if (key == "range") {
                    std::string_view rest = value;
                    while (!rest.empty()) {
                        const auto comma = rest.find(',');
                        const auto part = rest.substr(0, comma);
                        const auto colon = part.find(':');
                        if (colon == std::string_view::npos) bad_line(line_no, "malformed range");
                        prov.ranges.push_back({parse_u64(part.substr(0, colon), line_no),
                                               parse_u64(part.substr(colon + 1), line_no)});
                        if (comma == std::string_view::npos) break;
                        rest.remove_prefix(comma + 1);
                    }
                }
            }
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) bad_line(line_no, "expected <bitstring>,<count>");
        try {
            BitString x(line.substr(0, comma));
            const double c = parse_number(std::string_view(line).substr(comma + 1), line_no);
            if (!counts.emplace(std::move(x), c).second) bad_line(line_no, "duplicate output");
        } catch (const InvalidArgument& e) {
            bad_line(line_no, e.what());
        }
    }
    if (!have_header || total < 0.0) throw InvalidArgument("sampling", "distribution file is missing its header");
    return {std::move(prov), std::move(counts), total};
}

void save_distribution(const std::string& path, const OutputDistribution& dist) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("sampling", "cannot write " + path);
    write_distribution(out, dist);
    if (!out) throw Error("sampling", "write failed: " + path);
}

OutputDistribution load_distribution(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("sampling", "cannot read " + path);
    return read_distribution(in);
}

}  // namespace simbias::sampling
