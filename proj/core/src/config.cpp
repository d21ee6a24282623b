#include "simbias/config.hpp"

#include <fmt/format.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "simbias/digest.hpp"
#include "simbias/error.hpp"

namespace simbias::config {

namespace pt = boost::property_tree;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        out.push_back(first == std::string::npos ? std::string{} : item.substr(first, last - first + 1));
    }
    return out;
}

// Reads one section, recording errors against "<section>.<key>" paths and
// flagging keys nobody asked for.
class SectionReader {
public:
    SectionReader(const pt::ptree* tree, std::string section, std::vector<FieldError>& errors)
        : tree_(tree), section_(std::move(section)), errors_(errors) {}

    std::optional<std::string> raw(const std::string& key) {
        used_.insert(key);
        if (tree_ == nullptr) return std::nullopt;
        const auto child = tree_->get_child_optional(key);
        if (!child) return std::nullopt;
        return child->data();
    }

    void error(const std::string& key, std::string message) {
        errors_.push_back({section_ + "." + key, std::move(message)});
    }

    template <class Int>
    void integer(const std::string& key, Int& out, Int min_value) {
        const auto text = raw(key);
        if (!text) {
            check_min(key, out, min_value);
            return;
        }
        std::uint64_t v = 0;
        const auto* end = text->data() + text->size();
        auto [ptr, ec] = std::from_chars(text->data(), end, v);
        if (ec != std::errc{} || ptr != end || text->empty()) {
            error(key, "expected a non-negative integer, got \"" + *text + "\"");
            return;
        }
        if (v > std::numeric_limits<Int>::max()) {
            error(key, "value out of range: " + *text);
            return;
        }
        out = static_cast<Int>(v);
        check_min(key, out, min_value);
    }

    std::optional<double> number(const std::string& key) {
        const auto text = raw(key);
        if (!text) return std::nullopt;
        return parse_number(key, *text);
    }

    std::optional<double> parse_number(const std::string& key, const std::string& text) {
        double v = 0.0;
        const auto* end = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(text.data(), end, v);
        if (ec != std::errc{} || ptr != end || text.empty() || !std::isfinite(v)) {
            error(key, "expected a number, got \"" + text + "\"");
            return std::nullopt;
        }
        return v;
    }

    void finish() {
        if (tree_ == nullptr) return;
        for (const auto& [key, value] : *tree_) {
            if (!used_.contains(key)) error(key, "unknown key");
        }
    }

private:
    template <class Int>
    void check_min(const std::string& key, Int value, Int min_value) {
        if (value < min_value) error(key, fmt::format("must be >= {}, got {}", min_value, value));
    }

    const pt::ptree* tree_;
    std::string section_;
    std::vector<FieldError>& errors_;
    std::set<std::string> used_;
};

const pt::ptree* section(const pt::ptree& root, const std::string& name) {
    const auto child = root.get_child_optional(name);
    return child ? &*child : nullptr;
}

MapConfig read_map(const pt::ptree& root, std::vector<FieldError>& errors) {
    SectionReader r(section(root, "map"), "map", errors);
    const auto type = r.raw("type");
    MapConfig out = FstConfig{};
    if (!type) {
        r.error("type", "missing map type (fst, polynomial, rna, bernoulli, timeseries)");
    } else if (*type == "fst") {
        FstConfig c;
        r.integer("states", c.states, std::size_t{1});
        r.integer("input_length", c.input_length, std::size_t{1});
        r.integer("fst_seed", c.fst_seed, std::uint64_t{0});
        out = c;
    } else if (*type == "polynomial") {
        maps::PolynomialSpec c;
        r.integer("degree", c.degree, std::size_t{1});
        r.integer("grid_points", c.grid_points, std::size_t{2});
        if (auto v = r.number("coefficient_std")) {
            if (*v > 0.0) {
                c.coefficient_std = *v;
            } else {
                r.error("coefficient_std", "must be > 0");
            }
        }
        out = c;
    } else if (*type == "rna") {
        maps::RnaSpec c;
        r.integer("seq_length", c.seq_length, std::size_t{1});
        r.integer("min_loop", c.min_loop, std::size_t{0});
        out = c;
    } else if (*type == "bernoulli") {
        maps::BernoulliSpec c;
        r.integer("n", c.n, std::size_t{1});
        if (auto v = r.number("p")) {
            if (*v > 0.0 && *v < 1.0) {
                c.p = *v;
            } else {
                r.error("p", fmt::format("must lie in (0, 1), got {}", *v));
            }
        }
        out = c;
    } else if (*type == "timeseries") {
        TimeSeriesConfig c;
        if (auto f = r.raw("file"); f && !f->empty()) {
            c.file = *f;
        } else {
            r.error("file", "missing time-series CSV path");
        }
        r.integer("window_length", c.window_length, std::size_t{2});
        c.stride = c.window_length;
        r.integer("stride", c.stride, std::size_t{1});
        if (auto d = r.raw("delimiter")) {
            if (*d == "tab") {
                c.delimiter = '\t';
            } else if (d->size() == 1) {
                c.delimiter = d->front();
            } else {
                r.error("delimiter", "must be a single character or 'tab'");
            }
        }
        if (auto h = r.raw("skip_header")) {
            if (*h == "true") {
                c.skip_header = true;
            } else if (*h != "false") {
                r.error("skip_header", "must be true or false");
            }
        }
        out = c;
    } else {
        r.error("type", "unknown map type \"" + *type + "\"");
        return out;  // keys of an unknown map type are not meaningful
    }
    r.finish();
    return out;
}

SamplingConfig read_sampling(const pt::ptree& root, std::vector<FieldError>& errors) {
    SectionReader r(section(root, "sampling"), "sampling", errors);
    SamplingConfig c;
    if (auto m = r.raw("mode")) {
        if (*m == "sample") {
            c.mode = SamplingMode::sample;
        } else if (*m == "enumerate") {
            c.mode = SamplingMode::enumerate;
        } else {
            r.error("mode", "must be 'sample' or 'enumerate'");
        }
    }
    r.integer("n_samples", c.n_samples, std::uint64_t{1});
    r.integer("master_seed", c.master_seed, std::uint64_t{0});
    r.integer("n_shards", c.n_shards, std::uint32_t{1});
    r.integer("budget", c.budget, std::uint64_t{1});
    r.finish();
    return c;
}

AnalysisConfig read_analysis(const pt::ptree& root, std::vector<FieldError>& errors) {
    SectionReader r(section(root, "analysis"), "analysis", errors);
    AnalysisConfig c;
    if (auto v = r.raw("fit_mode")) {
        if (*v == "apriori" || *v == "envelope") {
            c.fit_mode = analysis::parse_fit_mode(*v);
        } else {
            r.error("fit_mode", "must be 'apriori' or 'envelope'");
        }
    }
    if (auto v = r.raw("pair_modes")) {
        c.pair_modes.clear();
        if (*v != "none") {
            for (const auto& item : split_list(*v)) {
                if (item == "weighted" || item == "uniform") {
                    c.pair_modes.push_back(analysis::parse_pair_mode(item));
                } else {
                    r.error("pair_modes", "unknown pair mode \"" + item + "\"");
                }
            }
        }
    }
    r.integer("n_pairs", c.n_pairs, std::uint64_t{1});
    r.integer("pair_seed", c.pair_seed, std::uint64_t{0});
    if (auto v = r.raw("correlation_stats")) {
        c.correlation_stats.clear();
        if (*v != "none") {
            for (const auto& item : split_list(*v)) {
                if (item == "changes" || item == "ones") {
                    c.correlation_stats.push_back(analysis::parse_statistic(item));
                } else {
                    r.error("correlation_stats", "unknown statistic \"" + item + "\"");
                }
            }
        }
    }
    if (auto v = r.raw("correlation_k"); v && *v != "auto") {
        if (auto k = r.parse_number("correlation_k", *v)) {
            if (*k >= 0.0) {
                c.correlation_k = *k;
            } else {
                r.error("correlation_k", "must be 'auto' or a non-negative complexity");
            }
        }
    }
    if (auto v = r.raw("deltas"); v && *v != "auto") {
        std::vector<double> grid;
        for (const auto& item : split_list(*v)) {
            if (auto d = r.parse_number("deltas", item)) {
                if (*d >= 0.0) {
                    grid.push_back(*d);
                } else {
                    r.error("deltas", "deficit grid values must be non-negative");
                }
            }
        }
        if (grid.empty()) r.error("deltas", "empty deficit grid");
        c.deltas = grid;
    }
    if (auto v = r.number("lklp_delta")) {
        if (*v > 0.0) {
            c.lklp_delta = *v;
        } else {
            r.error("lklp_delta", "must be > 0");
        }
    }
    if (auto v = r.number("lklp_quantile")) {
        if (*v > 0.0 && *v <= 1.0) {
            c.lklp_quantile = *v;
        } else {
            r.error("lklp_quantile", "must lie in (0, 1]");
        }
    }
    r.finish();
    return c;
}

OutputConfig read_output(const pt::ptree& root, std::vector<FieldError>& errors) {
    SectionReader r(section(root, "output"), "output", errors);
    OutputConfig c;
    if (auto v = r.raw("directory")) {
        if (v->empty()) {
            r.error("directory", "must not be empty");
        } else {
            c.directory = *v;
        }
    }
    if (auto v = r.raw("formats")) {
        c.csv = c.json = false;
        for (const auto& item : split_list(*v)) {
            if (item == "csv") {
                c.csv = true;
            } else if (item == "json") {
                c.json = true;
            } else {
                r.error("formats", "unknown format \"" + item + "\" (csv, json)");
            }
        }
    }
    r.finish();
    return c;
}

std::string join(const auto& items, auto&& name) {
    std::string out;
    for (const auto& item : items) {
        if (!out.empty()) out += ',';
        out += name(item);
    }
    return out.empty() ? "none" : out;
}

}  // namespace

ParseResult parse_config(const std::string& text) {
    ParseResult result;
    pt::ptree root;
    try {
        std::istringstream in(text);
        pt::ini_parser::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        result.errors.push_back({"<file>", fmt::format("line {}: {}", e.line(), e.message())});
        return result;
    }
    for (const auto& [name, child] : root) {
        if (name != "map" && name != "sampling" && name != "analysis" && name != "output") {
            result.errors.push_back({name, child.empty() ? "key outside any section" : "unknown section"});
        }
    }

    ExperimentConfig c;
    c.map = read_map(root, result.errors);
    c.sampling = read_sampling(root, result.errors);
    c.analysis = read_analysis(root, result.errors);
    c.output = read_output(root, result.errors);

    if (c.sampling.mode == SamplingMode::enumerate && std::holds_alternative<maps::PolynomialSpec>(c.map)) {
        result.errors.push_back({"sampling.mode", "the polynomial map has a real-valued input space and cannot be "
                                                  "enumerated"});
    }
    if (result.errors.empty()) result.config = std::move(c);
    return result;
}

ParseResult load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cli", "cannot read config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    auto result = parse_config(buffer.str());
    if (result.config) {
        result.config->base_dir = std::filesystem::path(path).parent_path().string();
    }
    return result;
}

std::vector<FieldError> validate_config(const std::string& path) {
    auto result = load_config(path);
    if (result.config) {
        if (const auto* ts = std::get_if<TimeSeriesConfig>(&result.config->map)) {
            const auto file = std::filesystem::path(result.config->base_dir) / ts->file;
            if (!std::filesystem::is_regular_file(file)) {
                result.errors.push_back({"map.file", "no such file: " + file.string()});
            }
        }
    }
    return result.errors;
}

std::string serialize_config(const ExperimentConfig& config) {
    std::string out = "[map]\n";
    out += std::visit(
        overloaded{
            [](const FstConfig& c) {
                return fmt::format("type = fst\nstates = {}\ninput_length = {}\nfst_seed = {}\n", c.states,
                                   c.input_length, c.fst_seed);
            },
            [](const maps::PolynomialSpec& c) {
                return fmt::format("type = polynomial\ndegree = {}\ncoefficient_std = {}\ngrid_points = {}\n",
                                   c.degree, c.coefficient_std, c.grid_points);
            },
            [](const maps::RnaSpec& c) {
                return fmt::format("type = rna\nseq_length = {}\nmin_loop = {}\n", c.seq_length, c.min_loop);
            },
            [](const maps::BernoulliSpec& c) { return fmt::format("type = bernoulli\nn = {}\np = {}\n", c.n, c.p); },
            [](const TimeSeriesConfig& c) {
                return fmt::format(
                    "type = timeseries\nfile = {}\nwindow_length = {}\nstride = {}\ndelimiter = {}\nskip_header = {}\n",
                    c.file, c.window_length, c.stride, c.delimiter == '\t' ? std::string("tab") : std::string(1, c.delimiter),
                    c.skip_header ? "true" : "false");
            },
        },
        config.map);

    const auto& s = config.sampling;
    out += fmt::format("\n[sampling]\nmode = {}\nn_samples = {}\nmaster_seed = {}\nn_shards = {}\nbudget = {}\n",
                       s.mode == SamplingMode::sample ? "sample" : "enumerate", s.n_samples, s.master_seed,
                       s.n_shards, s.budget);

    const auto& a = config.analysis;
    out += "\n[analysis]\n";
    out += fmt::format("fit_mode = {}\n", analysis::to_string(a.fit_mode));
    out += fmt::format("pair_modes = {}\n", join(a.pair_modes, [](auto m) { return analysis::to_string(m); }));
    out += fmt::format("n_pairs = {}\npair_seed = {}\n", a.n_pairs, a.pair_seed);
    out += fmt::format("correlation_stats = {}\n",
                       join(a.correlation_stats, [](auto m) { return analysis::to_string(m); }));
    out += fmt::format("correlation_k = {}\n", a.correlation_k ? fmt::format("{}", *a.correlation_k) : "auto");
    out += fmt::format("deltas = {}\n",
                       a.deltas ? join(*a.deltas, [](double d) { return fmt::format("{}", d); }) : "auto");
    out += fmt::format("lklp_delta = {}\nlklp_quantile = {}\n", a.lklp_delta, a.lklp_quantile);

    const auto& o = config.output;
    std::vector<std::string> formats;
    if (o.csv) formats.emplace_back("csv");
    if (o.json) formats.emplace_back("json");
    out += fmt::format("\n[output]\ndirectory = {}\nformats = {}\n", o.directory,
                       join(formats, [](const std::string& f) { return f; }));
    return out;
}

// Shard count changes only how work is split, never the results, so it is
// left out of the digest: sharded and unsharded runs carry the same tag.
std::string config_digest(const ExperimentConfig& config) {
    ExperimentConfig canonical = config;
    canonical.sampling.n_shards = 1;
    return short_digest(serialize_config(canonical));
}

maps::InputOutputMap build_map(const ExperimentConfig& config) {
    return maps::InputOutputMap(std::visit(
        overloaded{
            [](const FstConfig& c) -> maps::MapSpec { return maps::fst_random(c.states, c.input_length, c.fst_seed); },
            [](const maps::PolynomialSpec& c) -> maps::MapSpec { return c; },
            [](const maps::RnaSpec& c) -> maps::MapSpec { return c; },
            [](const maps::BernoulliSpec& c) -> maps::MapSpec { return c; },
            [&](const TimeSeriesConfig& c) -> maps::MapSpec {
                maps::TimeSeriesSource src;
                src.path = (std::filesystem::path(config.base_dir) / c.file).string();
                src.window.window_length = c.window_length;
                src.window.stride = c.stride;
                src.ingest.delimiter = c.delimiter;
                src.ingest.skip_header = c.skip_header;
                return src;
            },
        },
        config.map));
}

std::string format_errors(const std::vector<FieldError>& errors) {
    std::string out;
    for (const auto& e : errors) out += "error: " + e.path + ": " + e.message + "\n";
    return out;
}

}  // namespace simbias::config
