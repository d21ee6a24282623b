#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "simbias/config.hpp"
#include "simbias/error.hpp"

namespace {

using namespace simbias;
using namespace simbias::config;

bool has_error(const ParseResult& r, const std::string& path) {
    return std::any_of(r.errors.begin(), r.errors.end(), [&](const FieldError& e) { return e.path == path; });
}

TEST(ParseConfig, MinimalFst) {
    const auto r = parse_config("[map]\ntype = fst\n");
    ASSERT_TRUE(r.ok()) << format_errors(r.errors);
    EXPECT_EQ(std::get<FstConfig>(r.config->map), FstConfig{});
    EXPECT_EQ(r.config->sampling, SamplingConfig{});
}

TEST(ParseConfig, AllFieldsRoundTrip) {
    const std::string text =
        "[map]\ntype = rna\nseq_length = 20\nmin_loop = 4\n"
        "[sampling]\nmode = sample\nn_samples = 5000\nmaster_seed = 3\nn_shards = 4\n"
        "[analysis]\nfit_mode = apriori\npair_modes = uniform\nn_pairs = 100\npair_seed = 9\n"
        "correlation_stats = ones\ncorrelation_k = 12.5\ndeltas = 0, 1, 2.5\nlklp_delta = 3\nlklp_quantile = 0.25\n"
        "[output]\ndirectory = here\nformats = csv\n";
    const auto r = parse_config(text);
    ASSERT_TRUE(r.ok()) << format_errors(r.errors);
    const auto& c = *r.config;
    EXPECT_EQ(std::get<maps::RnaSpec>(c.map), (maps::RnaSpec{20, 4}));
    EXPECT_EQ(c.sampling.n_shards, 4u);
    EXPECT_EQ(c.analysis.fit_mode, analysis::FitMode::apriori);
    EXPECT_EQ(c.analysis.correlation_k, 12.5);
    EXPECT_EQ(c.analysis.deltas, (std::vector<double>{0, 1, 2.5}));
    EXPECT_FALSE(c.output.json);
    const auto again = parse_config(serialize_config(c));
    ASSERT_TRUE(again.ok()) << format_errors(again.errors);
    EXPECT_EQ(*again.config, c);
}

TEST(ParseConfig, RoundTripEveryMapType) {
    for (const char* text : {"[map]\ntype = fst\nstates = 3\ninput_length = 12\nfst_seed = 8\n",
                             "[map]\ntype = polynomial\ndegree = 6\ncoefficient_std = 2.5\ngrid_points = 9\n",
                             "[map]\ntype = bernoulli\nn = 10\np = 0.125\n[sampling]\nmode = enumerate\n",
                             "[map]\ntype = timeseries\nfile = x.csv\nwindow_length = 8\nstride = 4\ndelimiter = tab\n"
                             "skip_header = true\n"}) {
        const auto r = parse_config(text);
        ASSERT_TRUE(r.ok()) << text << format_errors(r.errors);
        const auto again = parse_config(serialize_config(*r.config));
        ASSERT_TRUE(again.ok()) << serialize_config(*r.config);
        EXPECT_EQ(*again.config, *r.config);
    }
}

TEST(ParseConfig, ReportsEveryErrorWithItsPath) {
    const auto r = parse_config("[map]\ntype = bernoulli\np = 1.5\n[sampling]\nn_shards = 0\n");
    EXPECT_FALSE(r.ok());
    EXPECT_TRUE(has_error(r, "map.p"));
    EXPECT_TRUE(has_error(r, "sampling.n_shards"));
}

TEST(ParseConfig, UnknownMapTypeAndKeys) {
    EXPECT_TRUE(has_error(parse_config("[map]\ntype = cellular_automaton\n"), "map.type"));
    EXPECT_TRUE(has_error(parse_config("[map]\n"), "map.type"));
    EXPECT_TRUE(has_error(parse_config("[map]\ntype = fst\nstatez = 4\n"), "map.statez"));
    EXPECT_TRUE(has_error(parse_config("[map]\ntype = fst\n[extra]\na = 1\n"), "extra"));
    EXPECT_TRUE(has_error(parse_config("[map]\ntype = fst\nstates = five\n"), "map.states"));
}

TEST(ParseConfig, PolynomialCannotBeEnumerated) {
    EXPECT_TRUE(has_error(parse_config("[map]\ntype = polynomial\n[sampling]\nmode = enumerate\n"), "sampling.mode"));
}

TEST(ParseConfig, AnalysisValidation) {
    EXPECT_TRUE(has_error(parse_config("[map]\ntype = fst\n[analysis]\nlklp_quantile = 0\n"), "analysis.lklp_quantile"));
    EXPECT_TRUE(has_error(parse_config("[map]\ntype = fst\n[analysis]\npair_modes = both\n"), "analysis.pair_modes"));
    EXPECT_TRUE(has_error(parse_config("[map]\ntype = fst\n[analysis]\nn_pairs = 0\n"), "analysis.n_pairs"));
    EXPECT_TRUE(has_error(parse_config("[map]\ntype = fst\n[analysis]\ndeltas = 1, -2\n"), "analysis.deltas"));
}

TEST(ConfigDigest, IgnoresShardCountOnly) {
    auto a = *parse_config("[map]\ntype = fst\n[sampling]\nn_shards = 1\n").config;
    auto b = *parse_config("[map]\ntype = fst\n[sampling]\nn_shards = 8\n").config;
    auto c = *parse_config("[map]\ntype = fst\n[sampling]\nmaster_seed = 2\n").config;
    EXPECT_EQ(config_digest(a), config_digest(b));
    EXPECT_NE(config_digest(a), config_digest(c));
}

TEST(ValidateConfig, Files) {
    const std::string dir = SIMBIAS_SOURCE_DIR;
    EXPECT_TRUE(validate_config(dir + "/configs/bernoulli_uniform.ini").empty());
    EXPECT_TRUE(validate_config(dir + "/configs/fst5.ini").empty());
    const auto errs = validate_config(dir + "/tests/data/bad_p.ini");
    EXPECT_EQ(errs.size(), 2u);
    EXPECT_THROW(validate_config(dir + "/tests/data/missing.ini"), Error);
}

TEST(ValidateConfig, MissingTimeSeriesFile) {
    const auto path = std::filesystem::temp_directory_path() / "simbias_ts_missing.ini";
    {
        std::ofstream out(path);
        out << "[map]\ntype = timeseries\nfile = does_not_exist.csv\n";
    }
    const auto errs = validate_config(path.string());
    ASSERT_EQ(errs.size(), 1u);
    EXPECT_EQ(errs[0].path, "map.file");
    std::filesystem::remove(path);
}

TEST(FormatErrors, OneLinePerError) {
    EXPECT_EQ(format_errors({{"map.p", "must be in [0, 1]"}, {"sampling.n_shards", "must be >= 1"}}),
              "error: map.p: must be in [0, 1]\nerror: sampling.n_shards: must be >= 1\n");
}

}  // namespace
