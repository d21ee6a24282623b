#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "simbias/complexity.hpp"
#include "simbias/error.hpp"
#include "simbias/maps.hpp"
#include "simbias/rng.hpp"

namespace {

using namespace simbias;
using namespace simbias::maps;

TEST(Fst, IdentityTransducerCopiesInput) {
    FstSpec id;
    id.num_states = 1;
    id.transitions = {{FstTransition{0, false}, FstTransition{0, true}}};
    id.input_length = 6;
    EXPECT_EQ(fst_apply(id, BitString("011010")).str(), "011010");
}

TEST(Fst, ParityTransducer) {
    // Outputs the running parity of the input.
    FstSpec par;
    par.num_states = 2;
    par.transitions = {{FstTransition{0, false}, FstTransition{1, true}},
                       {FstTransition{1, true}, FstTransition{0, false}}};
    par.input_length = 5;
    EXPECT_EQ(fst_apply(par, BitString("10110")).str(), "11011");
}

TEST(Fst, RejectsWrongInputLengthAndBadTables) {
    const auto spec = fst_random(3, 8, 1);
    EXPECT_THROW(fst_apply(spec, BitString("0101")), InvalidArgument);
    auto bad = spec;
    bad.transitions[0][1].next_state = 9;
    EXPECT_THROW(bad.validate(), InvalidArgument);
    EXPECT_THROW(fst_random(0, 8, 1), InvalidArgument);
}

TEST(Fst, RandomTableIsDeterministic) {
    EXPECT_EQ(fst_random(5, 30, 42), fst_random(5, 30, 42));
    EXPECT_NE(fst_random(5, 30, 42), fst_random(5, 30, 43));
}

TEST(Polynomial, OutputLengthIsGridMinusOne) {
    const PolynomialSpec spec;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        EXPECT_EQ(polynomial_map(spec, seed).size(), 16u);
        EXPECT_EQ(polynomial_coefficients(spec, seed).size(), 14u);
    }
}

TEST(Polynomial, UpDownMatchesDirectEvaluation) {
    const PolynomialSpec spec;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto a = polynomial_coefficients(spec, seed);
        std::string expect;
        double prev = 0.0;
        for (std::size_t j = 0; j < spec.grid_points; ++j) {
            const double x = static_cast<double>(j + 1) / static_cast<double>(spec.grid_points + 1);
            double y = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) y += a[i] * std::pow(x, static_cast<double>(i + 1));
            if (j > 0) {
                // Skip seeds where rounding could flip a near-flat step.
                if (std::abs(y - prev) < 1e-12) GTEST_SKIP();
                expect += y > prev ? '1' : '0';
            }
            prev = y;
        }
        EXPECT_EQ(polynomial_map(spec, seed).str(), expect) << seed;
    }
}

TEST(Polynomial, RejectsBadSpecs) {
    EXPECT_THROW((PolynomialSpec{0, 1.0, 17}.validate()), InvalidArgument);
    EXPECT_THROW((PolynomialSpec{14, -1.0, 17}.validate()), InvalidArgument);
    EXPECT_THROW((PolynomialSpec{14, 1.0, 1}.validate()), InvalidArgument);
}

TEST(Bernoulli, ExactProbabilities) {
    const BernoulliSpec spec{4, 0.25};
    EXPECT_DOUBLE_EQ(bernoulli_exact(spec, BitString("0000")), std::pow(0.75, 4));
    EXPECT_DOUBLE_EQ(bernoulli_exact(spec, BitString("1010")), 0.25 * 0.25 * 0.75 * 0.75);
    double sum = 0.0;
    for (std::uint64_t v = 0; v < 16; ++v) {
        std::string s;
        for (int j = 3; j >= 0; --j) s += ((v >> j) & 1U) ? '1' : '0';
        sum += bernoulli_exact(spec, BitString(s));
    }
    EXPECT_NEAR(sum, 1.0, 1e-15);
    EXPECT_THROW(bernoulli_exact(spec, BitString("00")), InvalidArgument);
}

TEST(Bernoulli, ValidatesProbability) {
    EXPECT_THROW((BernoulliSpec{8, 1.5}.validate()), InvalidArgument);
    EXPECT_THROW((BernoulliSpec{8, -0.1}.validate()), InvalidArgument);
    EXPECT_THROW((BernoulliSpec{0, 0.5}.validate()), InvalidArgument);
    EXPECT_THROW((BernoulliSpec{8, 0.0}.validate()), InvalidArgument);
    EXPECT_THROW((BernoulliSpec{8, 1.0}.validate()), InvalidArgument);
}

TEST(Bernoulli, SmallPMostlyZeros) {
    const BernoulliSpec spec{8, 0.01};
    int zeros = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) zeros += bernoulli_map(spec, derive_seed(1, i)).str() == "00000000";
    const double p = std::pow(0.99, 8);
    EXPECT_NEAR(zeros / double(n), p, 4 * std::sqrt(p * (1 - p) / n));
    EXPECT_EQ(bernoulli_map(spec, 77), bernoulli_map(spec, 77));
}

TEST(InputOutputMap, EnumerationIndexIsMsbFirst) {
    const InputOutputMap m(BernoulliSpec{4, 0.5});
    EXPECT_EQ(m.input_count(), 16u);
    EXPECT_EQ(m.at(1).str(), "0001");
    EXPECT_EQ(m.at(8).str(), "1000");
}

TEST(InputOutputMap, BernoulliWeightsSumToCardinality) {
    const InputOutputMap m(BernoulliSpec{5, 0.3});
    ASSERT_TRUE(m.weighted_inputs());
    double sum = 0.0;
    for (std::uint64_t i = 0; i < m.input_count(); ++i) sum += m.input_weight(i);
    EXPECT_NEAR(sum, 32.0, 1e-12);
    EXPECT_NEAR(m.input_weight(0), 32.0 * std::pow(0.7, 5), 1e-12);
}

TEST(InputOutputMap, InputSpaces) {
    EXPECT_EQ(InputOutputMap(fst_random(5, 30, 0)).log2_input_space(), 30.0);
    EXPECT_EQ(InputOutputMap(RnaSpec{35, 3}).log2_input_space(), 70.0);
    EXPECT_FALSE(InputOutputMap(PolynomialSpec{}).log2_input_space().has_value());
    EXPECT_EQ(InputOutputMap(RnaSpec{35, 3}).output_length(), 70u);
}

TEST(InputOutputMap, DigestTracksSpec) {
    EXPECT_EQ(InputOutputMap(BernoulliSpec{8, 0.5}).digest(), InputOutputMap(BernoulliSpec{8, 0.5}).digest());
    EXPECT_NE(InputOutputMap(BernoulliSpec{8, 0.5}).digest(), InputOutputMap(BernoulliSpec{8, 0.4}).digest());
    EXPECT_NE(InputOutputMap(fst_random(5, 16, 0)).digest(), InputOutputMap(fst_random(5, 16, 1)).digest());
}

TEST(InputOutputMap, RnaEnumerationMatchesFold) {
    const InputOutputMap m(RnaSpec{6, 3});
    ASSERT_EQ(m.input_count(), 4096u);
    // Index 0 is AAAAAA; the top index is UUUUUU.
    EXPECT_EQ(m.at(0), encode_dotbracket("......"));
    EXPECT_EQ(m.at(4095), encode_dotbracket("......"));
}

TEST(TimeSeries, MeanDiscretize) {
    const TimeSeriesSpec spec{4, 4};
    EXPECT_EQ(mean_discretize({1, 2, 3, 4}, spec).str(), "0011");
    EXPECT_EQ(mean_discretize({5, 5, 5, 5}, spec).str(), "0000");
    EXPECT_EQ(mean_discretize({0, 10, 0, 10}, spec).str(), "0101");
    EXPECT_THROW(mean_discretize({1, 2, 3}, spec), InvalidArgument);
}

TEST(TimeSeries, UpDownDiscretize) {
    EXPECT_EQ(updown_discretize({1, 2, 2, 1, 3}).str(), "1001");
    EXPECT_THROW(updown_discretize({1}), InvalidArgument);
}

TEST(TimeSeries, IngestSkipsCommentsAndCollectsBadRows) {
    const std::string text =
        "# synthetic\n"
        "a,1,2,3,4,5\n"
        "\n"
        "b,1,2\n"
        "c,1,x,3,4\n"
        "d,1,,2,3,4\n";
    const auto r = timeseries_ingest_text(text, 4);
    ASSERT_EQ(r.series.size(), 2u);
    EXPECT_EQ(r.series[0].id, "a");
    EXPECT_EQ(r.series[1].id, "d");
    EXPECT_EQ(r.series[1].values, (std::vector<double>{1, 2, 3, 4}));
    EXPECT_EQ(r.too_short, 1u);
    ASSERT_EQ(r.invalid_rows.size(), 1u);
    EXPECT_EQ(r.invalid_rows[0].row, 2u);
}

TEST(TimeSeries, StrictIngestThrowsWithRow) {
    IngestOptions opts;
    opts.strict = true;
    try {
        timeseries_ingest_text("a,1,2,3,4\nb,1,oops,3,4\n", 4, opts);
        FAIL();
    } catch (const IngestionError& e) {
        EXPECT_EQ(e.row(), 1);
    }
}

TEST(TimeSeries, UnreadableFile) {
    try {
        timeseries_ingest("/nonexistent/series.csv", 4);
        FAIL();
    } catch (const IngestionError& e) {
        EXPECT_EQ(e.row(), -1);
    }
}

TEST(TimeSeries, MapCutsWindowsByStride) {
    const auto path = std::filesystem::temp_directory_path() / "simbias_maps_test.csv";
    {
        std::ofstream out(path);
        out << "id,v1,v2,v3,v4,v5,v6,v7,v8,v9\n";
        out << "s1,1,2,3,4,5,6,7,8,9\n";
        out << "s2,9,8,7\n";
    }
    TimeSeriesSource src{path.string(), TimeSeriesSpec{4, 2}, IngestOptions{',', true, false}};
    const InputOutputMap m(src);
    // Starts 0, 2, 4 fit in 9 values.
    EXPECT_EQ(m.windows().size(), 3u);
    EXPECT_EQ(m.series_too_short(), 1u);
    EXPECT_EQ(m.input_count(), 3u);
    EXPECT_EQ(m.at(0).str(), "0011");
    std::filesystem::remove(path);
}

}  // namespace
