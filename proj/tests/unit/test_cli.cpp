#include <gtest/gtest.h>

#include <json.hpp>

#include <sstream>

#include "subspace/cli.hpp"
#include "subspace/image.hpp"
#include "subspace/io.hpp"
#include "subspace/synth.hpp"
#include "support.hpp"

using namespace subspace;
using testing_support::TempDir;
using nlohmann::json;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Outcome o;
    o.code = cli::run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

json load_json(const std::string& path) { return json::parse(io::read_file(path)); }

}  // namespace

TEST(Cli, SynthThenSeparateRecoversTruth) {
    TempDir dir("cli_sep");
    const std::string p = dir.file("mix");
    ASSERT_EQ(run({"synth", "--kind", "mixture", "--seed", "3", "--output-prefix", p}).code, 0);
    const json truth = load_json(p + "_truth.json");
    EXPECT_EQ(truth["k_m"], 2);
    EXPECT_EQ(truth["k_f"], 4);

    const Outcome o = run({"separate", p + "_signals.csv", "--output-prefix", dir.file("sep")});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_NE(o.out.find("m = 2, f = 4"), std::string::npos) << o.out;
    const json report = load_json(dir.file("sep_report.json"));
    EXPECT_EQ(report["schema_version"], 1);
    EXPECT_EQ(report["command"], "separate");
    EXPECT_EQ(report["results"]["cutoff"]["m"], 2);
    EXPECT_EQ(report["results"]["cutoff"]["f"], 4);
    EXPECT_EQ(report["results"]["singular_values"].size(), 8u);
    EXPECT_EQ(report["work_counters"]["decompositions"], 1);
    EXPECT_TRUE(report["wall_time_ms"].is_number());

    // Parts add back up to the input.
    const auto input = io::read_channels(p + "_signals.csv");
    const auto d = io::read_channels(dir.file("sep_dominant.csv"));
    const auto w = io::read_channels(dir.file("sep_weak.csv"));
    const auto n = io::read_channels(dir.file("sep_noise.csv"));
    ASSERT_EQ(d.channel_count(), input.channel_count());
    for (std::size_t c = 0; c < input.channel_count(); ++c) {
        for (std::size_t i = 0; i < input.samples_per_channel(); ++i) {
            EXPECT_NEAR(d.channels[c][i] + w.channels[c][i] + n.channels[c][i], input.channels[c][i], 1e-9);
        }
    }
}

TEST(Cli, ReportEchoesEveryParameter) {
    TempDir dir("cli_echo");
    const std::string p = dir.file("mix");
    ASSERT_EQ(run({"synth", "--output-prefix", p}).code, 0);
    const Outcome o = run({"separate", "--input", p + "_signals.csv", "--cutoffs", "1", "--min-separation", "2",
                           "--output-prefix", dir.file("r"), "--json"});
    ASSERT_EQ(o.code, 0) << o.err;
    const json report = json::parse(o.out);
    const json& params = report["parameters"];
    for (const char* key : {"seed", "output_prefix", "json", "input", "second", "method", "layout", "window", "stride",
                            "channel", "cutoffs", "min_separation", "tolerance"}) {
        EXPECT_TRUE(params.contains(key)) << key;
    }
    EXPECT_EQ(params["cutoffs"], 1);
    EXPECT_EQ(params["min_separation"], 2);
    EXPECT_TRUE(report["results"]["cutoff"]["f"].is_null());
}

TEST(Cli, HankelSingleChannel) {
    TempDir dir("cli_hankel");
    signal::ChannelSet s;
    s.channels.emplace_back();
    for (int i = 0; i < 200; ++i) s.channels[0].push_back(std::sin(0.2 * i) + 0.01 * std::cos(1.7 * i));
    io::write_channels(dir.file("x.csv"), s);
    const Outcome o = run({"separate", dir.file("x.csv"), "--layout", "hankel", "--window", "20", "--cutoffs", "1",
                           "--output-prefix", dir.file("h")});
    ASSERT_EQ(o.code, 0) << o.err;
    const json report = load_json(dir.file("h_report.json"));
    EXPECT_EQ(report["results"]["matrix"]["rows"], 20);
    EXPECT_EQ(report["results"]["matrix"]["cols"], 181);
    EXPECT_EQ(io::read_channels(dir.file("h_dominant.csv")).samples_per_channel(), 200u);
}

TEST(Cli, GsvdMethod) {
    TempDir dir("cli_gsvd");
    const std::string p = dir.file("mix");
    ASSERT_EQ(run({"synth", "--output-prefix", p}).code, 0);
    const Outcome missing = run({"separate", p + "_signals.csv", "--method", "gsvd", "--output-prefix", dir.file("g")});
    EXPECT_EQ(missing.code, 1);
    EXPECT_NE(missing.err.find("--second"), std::string::npos);

    const Outcome o = run({"separate", p + "_signals.csv", "--method", "gsvd", "--second", p + "_signals.csv",
                           "--output-prefix", dir.file("g")});
    ASSERT_EQ(o.code, 0) << o.err;
    const json report = load_json(dir.file("g_report.json"));
    EXPECT_EQ(report["work_counters"]["decompositions"], 3);
    EXPECT_EQ(report["results"]["alpha"].size(), 8u);
    EXPECT_EQ(report["results"]["cutoff"]["method"], "gsvd-egv");
}

TEST(Cli, ConstantSingleChannelIsDegenerate) {
    TempDir dir("cli_degenerate");
    io::write_file(dir.file("c.csv"), "x\n1\n1\n1\n1\n");
    const Outcome o = run({"separate", dir.file("c.csv"), "--cutoffs", "1", "--output-prefix", dir.file("o")});
    EXPECT_EQ(o.code, 1);
    EXPECT_NE(o.err.find("degenerate-spectrum"), std::string::npos) << o.err;
}

TEST(Cli, MalformedCsvNamesRow) {
    TempDir dir("cli_malformed");
    io::write_file(dir.file("bad.csv"), "a,b\n1,2\n3,x\n");
    const Outcome o = run({"separate", dir.file("bad.csv"), "--output-prefix", dir.file("o")});
    EXPECT_EQ(o.code, 1);
    EXPECT_NE(o.err.find("row 3"), std::string::npos) << o.err;
    EXPECT_NE(o.err.find("parse"), std::string::npos) << o.err;
}

TEST(Cli, MissingInputIsIoError) {
    const Outcome o = run({"separate", "/nonexistent/none.csv"});
    EXPECT_EQ(o.code, 1);
    EXPECT_NE(o.err.find("[io]"), std::string::npos) << o.err;
}

TEST(Cli, ScanGridAndErrors) {
    TempDir dir("cli_scan");
    synth::Rng rng(4);
    image::GrayImage img(20, 20);
    for (double& p : img.pixels) p = static_cast<double>(rng.next() % 256) / 255.0;
    io::write_pgm(dir.file("img.pgm"), img);

    const Outcome o = run({"scan", dir.file("img.pgm"), "--window", "5", "--stride", "5", "--output-prefix",
                           dir.file("s")});
    ASSERT_EQ(o.code, 0) << o.err;
    const Matrix grid = io::read_grid(dir.file("s_map.csv"));
    EXPECT_EQ(grid.rows() * grid.cols(), 16u);
    const json report = load_json(dir.file("s_report.json"));
    EXPECT_EQ(report["work_counters"]["decompositions"], 16);
    EXPECT_EQ(io::read_pgm(dir.file("s_map.pgm")).width, 4u);

    const Outcome too_big = run({"scan", dir.file("img.pgm"), "--window", "25", "--output-prefix", dir.file("t")});
    EXPECT_EQ(too_big.code, 1);
    EXPECT_NE(too_big.err.find("config"), std::string::npos) << too_big.err;

    const Outcome bad_flag = run({"scan", dir.file("img.pgm"), "--metric", "nope"});
    EXPECT_NE(bad_flag.code, 0);
}

TEST(Cli, TextureMaskMatchesTruth) {
    TempDir dir("cli_texture");
    const std::string p = dir.file("tex");
    ASSERT_EQ(run({"synth", "--kind", "texture", "--width", "100", "--height", "100", "--output-prefix", p}).code, 0);
    const Outcome o = run({"scan", p + "_image.pgm", "--auto-threshold", "--output-prefix", dir.file("s")});
    ASSERT_EQ(o.code, 0) << o.err;
    const io::Pgm mask = io::parse_pgm(io::read_file(dir.file("s_mask.pgm")));

    const io::Pgm tags = io::parse_pgm(io::read_file(p + "_truth.pgm"));
    synth::Texture tex;
    tex.image = io::to_gray(tags);
    for (std::uint16_t t : tags.samples) tex.truth.push_back(static_cast<synth::Tag>(t));
    image::WindowConfig cfg;
    const image::Mask truth = synth::window_truth(tex, cfg);
    ASSERT_EQ(mask.samples.size(), truth.cells.size());
    std::size_t agree = 0;
    for (std::size_t i = 0; i < truth.cells.size(); ++i) agree += (mask.samples[i] == 255) == (truth.cells[i] == 1);
    EXPECT_GE(agree, truth.cells.size() * 95 / 100);
}

TEST(Cli, SameSeedGivesIdenticalFiles) {
    TempDir dir("cli_seed");
    for (const char* kind : {"mixture", "texture"}) {
        ASSERT_EQ(run({"synth", "--kind", kind, "--seed", "1", "--output-prefix", dir.file("a")}).code, 0);
        ASSERT_EQ(run({"synth", "--kind", kind, "--seed", "1", "--output-prefix", dir.file("b")}).code, 0);
        for (const char* suffix : {"_truth.json"}) {
            const json a = load_json(dir.file("a") + suffix);
            json b = load_json(dir.file("b") + suffix);
            EXPECT_EQ(a, b);
        }
    }
    EXPECT_EQ(io::read_file(dir.file("a_image.pgm")), io::read_file(dir.file("b_image.pgm")));
    EXPECT_EQ(io::read_file(dir.file("a_signals.csv")), io::read_file(dir.file("b_signals.csv")));
}

TEST(Cli, InfeasibleRanksAreSpecError) {
    TempDir dir("cli_spec");
    const Outcome o = run({"synth", "--dominant-rank", "6", "--weak-span", "3", "--output-prefix", dir.file("x")});
    EXPECT_EQ(o.code, 1);
    EXPECT_NE(o.err.find("[spec]"), std::string::npos) << o.err;
}

TEST(Cli, NoNoiseMixture) {
    TempDir dir("cli_inf");
    ASSERT_EQ(run({"synth", "--ratio-wn", "inf", "--output-prefix", dir.file("x")}).code, 0);
    const json truth = load_json(dir.file("x_truth.json"));
    EXPECT_EQ(truth["energies"]["noise"], 0.0);
    EXPECT_EQ(truth["spec"]["ratio_weak_noise"], "inf");
}

TEST(Cli, BenchRowCounts) {
    TempDir dir("cli_bench");
    const Outcome o = run({"bench", "--suite", "cutoff", "--sizes", "64", "--reps", "3", "--output-prefix",
                           dir.file("b")});
    ASSERT_EQ(o.code, 0) << o.err;
    std::istringstream csv(io::read_file(dir.file("b_bench.csv")));
    std::size_t lines = 0;
    for (std::string line; std::getline(csv, line);) lines += !line.empty();
    EXPECT_EQ(lines, 1u + 6u);
    const json summary = load_json(dir.file("b_summary.json"));
    EXPECT_EQ(summary["results"]["rows"], 6);
    EXPECT_EQ(summary["results"]["medians"].size(), 2u);

    const Outcome bad = run({"bench", "--reps", "2", "--sizes", "64", "--output-prefix", dir.file("c")});
    EXPECT_EQ(bad.code, 1);
}

TEST(Cli, UsageErrors) {
    EXPECT_NE(run({}).code, 0);
    EXPECT_NE(run({"frobnicate"}).code, 0);
    EXPECT_EQ(run({"--help"}).code, 0);
}
