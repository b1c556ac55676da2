#include <gtest/gtest.h>

#include <png.h>

#include <cmath>
#include <cstring>
#include <limits>

#include "subspace/error.hpp"
#include "subspace/io.hpp"
#include "support.hpp"

using namespace subspace;
using namespace subspace::io;
using testing_support::TempDir;

namespace {

ParseError parse_error_of(std::string_view text) {
    try {
        parse_table(text, "in.csv");
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no ParseError";
    return ParseError("", 0, 0, "");
}

}  // namespace

// CSV

TEST(Csv, HeaderAndData) {
    const Table t = parse_table("a, b\n1,2\n3 , -4.5e1\n");
    EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[1], (std::vector<double>{3, -45}));
}

TEST(Csv, NoHeaderCrlfAndBlankLines) {
    const Table t = parse_table("1,+2\r\n\r\n3,4\r\n\n");
    EXPECT_TRUE(t.header.empty());
    EXPECT_EQ(t.rows, (std::vector<std::vector<double>>{{1, 2}, {3, 4}}));
}

TEST(Csv, MalformedRowNamesRowAndColumn) {
    const ParseError e = parse_error_of("x,y\n1,2\n3,abc\n");
    EXPECT_EQ(e.code(), ErrorCode::parse);
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("in.csv:3:3"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos);
}

TEST(Csv, RaggedAndNonFiniteRows) {
    EXPECT_EQ(parse_error_of("1,2\n3\n").line(), 2u);
    EXPECT_EQ(parse_error_of("1,2\n3,4,5\n").column(), 5u);
    EXPECT_EQ(parse_error_of("1,nan\n").column(), 3u);
    EXPECT_EQ(parse_error_of("1,inf\n").line(), 1u);
    EXPECT_EQ(parse_error_of("").line(), 1u);
    EXPECT_EQ(parse_error_of("a,b\n").code(), ErrorCode::parse);
    EXPECT_EQ(parse_error_of("1,\n").column(), 3u);
}

TEST(Csv, ChannelRoundTripIsValueIdentical) {
    synth::Rng rng(1);
    signal::ChannelSet s;
    s.labels = {"abdomen", "thorax", "extra"};
    for (int c = 0; c < 3; ++c) {
        std::vector<double> ch(257);
        for (double& v : ch) v = rng.normal() * std::pow(10.0, rng.uniform(-30, 30));
        s.channels.push_back(ch);
    }
    s.channels[0][0] = -0.0;
    s.channels[1][0] = std::numeric_limits<double>::denorm_min();
    s.channels[2][0] = std::numeric_limits<double>::max();
    const signal::ChannelSet back = parse_channels(format_channels(s));
    EXPECT_EQ(back.labels, s.labels);
    ASSERT_EQ(back.channels.size(), 3u);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < s.channels[c].size(); ++i) {
            EXPECT_EQ(std::memcmp(&back.channels[c][i], &s.channels[c][i], sizeof(double)), 0);
        }
    }
}

TEST(Csv, FileRoundTripAndGrid) {
    TempDir dir("csv");
    signal::ChannelSet s;
    s.channels = {{0.1, 0.2, 0.3}, {1.0 / 3.0, 2.0 / 3.0, 1.0}};
    write_channels(dir.file("s.csv"), s);
    EXPECT_EQ(read_channels(dir.file("s.csv")).channels, s.channels);

    const std::vector<double> grid{0.5, 1.0 / 7.0, 3.0, 4e-17, 5.0, 6.0};
    write_grid(dir.file("g.csv"), grid, 3);
    const Matrix back = read_grid(dir.file("g.csv"));
    EXPECT_EQ(back.rows(), 2u);
    EXPECT_EQ(back.cols(), 3u);
    EXPECT_EQ(std::vector<double>(back.data().begin(), back.data().end()), grid);
}

TEST(Csv, MissingFileIsIoError) {
    try {
        read_channels("/nonexistent/dir/none.csv");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::io);
    }
}

// PGM

TEST(Pgm, PlainWithComments) {
    const Pgm p = parse_pgm("P2\n# comment\n3 2 # trailing\n10\n0 5 10\n1 2 3\n");
    EXPECT_EQ(p.width, 3u);
    EXPECT_EQ(p.height, 2u);
    EXPECT_EQ(p.maxval, 10u);
    EXPECT_EQ(p.samples, (std::vector<std::uint16_t>{0, 5, 10, 1, 2, 3}));
    const image::GrayImage img = to_gray(p);
    EXPECT_DOUBLE_EQ(img.at(1, 0), 0.5);
}

TEST(Pgm, RoundTripBothFormats) {
    synth::Rng rng(2);
    for (unsigned maxval : {255u, 65535u, 7u}) {
        Pgm p{13, 7, maxval, {}};
        for (int i = 0; i < 13 * 7; ++i) p.samples.push_back(static_cast<std::uint16_t>(rng.next() % (maxval + 1)));
        for (PgmFormat f : {PgmFormat::plain, PgmFormat::binary}) {
            const Pgm back = parse_pgm(format_pgm(p, f));
            EXPECT_EQ(back.samples, p.samples);
            EXPECT_EQ(back.maxval, maxval);
        }
    }
}

TEST(Pgm, GrayImageRoundTripIsValueIdentical) {
    TempDir dir("pgm");
    synth::Rng rng(3);
    image::GrayImage img(17, 11);
    for (double& p : img.pixels) p = static_cast<double>(rng.next() % 256) / 255.0;
    write_pgm(dir.file("a.pgm"), img, PgmFormat::binary);
    write_pgm(dir.file("b.pgm"), img, PgmFormat::plain);
    EXPECT_EQ(read_pgm(dir.file("a.pgm")), img);
    EXPECT_EQ(read_pgm(dir.file("b.pgm")), img);
    EXPECT_EQ(load_image(dir.file("a.pgm")), img);
}

TEST(Pgm, Errors) {
    auto code_line = [](std::string_view text) {
        try {
            parse_pgm(text, "x.pgm");
        } catch (const ParseError& e) {
            return e.line();
        }
        ADD_FAILURE() << "no ParseError for " << text;
        return std::size_t{0};
    };
    EXPECT_EQ(code_line("P3\n1 1\n255\n0\n"), 1u);
    EXPECT_EQ(code_line("P2\n2 2\n255\n0 1\n2"), 5u);
    EXPECT_EQ(code_line("P2\n1 1\n9\n10\n"), 4u);
    EXPECT_EQ(code_line("P2\n0 1\n9\n"), 3u);
    EXPECT_EQ(code_line("P2\nx 1\n9\n"), 2u);
    EXPECT_GE(code_line(std::string_view("P5\n2 2\n255\n\x01\x02", 14)), 4u);
}

TEST(Pgm, RenderGridMinMax) {
    const Pgm p = render_grid({2.0, 4.0, 3.0, 2.0}, 2, 2);
    EXPECT_EQ(p.samples, (std::vector<std::uint16_t>{0, 255, 128, 0}));
    EXPECT_EQ(render_grid({1.0, 1.0}, 2, 1).samples, (std::vector<std::uint16_t>{0, 0}));
}

// PNG

TEST(Png, ReadsEightBitGray) {
    TempDir dir("png");
    const std::string path = dir.file("g.png");
    std::vector<png_byte> pixels(6 * 4);
    for (std::size_t i = 0; i < pixels.size(); ++i) pixels[i] = static_cast<png_byte>(i * 10);
    png_image png;
    std::memset(&png, 0, sizeof png);
    png.version = PNG_IMAGE_VERSION;
    png.width = 6;
    png.height = 4;
    png.format = PNG_FORMAT_GRAY;
    ASSERT_TRUE(png_image_write_to_file(&png, path.c_str(), 0, pixels.data(), 0, nullptr));

    const image::GrayImage img = load_image(path);
    ASSERT_EQ(img.width, 6u);
    ASSERT_EQ(img.height, 4u);
    for (std::size_t i = 0; i < pixels.size(); ++i) EXPECT_DOUBLE_EQ(img.pixels[i], pixels[i] / 255.0);
}

TEST(Png, CorruptFileIsParseError) {
    TempDir dir("png_bad");
    const std::string path = dir.file("bad.png");
    write_file(path, std::string("\x89PNG\r\n\x1a\n garbage", 16));
    EXPECT_THROW(read_png(path), ParseError);
}
