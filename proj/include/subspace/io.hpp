#pragma once
// CSV signal / grid files, PGM (P2, P5) read-write, 8-bit grayscale PNG read.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "subspace/image.hpp"
#include "subspace/matrix.hpp"
#include "subspace/signal.hpp"

namespace subspace::io {

/// Comma-separated numeric table with an optional header row.
struct Table {
    std::vector<std::string> header;       // empty when the first row is numeric
    std::vector<std::vector<double>> rows;
};

/// Throws ParseError (line / column of the offending field) on ragged rows,
/// non-numeric or non-finite fields, or an empty table.
Table parse_table(std::string_view text, std::string_view source = "<memory>");

/// One column per channel; header cells become labels.
signal::ChannelSet parse_channels(std::string_view text, std::string_view source = "<memory>");
signal::ChannelSet read_channels(const std::filesystem::path& path);

/// Shortest round-trip decimal formatting; reading the text back is value-identical.
std::string format_channels(const signal::ChannelSet& signals);
void write_channels(const std::filesystem::path& path, const signal::ChannelSet& signals);

/// Grid values, one CSV row per grid row.
std::string format_grid(const std::vector<double>& values, std::size_t cols);
void write_grid(const std::filesystem::path& path, const std::vector<double>& values, std::size_t cols);
Matrix read_grid(const std::filesystem::path& path);

enum class PgmFormat { plain, binary };  // P2, P5

/// Raw PGM samples (0..maxval).
struct Pgm {
    std::size_t width = 0;
    std::size_t height = 0;
    unsigned maxval = 255;
    std::vector<std::uint16_t> samples;
};

Pgm parse_pgm(std::string_view bytes, std::string_view source = "<memory>");
std::string format_pgm(const Pgm& pgm, PgmFormat format);

/// Pixels normalized by maxval.
image::GrayImage to_gray(const Pgm& pgm);
/// Quantized to round(p * maxval).
Pgm from_gray(const image::GrayImage& img, unsigned maxval = 255);

image::GrayImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const image::GrayImage& img, PgmFormat format = PgmFormat::binary);
void write_pgm(const std::filesystem::path& path, const Pgm& pgm, PgmFormat format = PgmFormat::binary);

/// 8-bit grayscale (color inputs are converted) via libpng.
image::GrayImage read_png(const std::filesystem::path& path);

/// PGM or PNG, chosen by the file signature.
image::GrayImage load_image(const std::filesystem::path& path);

/// Min-max normalized 8-bit rendering of grid values (constant grids render as 0).
Pgm render_grid(const std::vector<double>& values, std::size_t cols, std::size_t rows);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace subspace::io
