#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "subspace/error.hpp"
#include "subspace/io.hpp"

namespace subspace::io {

namespace {

class Scanner {
public:
    Scanner(std::string_view bytes, std::string_view source) : bytes_(bytes), source_(source) {}

    [[noreturn]] void fail(std::size_t at, const std::string& msg) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < at && i < bytes_.size(); ++i) {
            if (bytes_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(std::string(source_), line, col, msg);
    }

    void skip_space() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    unsigned long number(const char* what) {
        skip_space();
        const std::size_t start = pos_;
        unsigned long v = 0;
        const auto [ptr, ec] = std::from_chars(bytes_.data() + pos_, bytes_.data() + bytes_.size(), v);
        if (ec != std::errc() || ptr == bytes_.data() + pos_) fail(start, std::string("expected ") + what);
        pos_ = static_cast<std::size_t>(ptr - bytes_.data());
        if (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) && bytes_[pos_] != '#') {
            fail(pos_, std::string("unexpected character after ") + what);
        }
        return v;
    }

    std::size_t pos() const { return pos_; }
    void advance(std::size_t n) { pos_ += n; }
    std::string_view bytes() const { return bytes_; }

private:
    std::string_view bytes_;
    std::string_view source_;
    std::size_t pos_ = 0;
};

}  // namespace

Pgm parse_pgm(std::string_view bytes, std::string_view source) {
    Scanner sc(bytes, source);
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5')) {
        sc.fail(0, "not a PGM file (expected P2 or P5)");
    }
    const bool binary = bytes[1] == '5';
    sc.advance(2);
    Pgm pgm;
    pgm.width = sc.number("width");
    pgm.height = sc.number("height");
    const unsigned long maxval = sc.number("maxval");
    if (pgm.width == 0 || pgm.height == 0) sc.fail(sc.pos(), "image dimensions must be positive");
    if (maxval == 0 || maxval > 65535) sc.fail(sc.pos(), "maxval must lie in [1, 65535]");
    pgm.maxval = static_cast<unsigned>(maxval);
    const std::size_t count = pgm.width * pgm.height;
    pgm.samples.resize(count);

    if (binary) {
        sc.advance(1);  // single whitespace after maxval
        const std::size_t bpp = pgm.maxval < 256 ? 1 : 2;
        if (sc.pos() + count * bpp > bytes.size()) sc.fail(bytes.size(), "truncated pixel data");
        const auto* data = reinterpret_cast<const unsigned char*>(bytes.data() + sc.pos());
        for (std::size_t i = 0; i < count; ++i) {
            const unsigned v = bpp == 1 ? data[i] : (unsigned(data[2 * i]) << 8) | data[2 * i + 1];
            if (v > pgm.maxval) sc.fail(sc.pos() + i * bpp, "sample exceeds maxval");
            pgm.samples[i] = static_cast<std::uint16_t>(v);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            sc.skip_space();
            const std::size_t at = sc.pos();
            if (at >= bytes.size()) sc.fail(at, "truncated pixel data");
            const unsigned long v = sc.number("pixel value");
            if (v > pgm.maxval) sc.fail(at, "sample exceeds maxval");
            pgm.samples[i] = static_cast<std::uint16_t>(v);
        }
    }
    return pgm;
}

std::string format_pgm(const Pgm& pgm, PgmFormat format) {
    std::string out = format == PgmFormat::binary ? "P5\n" : "P2\n";
    out += std::to_string(pgm.width) + " " + std::to_string(pgm.height) + "\n" + std::to_string(pgm.maxval) + "\n";
    if (format == PgmFormat::binary) {
        const bool wide = pgm.maxval >= 256;
        for (std::uint16_t v : pgm.samples) {
            if (wide) out += static_cast<char>(v >> 8);
            out += static_cast<char>(v & 0xff);
        }
    } else {
        for (std::size_t i = 0; i < pgm.samples.size(); ++i) {
            out += std::to_string(pgm.samples[i]);
            out += (i + 1) % pgm.width == 0 ? '\n' : ' ';
        }
    }
    return out;
}

image::GrayImage to_gray(const Pgm& pgm) {
    image::GrayImage img(pgm.width, pgm.height);
    const double scale = static_cast<double>(pgm.maxval);
    for (std::size_t i = 0; i < pgm.samples.size(); ++i) img.pixels[i] = pgm.samples[i] / scale;
    return img;
}

Pgm from_gray(const image::GrayImage& img, unsigned maxval) {
    if (maxval == 0 || maxval > 65535) throw Error(ErrorCode::invalid_input, "maxval must lie in [1, 65535]");
    Pgm pgm;
    pgm.width = img.width;
    pgm.height = img.height;
    pgm.maxval = maxval;
    pgm.samples.reserve(img.pixels.size());
    for (double p : img.pixels) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::invalid_input, "pixel outside [0, 1]");
        pgm.samples.push_back(static_cast<std::uint16_t>(std::lround(p * maxval)));
    }
    return pgm;
}

image::GrayImage read_pgm(const std::filesystem::path& path) {
    return to_gray(parse_pgm(read_file(path), path.string()));
}

void write_pgm(const std::filesystem::path& path, const Pgm& pgm, PgmFormat format) {
    write_file(path, format_pgm(pgm, format));
}

void write_pgm(const std::filesystem::path& path, const image::GrayImage& img, PgmFormat format) {
    write_pgm(path, from_gray(img), format);
}

Pgm render_grid(const std::vector<double>& values, std::size_t cols, std::size_t rows) {
    Pgm pgm;
    pgm.width = cols;
    pgm.height = rows;
    pgm.maxval = 255;
    pgm.samples.assign(values.size(), 0);
    if (values.empty()) return pgm;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double span = *hi - *lo;
    if (!(span > 0.0)) return pgm;
    for (std::size_t i = 0; i < values.size(); ++i) {
        pgm.samples[i] = static_cast<std::uint16_t>(std::lround(255.0 * (values[i] - *lo) / span));
    }
    return pgm;
}

}  // namespace subspace::io
