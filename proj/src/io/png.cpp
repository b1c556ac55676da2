#include <png.h>

#include <cstring>

#include "subspace/error.hpp"
#include "subspace/io.hpp"

namespace subspace::io {

image::GrayImage read_png(const std::filesystem::path& path) {
    const std::string bytes = read_file(path);
    png_image png;
    std::memset(&png, 0, sizeof png);
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size())) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw ParseError(path.string(), 1, 1, "PNG decode failed: " + msg);
    }
    png.format = PNG_FORMAT_GRAY;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(png));
    if (!png_image_finish_read(&png, nullptr, buffer.data(), 0, nullptr)) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw ParseError(path.string(), 1, 1, "PNG decode failed: " + msg);
    }
    image::GrayImage img(png.width, png.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = buffer[i] / 255.0;
    return img;
}

image::GrayImage load_image(const std::filesystem::path& path) {
    const std::string head = read_file(path).substr(0, 8);
    static constexpr unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (head.size() == 8 && std::memcmp(head.data(), png_sig, 8) == 0) return read_png(path);
    return read_pgm(path);
}

}  // namespace subspace::io
