#include <algorithm>
#include <string>

#include "subspace/error.hpp"
#include "subspace/synth.hpp"

namespace subspace::synth {

std::string_view tag_name(Tag t) noexcept {
    switch (t) {
        case Tag::smooth: return "smooth";
        case Tag::rough: return "rough";
        case Tag::anomaly_band: return "anomaly-band";
    }
    return "?";
}

double TextureSpec::noise_for(Tag t) const noexcept {
    switch (t) {
        case Tag::smooth: return smooth_noise;
        case Tag::rough: return rough_noise;
        case Tag::anomaly_band: return anomaly_noise;
    }
    return 0.0;
}

namespace {

bool compatible(Tag a, Tag b) {
    if (a == b) return true;
    return (a == Tag::rough && b == Tag::anomaly_band) || (a == Tag::anomaly_band && b == Tag::rough);
}

bool overlaps(const Region& a, const Region& b) {
    return a.x < b.x + b.width && b.x < a.x + a.width && a.y < b.y + b.height && b.y < a.y + a.height;
}

}  // namespace

void TextureSpec::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::spec, "texture spec: " + msg); };
    if (width < 2 || height < 2) fail("image sides must be >= 2");
    if (!(base_level >= 0.0 && base_level <= 1.0)) fail("base level must lie in [0, 1]");
    for (double a : {smooth_noise, rough_noise, anomaly_noise}) {
        if (!(a >= 0.0 && a <= 1.0)) fail("noise amplitudes must lie in [0, 1]");
    }
    for (std::size_t i = 0; i < regions.size(); ++i) {
        const Region& r = regions[i];
        if (r.width == 0 || r.height == 0) fail("region " + std::to_string(i) + " is empty");
        if (r.x + r.width > width || r.y + r.height > height) fail("region " + std::to_string(i) + " exceeds the image");
        for (std::size_t j = 0; j < i; ++j) {
            if (overlaps(r, regions[j]) && !compatible(r.tag, regions[j].tag)) {
                fail("regions " + std::to_string(j) + " (" + std::string(tag_name(regions[j].tag)) + ") and " +
                     std::to_string(i) + " (" + std::string(tag_name(r.tag)) + ") overlap with contradictory tags");
            }
        }
    }
}

Texture gen_texture(const TextureSpec& spec) {
    spec.validate();
    Texture out;
    out.truth.assign(spec.width * spec.height, Tag::smooth);
    // Anomaly bands win over the rough regions they sit in.
    for (const Region& r : spec.regions) {
        for (std::size_t y = r.y; y < r.y + r.height; ++y) {
            for (std::size_t x = r.x; x < r.x + r.width; ++x) {
                Tag& t = out.truth[y * spec.width + x];
                if (t != Tag::anomaly_band) t = r.tag;
            }
        }
    }
    Rng rng(spec.seed);
    out.image = image::GrayImage(spec.width, spec.height);
    for (std::size_t i = 0; i < out.truth.size(); ++i) {
        const double amp = spec.noise_for(out.truth[i]);
        const double noise = rng.uniform(-1.0, 1.0);
        out.image.pixels[i] = std::clamp(spec.base_level + amp * noise, 0.0, 1.0);
    }
    return out;
}

TextureSpec default_texture_spec(std::size_t side, std::uint64_t seed) {
    TextureSpec spec;
    spec.width = side;
    spec.height = side;
    spec.seed = seed;
    spec.regions.push_back({0, 0, side, side, Tag::rough});
    spec.regions.push_back({0, side / 5, side, std::max<std::size_t>(side / 10, 2), Tag::anomaly_band});
    spec.regions.push_back({side / 4, side * 3 / 5, side / 2, std::max<std::size_t>(side / 8, 2), Tag::anomaly_band});
    return spec;
}

image::Mask window_truth(const Texture& tex, const image::WindowConfig& cfg) {
    const image::GrayImage& img = tex.image;
    image::Mask mask;
    mask.cols = image::grid_extent(img.width, cfg.window_size, cfg.stride);
    mask.rows = image::grid_extent(img.height, cfg.window_size, cfg.stride);
    mask.cells.reserve(mask.cols * mask.rows);
    const std::size_t w = cfg.window_size;
    for (std::size_t gy = 0; gy < mask.rows; ++gy) {
        for (std::size_t gx = 0; gx < mask.cols; ++gx) {
            std::size_t smooth = 0;
            for (std::size_t y = gy * cfg.stride; y < gy * cfg.stride + w; ++y) {
                for (std::size_t x = gx * cfg.stride; x < gx * cfg.stride + w; ++x) {
                    if (tex.truth[y * img.width + x] != Tag::rough) ++smooth;
                }
            }
            mask.cells.push_back(2 * smooth > w * w ? 1 : 0);
        }
    }
    return mask;
}

}  // namespace subspace::synth
