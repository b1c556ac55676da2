#pragma once
// Seeded synthetic mixtures and textures with known ground truth.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>
#include <vector>

#include "subspace/image.hpp"
#include "subspace/matrix.hpp"
#include "subspace/signal.hpp"

namespace subspace::synth {

/// Deterministic generator: std::mt19937_64 plus portable uniform / normal draws
/// (the standard distributions are implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Standard normal (Box-Muller, cached pair).
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct MixtureSpec {
    std::size_t samples = 1000;
    std::size_t channels = 8;
    std::size_t dominant_rank = 2;
    std::size_t weak_rank_span = 2;
    double dominant_period = 100.0;
    double weak_period = 0.0;  // 0: half the dominant period
    double ratio_dominant_weak = 100.0;
    double ratio_weak_noise = 100.0;  // infinity disables noise
    std::uint64_t seed = 1;

    double effective_weak_period() const noexcept { return weak_period > 0.0 ? weak_period : 0.5 * dominant_period; }
    /// Throws Error(spec) for infeasible combinations.
    void validate() const;
};

inline constexpr double no_noise = std::numeric_limits<double>::infinity();

struct MixtureTruth {
    std::size_t k_m = 0;
    std::size_t k_f = 0;
};

struct Mixture {
    signal::ChannelSet signals;  // channels x samples
    MixtureTruth truth;
    Matrix dominant;  // samples x channels parts; signals = dominant + weak + noise
    Matrix weak;
    Matrix noise;
};

/// X = D P_d + W P_w + N with orthonormal quasi-periodic sources and
/// orthonormal mixing rows, scaled to the requested energy ratios.
Mixture gen_mixture(const MixtureSpec& spec);

/// samples x channels matrix of a channel set (one column per channel).
Matrix channel_matrix(const signal::ChannelSet& signals);

enum class Tag : std::uint8_t { smooth = 0, rough = 1, anomaly_band = 2 };

std::string_view tag_name(Tag t) noexcept;

struct Region {
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t width = 0;
    std::size_t height = 0;
    Tag tag = Tag::smooth;
};

struct TextureSpec {
    std::size_t width = 100;
    std::size_t height = 100;
    std::vector<Region> regions;  // uncovered pixels are smooth
    double base_level = 0.5;
    double smooth_noise = 0.002;
    double rough_noise = 0.25;
    double anomaly_noise = 0.002;
    std::uint64_t seed = 1;

    double noise_for(Tag t) const noexcept;
    /// Throws Error(spec) for out-of-bounds or contradictory rectangles.
    void validate() const;
};

struct Texture {
    image::GrayImage image;
    std::vector<Tag> truth;  // per pixel, row-major
};

/// Base level plus uniform noise of the region's amplitude, clamped to [0, 1].
Texture gen_texture(const TextureSpec& spec);

/// Rough background crossed by two smooth anomaly bands.
TextureSpec default_texture_spec(std::size_t side = 100, std::uint64_t seed = 1);

/// Window-level truth on the scan grid: 1 where the majority of the window's
/// pixels are smooth or anomaly-band (expected high smoothness).
image::Mask window_truth(const Texture& tex, const image::WindowConfig& cfg);

}  // namespace subspace::synth
