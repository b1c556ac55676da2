#include <cmath>
#include <numbers>
#include <string>

#include "subspace/error.hpp"
#include "subspace/linalg.hpp"
#include "subspace/simd/kernels.hpp"
#include "subspace/synth.hpp"

namespace subspace::synth {

void MixtureSpec::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::spec, "mixture spec: " + msg); };
    if (dominant_rank < 1) fail("dominant rank must be >= 1");
    if (weak_rank_span < 1) fail("weak rank span must be >= 1");
    if (dominant_rank + weak_rank_span >= channels) {
        fail("dominant rank + weak span (" + std::to_string(dominant_rank + weak_rank_span) +
             ") must be below the channel count (" + std::to_string(channels) + ")");
    }
    if (samples < channels) fail("samples must be >= channels");
    if (!(dominant_period >= 2.0) || !std::isfinite(dominant_period)) fail("dominant period must be >= 2");
    if (!(effective_weak_period() >= 2.0) || !std::isfinite(weak_period)) fail("weak period must be >= 2");
    if (!(ratio_dominant_weak >= 1.0) || !std::isfinite(ratio_dominant_weak)) fail("dominant/weak ratio must be finite and >= 1");
    if (!(ratio_weak_noise >= 1.0)) fail("weak/noise ratio must be >= 1");
}

Matrix channel_matrix(const signal::ChannelSet& signals) {
    return Matrix::from_columns(signals.channels);
}

namespace {

// Harmonic sum with per-cycle phase jitter, linearly interpolated between cycles.
std::vector<double> quasi_periodic(std::size_t samples, double period, Rng& rng) {
    constexpr int harmonics = 3;
    constexpr double jitter = 0.15;
    double amp[harmonics];
    double phase[harmonics];
    for (int h = 0; h < harmonics; ++h) {
        amp[h] = rng.uniform(0.3, 1.0) / (h + 1);
        phase[h] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    const std::size_t cycles = static_cast<std::size_t>(static_cast<double>(samples) / period) + 2;
    std::vector<double> offsets(cycles);
    for (double& o : offsets) o = jitter * rng.normal();

    std::vector<double> out(samples);
    for (std::size_t t = 0; t < samples; ++t) {
        const double pos = static_cast<double>(t) / period;
        const std::size_t c = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(c);
        const double theta = 2.0 * std::numbers::pi * pos + (1.0 - frac) * offsets[c] + frac * offsets[c + 1];
        double v = 0.0;
        for (int h = 0; h < harmonics; ++h) v += amp[h] * std::sin((h + 1) * theta + phase[h]);
        out[t] = v;
    }
    return out;
}

// Order-preserving orthonormalization (modified Gram-Schmidt, two passes).
void orthonormalize(std::vector<std::vector<double>>& cols) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                const double proj = simd::dot(cols[i], cols[j]);
                simd::kernels().axpy(-proj, cols[i].data(), cols[j].data(), cols[j].size());
            }
        }
        const double norm = std::sqrt(simd::sum_squares(cols[j]));
        if (!(norm > 0.0)) throw Error(ErrorCode::spec, "mixture spec: sources are linearly dependent");
        simd::kernels().scale(1.0 / norm, cols[j].data(), cols[j].size());
    }
}

Matrix scaled(Matrix m, double target_energy) {
    const double energy = linalg::frobenius_energy(m);
    if (energy > 0.0) m *= std::sqrt(target_energy / energy);
    return m;
}

}  // namespace

Mixture gen_mixture(const MixtureSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const std::size_t n = spec.samples;
    const std::size_t ch = spec.channels;
    const std::size_t kd = spec.dominant_rank;
    const std::size_t kw = spec.weak_rank_span;

    std::vector<std::vector<double>> sources;
    for (std::size_t j = 0; j < kd; ++j) sources.push_back(quasi_periodic(n, spec.dominant_period, rng));
    for (std::size_t j = 0; j < kw; ++j) sources.push_back(quasi_periodic(n, spec.effective_weak_period(), rng));
    orthonormalize(sources);

    // Mixing rows: leading rows of a random orthogonal matrix.
    Matrix gauss(ch, ch);
    for (double& v : gauss.data()) v = rng.normal();
    const Matrix mixing = linalg::svd(gauss).left_basis.transposed();

    Matrix dominant(n, ch);
    Matrix weak(n, ch);
    for (std::size_t j = 0; j < kd + kw; ++j) {
        Matrix& target = j < kd ? dominant : weak;
        const auto mix = mixing.row(j);
        for (std::size_t t = 0; t < n; ++t) {
            auto row = target.row(t);
            simd::kernels().axpy(sources[j][t], mix.data(), row.data(), ch);
        }
    }

    const double e_dominant = static_cast<double>(n * ch);
    const double e_weak = e_dominant / spec.ratio_dominant_weak;
    Mixture out;
    out.dominant = scaled(std::move(dominant), e_dominant);
    out.weak = scaled(std::move(weak), e_weak);
    out.noise = Matrix(n, ch);
    if (std::isfinite(spec.ratio_weak_noise)) {
        for (double& v : out.noise.data()) v = rng.normal();
        out.noise = scaled(std::move(out.noise), e_weak / spec.ratio_weak_noise);
    }

    const Matrix total = out.dominant + out.weak + out.noise;
    out.signals.channels.resize(ch);
    for (std::size_t c = 0; c < ch; ++c) out.signals.channels[c] = total.column(c);
    out.truth = {kd, kd + kw};
    return out;
}

}  // namespace subspace::synth
