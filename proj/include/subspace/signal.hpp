#pragma once
// Trajectory embedding of multichannel signals, energy-gap-variation cutoff
// detection, and dominant / weak / noise subspace separation.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subspace/linalg.hpp"
#include "subspace/matrix.hpp"

namespace subspace::signal {

/// Equal-length real channels.
struct ChannelSet {
    std::vector<std::vector<double>> channels;
    std::optional<double> sample_rate;  // Hz
    std::vector<std::string> labels;    // empty or one per channel

    std::size_t channel_count() const noexcept { return channels.size(); }
    std::size_t samples_per_channel() const noexcept { return channels.empty() ? 0 : channels.front().size(); }

    /// Throws Error(invalid_input) unless every channel has the same length
    /// >= 2, all samples are finite, and labels (if any) match the channels.
    void validate() const;
};

enum class EmbedMode { channel_columns, hankel_sliding };

/// Where one matrix column comes from (channel-columns mode).
struct ColumnSource {
    std::size_t channel = 0;
    std::size_t offset = 0;
    friend bool operator==(const ColumnSource&, const ColumnSource&) = default;
};

struct EmbedLayout {
    EmbedMode mode = EmbedMode::channel_columns;
    std::size_t window_length = 0;
    std::size_t stride = 1;               // hankel mode
    std::size_t hankel_channel = 0;       // hankel mode
    std::vector<ColumnSource> columns;    // channel-columns mode

    /// Column j holds `window` samples of channel j starting at offsets[j].
    static EmbedLayout channel_columns(std::size_t window, std::span<const std::size_t> offsets);
    /// One column per channel, whole length, offset 0.
    static EmbedLayout whole_channels(const ChannelSet& signals);
    static EmbedLayout hankel(std::size_t window, std::size_t stride, std::size_t channel = 0);

    /// Column count this layout yields for channels of `samples` length.
    std::size_t column_count(std::size_t samples) const;
    /// Throws Error(range | layout) when the layout does not fit the signals.
    void validate(const ChannelSet& signals) const;
};

/// Trajectory matrix: window_length rows, one column per window.
Matrix embed(const ChannelSet& signals, const EmbedLayout& layout);

/// Inverse of embed. Every output sample is the mean of all matrix entries
/// covering it (diagonal averaging for overlapping windows); uncovered samples
/// are zero. Produces max(channel)+1 channels of target_length samples.
ChannelSet unembed(const Matrix& m, const EmbedLayout& layout, std::size_t target_length);

/// Gap / entropy / variation profile of a descending spectrum.
struct EgvProfile {
    std::vector<double> gaps;               // Delta G_k, k = 1..p
    std::vector<double> singular_energies;  // SE_k, k = 1..p
    std::vector<double> variations;         // V_k = SE_k - SE_{k-1}, k = 1..p-1, SE_0 = 0
    double gamma = 0.0;                     // sum of gaps
};

enum class CutoffMethod { svd_egv, gsvd_egv };

struct CutoffResult {
    std::size_t m = 0;                // dominant / weak boundary (1-based)
    std::optional<std::size_t> f;     // weak / noise boundary (1-based)
    double peak_m = 0.0;              // V_m
    std::optional<double> peak_f;     // V_f
    CutoffMethod method = CutoffMethod::svd_egv;
    std::size_t infinite_count = 0;   // gsvd only: beta = 0 directions counted into m
    std::vector<std::string> warnings;
};

/// 2 sigma_{k+1}^2 for 1 <= k <= p, with sigma_i = 0 beyond the numerical rank.
double energy_gap(const linalg::SpectrumResult& spec, std::size_t k);

/// Gaps for k = 1..p where p = number of singular values.
std::vector<double> energy_gaps(const linalg::SpectrumResult& spec);

/// The same gaps from a bare descending sequence (values beyond `rank` are zero).
std::vector<double> energy_gaps(std::span<const double> descending, std::size_t rank);

/// SE_i = -(g_i / gamma) ln(g_i / gamma), 0 ln 0 = 0. Fills gaps,
/// singular_energies, gamma (variations left empty).
EgvProfile singular_energies(std::span<const double> gaps);

/// V_k = SE_k - SE_{k-1} for k = 1..p-1 with SE_0 = 0.
std::vector<double> egv(const EgvProfile& profile);

/// Full chain for a spectrum.
EgvProfile egv_profile(const linalg::SpectrumResult& spec);
EgvProfile egv_profile(std::span<const double> descending, std::size_t rank);

/// Single boundary: m = argmax_k V_k (first on ties).
CutoffResult find_cutoff(const linalg::SpectrumResult& spec);

/// Two boundaries from the two largest local maxima of |V_k| at least
/// `min_separation` apart; f is absent when fewer than two exist.
CutoffResult find_two_cutoffs(const linalg::SpectrumResult& spec, std::size_t min_separation = 1);

/// Chain on a descending sequence; shared by the SVD and GSVD entry points.
CutoffResult cutoff_from_values(std::span<const double> descending, std::size_t rank, CutoffMethod method);
CutoffResult two_cutoffs_from_values(std::span<const double> descending, std::size_t rank,
                                     std::size_t min_separation, CutoffMethod method);

/// GEGV: the chain on the finite generalized values of (A, B). Infinite
/// values are excluded from the chain and counted into m.
CutoffResult gsvd_cutoff(const Matrix& a, const Matrix& b);
CutoffResult gsvd_cutoff(const linalg::GsvdResult& g);
/// Two-boundary variant of the generalized chain.
CutoffResult gsvd_two_cutoffs(const linalg::GsvdResult& g, std::size_t min_separation = 1);
/// Generalized values given directly (non-increasing, infinite_value allowed first).
CutoffResult gsvd_cutoff_from_values(std::span<const double> generalized_values);

struct Separation {
    Matrix dominant;
    Matrix weak;
    Matrix noise;
};

/// (sum 1..m, sum m+1..f, sum f+1..r); without f the weak part runs to r and
/// noise is zero. Index ranges are clipped to the numerical rank.
Separation separate(const linalg::SpectrumResult& spec, const CutoffResult& cut);

/// GSVD analogue: bands of U C X^T with alpha zeroed outside each band.
Separation separate(const linalg::GsvdResult& g, const CutoffResult& cut);

std::string_view cutoff_method_name(CutoffMethod method) noexcept;

}  // namespace subspace::signal
