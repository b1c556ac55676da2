#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "subspace/error.hpp"
#include "subspace/signal.hpp"
#include "support.hpp"

using namespace subspace;
using namespace subspace::signal;
using testing_support::random_matrix;
using testing_support::relative_error;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no subspace::Error thrown";
    return ErrorCode::io;
}

linalg::SpectrumResult spectrum_of(std::vector<double> sigma) {
    return linalg::svd(Matrix::diagonal(sigma));
}

ChannelSet channels(std::vector<std::vector<double>> c) {
    ChannelSet s;
    s.channels = std::move(c);
    return s;
}

void expect_values(const std::vector<double>& got, const std::vector<double>& want, double tol) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

}  // namespace

// channel sets and embedding

TEST(ChannelSet, ValidationErrors) {
    EXPECT_EQ(code_of([] { channels({}).validate(); }), ErrorCode::invalid_input);
    EXPECT_EQ(code_of([] { channels({{1.0}}).validate(); }), ErrorCode::invalid_input);
    EXPECT_EQ(code_of([] { channels({{1, 2}, {1, 2, 3}}).validate(); }), ErrorCode::invalid_input);
    EXPECT_EQ(code_of([] { channels({{1, std::nan("")}}).validate(); }), ErrorCode::invalid_input);
    ChannelSet labelled = channels({{1, 2}});
    labelled.labels = {"a", "b"};
    EXPECT_EQ(code_of([&] { labelled.validate(); }), ErrorCode::invalid_input);
}

TEST(Embed, HankelStrideTwo) {
    const Matrix m = embed(channels({{1, 2, 3, 4}}), EmbedLayout::hankel(2, 2));
    EXPECT_EQ(m, (Matrix{{1, 3}, {2, 4}}));
}

TEST(Embed, ChannelColumns) {
    const std::vector<std::size_t> offsets{0, 0};
    const Matrix m = embed(channels({{1, 2, 3}, {4, 5, 6}}), EmbedLayout::channel_columns(3, offsets));
    EXPECT_EQ(m, (Matrix{{1, 4}, {2, 5}, {3, 6}}));
}

TEST(Embed, HankelStrideOne) {
    const Matrix m = embed(channels({{1, 2, 3}}), EmbedLayout::hankel(2, 1));
    EXPECT_EQ(m, (Matrix{{1, 2}, {2, 3}}));
}

TEST(Embed, OffsetsAndErrors) {
    const ChannelSet s = channels({{1, 2, 3, 4, 5}, {6, 7, 8, 9, 10}});
    const std::vector<std::size_t> offsets{2, 1};
    EXPECT_EQ(embed(s, EmbedLayout::channel_columns(3, offsets)), (Matrix{{3, 7}, {4, 8}, {5, 9}}));
    const std::vector<std::size_t> too_far{3, 0};
    EXPECT_EQ(code_of([&] { embed(s, EmbedLayout::channel_columns(3, too_far)); }), ErrorCode::range);
    EXPECT_EQ(code_of([&] { embed(s, EmbedLayout::hankel(6, 1)); }), ErrorCode::range);
    EXPECT_EQ(code_of([&] { embed(s, EmbedLayout::hankel(2, 1, 2)); }), ErrorCode::range);
    EXPECT_EQ(code_of([&] { embed(s, EmbedLayout::hankel(1, 1)); }), ErrorCode::layout);
    EXPECT_EQ(code_of([&] { embed(s, EmbedLayout::hankel(2, 0)); }), ErrorCode::layout);
}

TEST(Unembed, HankelDiagonalAveraging) {
    const ChannelSet out = unembed(Matrix{{1, 2}, {2, 3}}, EmbedLayout::hankel(2, 1), 3);
    ASSERT_EQ(out.channel_count(), 1u);
    EXPECT_EQ(out.channels[0], (std::vector<double>{1, 2, 3}));
    // Disagreeing entries are averaged.
    const ChannelSet avg = unembed(Matrix{{1, 4}, {2, 3}}, EmbedLayout::hankel(2, 1), 3);
    EXPECT_EQ(avg.channels[0], (std::vector<double>{1, 3, 3}));
}

TEST(Unembed, NonOverlappingRoundTripIsExact) {
    synth::Rng rng(1);
    ChannelSet s;
    for (int c = 0; c < 3; ++c) {
        std::vector<double> ch(40);
        for (double& v : ch) v = rng.normal();
        s.channels.push_back(ch);
    }
    const EmbedLayout whole = EmbedLayout::whole_channels(s);
    EXPECT_EQ(unembed(embed(s, whole), whole, 40).channels, s.channels);

    ChannelSet one = channels({s.channels[0]});
    const EmbedLayout blocks = EmbedLayout::hankel(8, 8);
    EXPECT_EQ(unembed(embed(one, blocks), blocks, 40).channels, one.channels);
}

TEST(Unembed, HankelRoundTripWithinTolerance) {
    synth::Rng rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> x(50 + trial);
        for (double& v : x) v = rng.normal();
        const ChannelSet s = channels({x});
        const EmbedLayout layout = EmbedLayout::hankel(2 + trial % 9, 1 + trial % 3);
        const ChannelSet back = unembed(embed(s, layout), layout, x.size());
        const std::size_t covered = (layout.column_count(x.size()) - 1) * layout.stride + layout.window_length;
        for (std::size_t i = 0; i < covered; ++i) EXPECT_LE(std::abs(back.channels[0][i] - x[i]), 1e-12);
        for (std::size_t i = covered; i < x.size(); ++i) EXPECT_EQ(back.channels[0][i], 0.0);
    }
}

TEST(Unembed, LayoutErrors) {
    EXPECT_EQ(code_of([] { unembed(Matrix(3, 2), EmbedLayout::hankel(2, 1), 3); }), ErrorCode::layout);
    const std::vector<std::size_t> offsets{0};
    EXPECT_EQ(code_of([&] { unembed(Matrix(3, 2), EmbedLayout::channel_columns(3, offsets), 3); }), ErrorCode::layout);
    EXPECT_EQ(code_of([] { unembed(Matrix(2, 3), EmbedLayout::hankel(2, 1), 3); }), ErrorCode::layout);
}

// energy gaps

TEST(EnergyGap, Examples) {
    const auto s21 = spectrum_of({2, 1});
    EXPECT_DOUBLE_EQ(energy_gap(s21, 1), 2.0);
    EXPECT_DOUBLE_EQ(energy_gap(s21, 2), 0.0);
    EXPECT_DOUBLE_EQ(energy_gap(spectrum_of({5, 3, 1}), 1), 18.0);
    EXPECT_EQ(code_of([&] { energy_gap(s21, 0); }), ErrorCode::range);
    EXPECT_EQ(code_of([&] { energy_gap(s21, 3); }), ErrorCode::range);
}

TEST(EnergyGap, MatchesBruteForceFrobenius) {
    synth::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_matrix(3 + rng.next() % 8, 2 + rng.next() % 6, rng);
        const auto spec = linalg::svd(a);
        const std::size_t r = spec.numerical_rank;
        auto gap_total = [&](std::size_t k) {
            const double head = linalg::frobenius_energy(linalg::band_sum(spec, 1, k));
            const double tail = linalg::frobenius_energy(linalg::band_sum(spec, k + 1, r));
            return head - tail;
        };
        for (std::size_t k = 1; k <= r; ++k) {
            const double brute = gap_total(k + 1) - gap_total(k);
            const double got = energy_gap(spec, k);
            EXPECT_LE(std::abs(got - brute), 1e-8 * std::max(linalg::frobenius_energy(a), 1e-300));
        }
    }
}

// singular energies and variations

TEST(SingularEnergies, Examples) {
    const auto equal = singular_energies(std::vector<double>{0.7, 0.7, 0.7});
    for (double se : equal.singular_energies) EXPECT_NEAR(se, 0.36620409622270323, 1e-15);
    EXPECT_EQ(singular_energies(std::vector<double>{1, 0}).singular_energies, (std::vector<double>{0, 0}));
    const auto p31 = singular_energies(std::vector<double>{3, 1});
    expect_values(p31.singular_energies, {0.2157615543388357, 0.34657359027997265}, 1e-15);
    EXPECT_DOUBLE_EQ(p31.gamma, 4.0);
}

TEST(SingularEnergies, Errors) {
    EXPECT_EQ(code_of([] { singular_energies(std::vector<double>{0, 0, 0}); }), ErrorCode::degenerate_spectrum);
    EXPECT_EQ(code_of([] { singular_energies(std::vector<double>{1, -1}); }), ErrorCode::invalid_input);
}

TEST(Egv, Examples) {
    EgvProfile p;
    p.singular_energies = {0.2, 0.5, 0.1};
    expect_values(egv(p), {0.2, 0.3}, 1e-15);
    p.singular_energies = {0.3, 0.3, 0.3, 0.3};
    EXPECT_EQ(egv(p), (std::vector<double>{0.3, 0, 0}));
    p.singular_energies = {0, 0, 0};
    EXPECT_EQ(egv(p), (std::vector<double>{0, 0}));
}

TEST(EgvProfile, Invariants) {
    synth::Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const auto spec = linalg::svd(random_matrix(12, 2 + rng.next() % 8, rng));
        const EgvProfile p = egv_profile(spec);
        for (std::size_t k = 0; k + 1 < p.gaps.size(); ++k) EXPECT_GE(p.gaps[k], p.gaps[k + 1]);
        for (double se : p.singular_energies) {
            EXPECT_GE(se, 0.0);
            EXPECT_LE(se, std::exp(-1.0) + 1e-15);
        }
        double tail = 0.0;
        for (std::size_t j = 1; j < spec.numerical_rank; ++j) tail += spec.singular_values[j] * spec.singular_values[j];
        EXPECT_NEAR(p.gamma, 2.0 * tail, 1e-8 * 2.0 * tail);
        EXPECT_EQ(p.variations.size(), spec.singular_values.size() - 1);
    }
}

TEST(EgvProfile, SimplifiedGapsGiveSameArgmax) {
    synth::Rng rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const auto spec = linalg::svd(random_matrix(10, 6, rng));
        std::vector<double> half = energy_gaps(spec);
        for (double& g : half) g *= 0.5;
        EgvProfile simplified = singular_energies(half);
        const auto v = egv(simplified);
        const std::size_t m = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin()) + 1;
        EXPECT_EQ(m, find_cutoff(spec).m);
    }
}

// cutoffs

TEST(FindCutoff, TwoPlateauSpectrum) {
    const auto spec = spectrum_of({10, 9, 0.5, 0.4});
    expect_values(egv_profile(spec).variations,
                  {0.0050235331530433032, 0.012743917027234847, -0.0055191670124428536}, 1e-15);
    const CutoffResult cut = find_cutoff(spec);
    EXPECT_EQ(cut.m, 2u);
    EXPECT_FALSE(cut.f);
    EXPECT_EQ(cut.method, CutoffMethod::svd_egv);
    EXPECT_NEAR(cut.peak_m, 0.012743917027234847, 1e-15);
}

TEST(FindCutoff, SingleInteriorGap) {
    const auto spec = spectrum_of({3, 3e-6});
    EXPECT_EQ(egv_profile(spec).variations, (std::vector<double>{0.0}));
    EXPECT_EQ(find_cutoff(spec).m, 1u);
}

TEST(FindCutoff, ScaleInvariant) {
    synth::Rng rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_matrix(9, 5, rng);
        const std::size_t m = find_cutoff(linalg::svd(a)).m;
        for (double c : {0.01, 1000.0}) EXPECT_EQ(find_cutoff(linalg::svd(c * a)).m, m);
    }
}

TEST(FindCutoff, ConstantSingleChannelIsDegenerate) {
    const Matrix a{{2}, {2}, {2}};
    EXPECT_EQ(code_of([&] { find_cutoff(linalg::svd(a)); }), ErrorCode::degenerate_spectrum);
}

TEST(FindTwoCutoffs, TwoDrops) {
    const auto spec = spectrum_of({10, 9, 1, 0.9, 0.01});
    expect_values(egv_profile(spec).variations,
                  {0.021617789091443494, 0.031715681519369737, -0.0080722094432169162, -0.045244805577750868}, 1e-15);
    const CutoffResult cut = find_two_cutoffs(spec);
    EXPECT_EQ(cut.m, 2u);
    ASSERT_TRUE(cut.f);
    EXPECT_EQ(*cut.f, 4u);
    EXPECT_NEAR(*cut.peak_f, -0.045244805577750868, 1e-15);
    EXPECT_TRUE(cut.warnings.empty());
}

TEST(FindTwoCutoffs, ShortGeometricHasNoSecondPeak) {
    const auto spec = spectrum_of({0.5, 0.25, 0.125});
    expect_values(egv_profile(spec).variations, {0.1785148410513678, 0.14337274143545227}, 1e-15);
    const CutoffResult cut = find_two_cutoffs(spec);
    EXPECT_EQ(cut.m, 1u);
    EXPECT_FALSE(cut.f);
    EXPECT_FALSE(cut.warnings.empty());
}

TEST(FindTwoCutoffs, LongGeometricMatchesOracle) {
    std::vector<double> sigma;
    for (int i = 1; i <= 8; ++i) sigma.push_back(std::ldexp(1.0, -i));
    const auto spec = spectrum_of(sigma);
    expect_values(egv_profile(spec).variations,
                  {0.21572894362438925, 0.09814935083998823, -0.17042220620871307, -0.091345437531855798,
                   -0.035021330877883332, -0.011801575593200679, -0.0037119546167326311},
                  1e-15);
    const CutoffResult cut = find_two_cutoffs(spec);
    EXPECT_EQ(cut.m, 1u);
    ASSERT_TRUE(cut.f);
    EXPECT_EQ(*cut.f, 3u);
}

TEST(FindTwoCutoffs, ExactPlateausBeyondRank) {
    const double b = 0.0707106781186548;
    const CutoffResult cut = two_cutoffs_from_values(std::vector<double>{1, 1, b, b, 0, 0, 0, 0}, 4, 1,
                                                     CutoffMethod::svd_egv);
    EXPECT_EQ(cut.m, 2u);
    ASSERT_TRUE(cut.f);
    EXPECT_EQ(*cut.f, 4u);
}

TEST(FindTwoCutoffs, MinSeparationDropsClosePeak) {
    const CutoffResult cut = find_two_cutoffs(spectrum_of({10, 9, 1, 0.9, 0.01}), 3);
    EXPECT_EQ(cut.m, 4u);
    EXPECT_FALSE(cut.f);
}

TEST(FindTwoCutoffs, NeedsRankThree) {
    EXPECT_EQ(code_of([] { find_two_cutoffs(spectrum_of({2, 1})); }), ErrorCode::insufficient_rank);
}

TEST(GsvdCutoff, IdentityReferenceMatchesSvd) {
    synth::Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = random_matrix(12, 6, rng);
        EXPECT_EQ(gsvd_cutoff(a, Matrix::identity(6)).m, find_cutoff(linalg::svd(a)).m);
    }
}

TEST(GsvdCutoff, InjectedValues) {
    const CutoffResult cut = gsvd_cutoff_from_values(std::vector<double>{10, 9, 0.5, 0.4});
    EXPECT_EQ(cut.m, 2u);
    EXPECT_EQ(cut.method, CutoffMethod::gsvd_egv);
    EXPECT_EQ(cut.infinite_count, 0u);
}

TEST(GsvdCutoff, InfiniteValuesCountIntoM) {
    const std::vector<double> values{linalg::infinite_value, 10, 9, 0.5, 0.4};
    const CutoffResult cut = gsvd_cutoff_from_values(values);
    EXPECT_EQ(cut.infinite_count, 1u);
    EXPECT_EQ(cut.m, 3u);
    EXPECT_EQ(cut.warnings.size(), 1u);
    EXPECT_EQ(code_of([] { gsvd_cutoff_from_values(std::vector<double>{1, 2}); }), ErrorCode::invalid_input);
}

// separation

TEST(Separate, FullTruncationIsInput) {
    synth::Rng rng(8);
    const Matrix a = random_matrix(6, 4, rng);
    const auto spec = linalg::svd(a);
    CutoffResult cut;
    cut.m = spec.numerical_rank;
    const Separation s = separate(spec, cut);
    EXPECT_LT(relative_error(s.dominant, a), 1e-12);
    EXPECT_EQ(s.weak, Matrix(6, 4));
    EXPECT_EQ(s.noise, Matrix(6, 4));
}

TEST(Separate, DiagonalBands) {
    const auto spec = linalg::svd(Matrix::diagonal(std::vector<double>{3, 2, 1}));
    CutoffResult cut;
    cut.m = 1;
    cut.f = 2;
    const Separation s = separate(spec, cut);
    EXPECT_LT(max_abs_diff(s.dominant, Matrix::diagonal(std::vector<double>{3, 0, 0})), 1e-15);
    EXPECT_LT(max_abs_diff(s.weak, Matrix::diagonal(std::vector<double>{0, 2, 0})), 1e-15);
    EXPECT_LT(max_abs_diff(s.noise, Matrix::diagonal(std::vector<double>{0, 0, 1})), 1e-15);
}

TEST(Separate, PartsSumToInput) {
    synth::Rng rng(9);
    const Matrix a = random_matrix(8, 5, rng);
    const auto spec = linalg::svd(a);
    for (std::size_t m = 1; m < 5; ++m) {
        for (std::size_t f = m + 1; f <= 5; ++f) {
            CutoffResult cut;
            cut.m = m;
            cut.f = f;
            const Separation s = separate(spec, cut);
            EXPECT_LT(relative_error(s.dominant + s.weak + s.noise, a), 1e-9);
        }
    }
}

TEST(Separate, GeneralizedPartsSumToInput) {
    synth::Rng rng(10);
    const Matrix a = random_matrix(10, 4, rng);
    const auto g = linalg::gsvd(a, random_matrix(7, 4, rng));
    CutoffResult cut;
    cut.m = 1;
    cut.f = 3;
    const Separation s = separate(g, cut);
    EXPECT_LT(relative_error(s.dominant + s.weak + s.noise, a), 1e-9);
}

TEST(Separate, RangeErrors) {
    const auto spec = linalg::svd(Matrix::diagonal(std::vector<double>{3, 2, 1}));
    CutoffResult cut;
    cut.m = 0;
    EXPECT_EQ(code_of([&] { separate(spec, cut); }), ErrorCode::range);
    cut.m = 2;
    cut.f = 2;
    EXPECT_EQ(code_of([&] { separate(spec, cut); }), ErrorCode::range);
    cut.f.reset();
    cut.m = 4;
    EXPECT_EQ(code_of([&] { separate(spec, cut); }), ErrorCode::range);
}
