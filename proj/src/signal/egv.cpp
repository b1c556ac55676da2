#include <algorithm>
#include <cmath>
#include <string>

#include "subspace/error.hpp"
#include "subspace/signal.hpp"

namespace subspace::signal {

std::string_view cutoff_method_name(CutoffMethod method) noexcept {
    return method == CutoffMethod::svd_egv ? "svd-egv" : "gsvd-egv";
}

std::vector<double> energy_gaps(std::span<const double> descending, std::size_t rank) {
    const std::size_t p = descending.size();
    std::vector<double> gaps(p, 0.0);
    // Delta G_k = 2 sigma_{k+1}^2; sigma_{k+1} is descending[k] (0-based).
    for (std::size_t k = 1; k < p && k < rank; ++k) gaps[k - 1] = 2.0 * descending[k] * descending[k];
    return gaps;
}

std::vector<double> energy_gaps(const linalg::SpectrumResult& spec) {
    return energy_gaps(spec.singular_values, spec.numerical_rank);
}

double energy_gap(const linalg::SpectrumResult& spec, std::size_t k) {
    const std::size_t p = spec.singular_values.size();
    if (k < 1 || k > p) {
        throw Error(ErrorCode::range, "energy_gap: k=" + std::to_string(k) + " outside [1, " + std::to_string(p) + "]");
    }
    if (k >= spec.numerical_rank) return 0.0;
    const double next = spec.singular_values[k];
    return 2.0 * next * next;
}

EgvProfile singular_energies(std::span<const double> gaps) {
    EgvProfile profile;
    profile.gaps.assign(gaps.begin(), gaps.end());
    for (double g : gaps) {
        if (!(g >= 0.0) || !std::isfinite(g)) {
            throw Error(ErrorCode::invalid_input, "singular_energies: gaps must be finite and nonnegative");
        }
        profile.gamma += g;
    }
    if (!(profile.gamma > 0.0)) {
        throw Error(ErrorCode::degenerate_spectrum, "degenerate spectrum: every energy gap is zero");
    }
    profile.singular_energies.resize(gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i) {
        const double ratio = gaps[i] / profile.gamma;
        profile.singular_energies[i] = ratio > 0.0 ? -ratio * std::log(ratio) : 0.0;
    }
    return profile;
}

std::vector<double> egv(const EgvProfile& profile) {
    const auto& se = profile.singular_energies;
    if (se.size() < 2) return {};
    std::vector<double> v(se.size() - 1);
    v[0] = se[0];
    for (std::size_t k = 1; k < v.size(); ++k) v[k] = se[k] - se[k - 1];
    return v;
}

EgvProfile egv_profile(std::span<const double> descending, std::size_t rank) {
    EgvProfile profile = singular_energies(energy_gaps(descending, rank));
    profile.variations = egv(profile);
    return profile;
}

EgvProfile egv_profile(const linalg::SpectrumResult& spec) {
    return egv_profile(spec.singular_values, spec.numerical_rank);
}

namespace {

std::size_t argmax_first(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < v.size(); ++k)
        if (v[k] > v[best]) best = k;
    return best;
}

// Strict local maxima of |v| (one-sided at the ends), strongest first.
std::vector<std::size_t> magnitude_peaks(const std::vector<double>& v) {
    std::vector<std::size_t> peaks;
    const std::size_t n = v.size();
    for (std::size_t k = 0; k < n; ++k) {
        const double here = std::abs(v[k]);
        const bool left = k == 0 || here > std::abs(v[k - 1]);
        const bool right = k + 1 == n || here > std::abs(v[k + 1]);
        if (left && right) peaks.push_back(k);
    }
    std::stable_sort(peaks.begin(), peaks.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(v[a]) > std::abs(v[b]); });
    return peaks;
}

void require_rank(std::size_t rank, std::size_t needed, const char* what) {
    if (rank < needed) {
        throw Error(ErrorCode::insufficient_rank, std::string(what) + ": rank " + std::to_string(rank) +
                                                      " is below the required " + std::to_string(needed));
    }
}

}  // namespace

CutoffResult cutoff_from_values(std::span<const double> descending, std::size_t rank, CutoffMethod method) {
    const EgvProfile profile = egv_profile(descending, rank);
    require_rank(rank, 2, "find_cutoff");
    const std::size_t k = argmax_first(profile.variations);
    CutoffResult out;
    out.method = method;
    out.m = k + 1;
    out.peak_m = profile.variations[k];
    return out;
}

CutoffResult two_cutoffs_from_values(std::span<const double> descending, std::size_t rank,
                                     std::size_t min_separation, CutoffMethod method) {
    const EgvProfile profile = egv_profile(descending, rank);
    require_rank(rank, 3, "find_two_cutoffs");
    const std::vector<double>& v = profile.variations;
    const std::vector<std::size_t> peaks = magnitude_peaks(v);

    CutoffResult out;
    out.method = method;
    if (peaks.empty()) {
        const std::size_t k = argmax_first(v);
        out.m = k + 1;
        out.peak_m = v[k];
        out.warnings.push_back("no local maximum of |V|; single-source result");
        return out;
    }
    const std::size_t first = peaks.front();
    for (std::size_t i = 1; i < peaks.size(); ++i) {
        const std::size_t other = peaks[i];
        const std::size_t distance = other > first ? other - first : first - other;
        if (distance >= min_separation) {
            const std::size_t lo = std::min(first, other);
            const std::size_t hi = std::max(first, other);
            out.m = lo + 1;
            out.f = hi + 1;
            out.peak_m = v[lo];
            out.peak_f = v[hi];
            return out;
        }
    }
    out.m = first + 1;
    out.peak_m = v[first];
    out.warnings.push_back("fewer than two separated peaks; single-source result");
    return out;
}

CutoffResult find_cutoff(const linalg::SpectrumResult& spec) {
    return cutoff_from_values(spec.singular_values, spec.numerical_rank, CutoffMethod::svd_egv);
}

CutoffResult find_two_cutoffs(const linalg::SpectrumResult& spec, std::size_t min_separation) {
    return two_cutoffs_from_values(spec.singular_values, spec.numerical_rank, min_separation, CutoffMethod::svd_egv);
}

namespace {

template <typename Chain>
CutoffResult generalized_chain(std::span<const double> values, Chain&& chain) {
    if (values.empty()) throw Error(ErrorCode::insufficient_rank, "gsvd_cutoff: no generalized values");
    if (!std::is_sorted(values.begin(), values.end(), std::greater<>())) {
        throw Error(ErrorCode::invalid_input, "gsvd_cutoff: generalized values must be non-increasing");
    }
    std::size_t infinite = 0;
    while (infinite < values.size() && linalg::is_infinite_value(values[infinite])) ++infinite;
    const std::span<const double> finite = values.subspan(infinite);
    for (double g : finite) {
        if (!std::isfinite(g) || g < 0.0) throw Error(ErrorCode::invalid_input, "gsvd_cutoff: invalid generalized value");
    }
    const std::size_t rank =
        linalg::numerical_rank(finite, linalg::default_rank_tolerance(finite.size(), finite.size()));
    CutoffResult out = chain(finite, rank);
    out.method = CutoffMethod::gsvd_egv;
    out.infinite_count = infinite;
    if (infinite > 0) {
        out.m += infinite;
        if (out.f) *out.f += infinite;
        out.warnings.push_back(std::to_string(infinite) +
                               " infinite generalized value(s) excluded from the chain and assigned to the dominant part");
    }
    return out;
}

}  // namespace

CutoffResult gsvd_cutoff_from_values(std::span<const double> generalized_values) {
    return generalized_chain(generalized_values, [](std::span<const double> finite, std::size_t rank) {
        return cutoff_from_values(finite, rank, CutoffMethod::gsvd_egv);
    });
}

CutoffResult gsvd_cutoff(const linalg::GsvdResult& g) { return gsvd_cutoff_from_values(g.generalized_values); }

CutoffResult gsvd_cutoff(const Matrix& a, const Matrix& b) {
    return gsvd_cutoff(linalg::gsvd(a, b, linalg::BasisMode::thin));
}

CutoffResult gsvd_two_cutoffs(const linalg::GsvdResult& g, std::size_t min_separation) {
    return generalized_chain(g.generalized_values, [min_separation](std::span<const double> finite, std::size_t rank) {
        return two_cutoffs_from_values(finite, rank, min_separation, CutoffMethod::gsvd_egv);
    });
}

}  // namespace subspace::signal
