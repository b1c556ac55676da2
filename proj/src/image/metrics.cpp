#include <algorithm>
#include <cmath>
#include <string>

#include "subspace/error.hpp"
#include "subspace/image.hpp"

namespace subspace::image {

Matrix GrayImage::window(std::size_t x0, std::size_t y0, std::size_t w) const {
    Matrix d(w, w);
    for (std::size_t r = 0; r < w; ++r) {
        const double* src = pixels.data() + (y0 + r) * width + x0;
        std::copy(src, src + w, d.row(r).begin());
    }
    return d;
}

void GrayImage::validate() const {
    if (width < 2 || height < 2) throw Error(ErrorCode::invalid_input, "image sides must be >= 2");
    if (pixels.size() != width * height) throw Error(ErrorCode::invalid_input, "pixel count does not match image size");
    for (double p : pixels) {
        if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::invalid_input, "pixel outside [0, 1]");
    }
}

void WindowConfig::validate(const GrayImage& img) const {
    const std::size_t side = std::min(img.width, img.height);
    if (window_size < 2 || window_size > side) {
        throw Error(ErrorCode::config, "window size " + std::to_string(window_size) + " must lie in [2, " +
                                           std::to_string(side) + "]");
    }
    if (stride < 1) throw Error(ErrorCode::config, "stride must be >= 1");
    if (!(epsilon_guard > 0.0 && epsilon_guard < 1.0)) throw Error(ErrorCode::config, "epsilon guard must lie in (0, 1)");
    if (order_mode.kind == OrderKind::fixed) {
        if (order_mode.order < 1 || order_mode.order + 1 > window_size) {
            throw Error(ErrorCode::config, "smoothness order " + std::to_string(order_mode.order) +
                                               " needs 1 <= n <= window size - 1");
        }
    } else if (!(order_mode.delta >= 0.0) || !std::isfinite(order_mode.delta)) {
        throw Error(ErrorCode::config, "order delta must be finite and >= 0");
    }
    if (density_lo < 1 || (density_hi && (*density_hi < density_lo || *density_hi > window_size))) {
        throw Error(ErrorCode::config, "density range must satisfy 1 <= lo <= hi <= window size");
    }
}

std::string_view metric_name(Metric m) noexcept {
    return m == Metric::smoothness ? "smoothness" : "information-density";
}

std::size_t grid_extent(std::size_t side, std::size_t window, std::size_t stride) noexcept {
    if (window > side || stride == 0) return 0;
    return (side - window) / stride + 1;
}

double information_density_from_values(std::span<const double> descending, std::size_t rank, std::size_t lo,
                                       std::size_t hi) {
    if (lo < 1 || lo > hi || hi > rank) {
        throw Error(ErrorCode::range, "information_density: range [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                          "] outside [1, " + std::to_string(rank) + "]");
    }
    double sum = 0.0;
    for (std::size_t i = lo - 1; i < hi; ++i) sum += descending[i] * descending[i];
    return std::sqrt(sum);
}

double information_density(const Matrix& d, std::size_t lo, std::size_t hi) {
    const std::vector<double> s = linalg::singular_values(d);
    const std::size_t rank = linalg::numerical_rank(s, linalg::default_rank_tolerance(d.rows(), d.cols()));
    return information_density_from_values(s, rank, lo, hi);
}

double singular_smoothness_from_values(std::span<const double> descending, std::size_t n, double epsilon_guard) {
    if (!(epsilon_guard > 0.0 && epsilon_guard < 1.0)) {
        throw Error(ErrorCode::invalid_input, "singular_smoothness: guard must lie in (0, 1)");
    }
    if (n < 1 || n + 1 > descending.size()) {
        throw Error(ErrorCode::order, "singular_smoothness: order " + std::to_string(n) + " needs " +
                                          std::to_string(n + 1) + " singular values, have " +
                                          std::to_string(descending.size()));
    }
    const double sigma1 = descending[0];
    if (!(sigma1 > 0.0)) return std::sqrt(1.0 / (epsilon_guard * epsilon_guard) - 1.0);
    const double floor = epsilon_guard * sigma1;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ratio = std::max(descending[i], floor) / std::max(descending[i + 1], floor);
        sum += std::max(ratio * ratio - 1.0, 0.0);
    }
    return std::sqrt(sum);
}

double singular_smoothness(const Matrix& d, std::size_t n, double epsilon_guard) {
    return singular_smoothness_from_values(linalg::singular_values(d), n, epsilon_guard);
}

std::size_t select_order_from_values(std::span<const double> descending, std::size_t rank, double delta) {
    if (!(delta >= 0.0)) throw Error(ErrorCode::invalid_input, "select_order: delta must be >= 0");
    if (rank < 2) throw Error(ErrorCode::insufficient_rank, "select_order: rank " + std::to_string(rank) + " < 2");
    for (std::size_t n = 1; n < rank; ++n) {
        if (descending[n - 1] - descending[n] <= delta) return n;
    }
    return rank - 1;
}

std::size_t select_order(const linalg::SpectrumResult& spec, double delta) {
    return select_order_from_values(spec.singular_values, spec.numerical_rank, delta);
}

std::size_t Mask::count() const noexcept {
    return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

Mask threshold_map(const SmoothnessMap& map, double theta, Polarity polarity) {
    Mask mask;
    mask.cols = map.grid_cols;
    mask.rows = map.grid_rows;
    mask.cells.reserve(map.grid.size());
    for (double v : map.grid) {
        const bool hit = polarity == Polarity::above ? v >= theta : v <= theta;
        mask.cells.push_back(hit ? 1 : 0);
    }
    return mask;
}

double auto_threshold(const SmoothnessMap& map) {
    if (map.grid.empty()) throw Error(ErrorCode::invalid_input, "auto_threshold: empty map");
    std::vector<double> logs;
    logs.reserve(map.grid.size());
    for (double v : map.grid) logs.push_back(std::log10(std::max(v, 1e-300)));
    const auto [lo_it, hi_it] = std::minmax_element(logs.begin(), logs.end());
    double lo = *lo_it;
    double hi = *hi_it;
    if (lo == hi) return std::pow(10.0, lo);
    for (int iter = 0; iter < 100; ++iter) {
        const double cut = 0.5 * (lo + hi);
        double sum_lo = 0.0, sum_hi = 0.0;
        std::size_t n_lo = 0, n_hi = 0;
        for (double x : logs) {
            if (x <= cut) {
                sum_lo += x;
                ++n_lo;
            } else {
                sum_hi += x;
                ++n_hi;
            }
        }
        const double next_lo = sum_lo / static_cast<double>(n_lo);
        const double next_hi = n_hi ? sum_hi / static_cast<double>(n_hi) : hi;
        if (next_lo == lo && next_hi == hi) break;
        lo = next_lo;
        hi = next_hi;
    }
    return std::pow(10.0, 0.5 * (lo + hi));
}

}  // namespace subspace::image
