#pragma once
// Window texture metrics (information density, singular smoothness) and a
// sliding-window scanner over grayscale images.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "subspace/linalg.hpp"
#include "subspace/matrix.hpp"

namespace subspace::image {

/// Row-major intensities in [0, 1].
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> pixels;

    GrayImage() = default;
    GrayImage(std::size_t w, std::size_t h, double fill = 0.0) : width(w), height(h), pixels(w * h, fill) {}

    double& at(std::size_t x, std::size_t y) noexcept { return pixels[y * width + x]; }
    double at(std::size_t x, std::size_t y) const noexcept { return pixels[y * width + x]; }

    /// Copy of the w x w window with top-left corner (x0, y0) as a matrix (rows = y).
    Matrix window(std::size_t x0, std::size_t y0, std::size_t w) const;

    /// Throws Error(invalid_input) for sides < 2, a size mismatch, or pixels outside [0, 1].
    void validate() const;

    friend bool operator==(const GrayImage&, const GrayImage&) = default;
};

enum class OrderKind { fixed, automatic };

struct OrderMode {
    OrderKind kind = OrderKind::fixed;
    std::size_t order = 1;  // fixed
    double delta = 0.0;     // automatic

    static OrderMode fixed(std::size_t n) { return {OrderKind::fixed, n, 0.0}; }
    static OrderMode automatic(double delta) { return {OrderKind::automatic, 0, delta}; }
};

struct WindowConfig {
    std::size_t window_size = 5;
    std::size_t stride = 5;
    OrderMode order_mode;
    double epsilon_guard = 1e-6;
    std::size_t density_lo = 1;
    std::optional<std::size_t> density_hi;  // default: numerical rank of each window

    /// Throws Error(config) when the configuration does not fit the image.
    void validate(const GrayImage& img) const;
};

enum class Metric { smoothness, information_density };

std::string_view metric_name(Metric m) noexcept;

struct WorkCounters {
    std::size_t windows = 0;
    std::size_t decompositions = 0;
    std::size_t terms = 0;  // summed metric terms over all windows
};

struct SmoothnessMap {
    std::vector<double> grid;  // row-major, grid_rows x grid_cols
    std::size_t grid_cols = 0;
    std::size_t grid_rows = 0;
    WindowConfig config;
    Metric metric = Metric::smoothness;
    std::vector<std::size_t> orders;  // smoothness order used per window (empty for density)
    WorkCounters counters;

    double at(std::size_t col, std::size_t row) const noexcept { return grid[row * grid_cols + col]; }
};

/// floor((side - w) / stride) + 1, or 0 when w > side.
std::size_t grid_extent(std::size_t side, std::size_t window, std::size_t stride) noexcept;

/// sqrt(sum_{i=lo}^{hi} sigma_i^2), 1 <= lo <= hi <= rank(D).
double information_density(const Matrix& d, std::size_t lo, std::size_t hi);
double information_density_from_values(std::span<const double> descending, std::size_t rank, std::size_t lo,
                                       std::size_t hi);

/// Order-n smoothness on the guarded spectrum s_i = max(sigma_i, guard * sigma_1):
/// sqrt(sum_{i=1}^{n} (s_i^2 - s_{i+1}^2) / s_{i+1}^2).
double singular_smoothness(const Matrix& d, std::size_t n, double epsilon_guard = 1e-6);
double singular_smoothness_from_values(std::span<const double> descending, std::size_t n, double epsilon_guard = 1e-6);

/// Smallest n >= 1 with sigma_n - sigma_{n+1} <= delta; r - 1 when none qualifies.
std::size_t select_order(const linalg::SpectrumResult& spec, double delta);
std::size_t select_order_from_values(std::span<const double> descending, std::size_t rank, double delta);

/// Evaluates the metric on every window position. threads = 0 picks the
/// hardware concurrency; each window writes only its own grid cell.
SmoothnessMap sliding_scan(const GrayImage& img, const WindowConfig& cfg, Metric metric, unsigned threads = 0);

enum class Polarity { above, below };

struct Mask {
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::vector<std::uint8_t> cells;  // row-major, 0 or 1

    std::uint8_t at(std::size_t col, std::size_t row) const noexcept { return cells[row * cols + col]; }
    std::size_t count() const noexcept;
};

Mask threshold_map(const SmoothnessMap& map, double theta, Polarity polarity);

/// Threshold between the two clusters of a 1-D 2-means on log10 of the
/// map values (geometric midpoint of the cluster means).
double auto_threshold(const SmoothnessMap& map);

}  // namespace subspace::image
