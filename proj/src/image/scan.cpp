#include <algorithm>
#include <thread>
#include <vector>

#include "subspace/error.hpp"
#include "subspace/image.hpp"

namespace subspace::image {

namespace {

struct CellResult {
    double value = 0.0;
    std::size_t order = 0;
    std::size_t terms = 0;
};

CellResult evaluate(const Matrix& d, const WindowConfig& cfg, Metric metric) {
    const std::vector<double> s = linalg::singular_values(d);
    const std::size_t rank = linalg::numerical_rank(s, linalg::default_rank_tolerance(d.rows(), d.cols()));
    CellResult out;
    if (metric == Metric::information_density) {
        const std::size_t hi = std::min(cfg.density_hi.value_or(rank), rank);
        if (cfg.density_lo > hi) return out;  // empty range (e.g. an all-zero window)
        out.value = information_density_from_values(s, rank, cfg.density_lo, hi);
        out.terms = hi - cfg.density_lo + 1;
        return out;
    }
    std::size_t n = cfg.order_mode.order;
    if (cfg.order_mode.kind == OrderKind::automatic) {
        n = rank < 2 ? 1 : select_order_from_values(s, rank, cfg.order_mode.delta);
    }
    out.value = singular_smoothness_from_values(s, n, cfg.epsilon_guard);
    out.order = n;
    out.terms = n;
    return out;
}

}  // namespace

SmoothnessMap sliding_scan(const GrayImage& img, const WindowConfig& cfg, Metric metric, unsigned threads) {
    img.validate();
    cfg.validate(img);

    SmoothnessMap map;
    map.config = cfg;
    map.metric = metric;
    map.grid_cols = grid_extent(img.width, cfg.window_size, cfg.stride);
    map.grid_rows = grid_extent(img.height, cfg.window_size, cfg.stride);
    const std::size_t total = map.grid_cols * map.grid_rows;
    std::vector<CellResult> cells(total);

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));

    auto work = [&](std::size_t first) {
        for (std::size_t idx = first; idx < total; idx += threads) {
            const std::size_t gx = idx % map.grid_cols;
            const std::size_t gy = idx / map.grid_cols;
            cells[idx] = evaluate(img.window(gx * cfg.stride, gy * cfg.stride, cfg.window_size), cfg, metric);
        }
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }

    map.grid.reserve(total);
    if (metric == Metric::smoothness) map.orders.reserve(total);
    for (const CellResult& c : cells) {
        map.grid.push_back(c.value);
        if (metric == Metric::smoothness) map.orders.push_back(c.order);
        map.counters.terms += c.terms;
    }
    map.counters.windows = total;
    map.counters.decompositions = total;
    return map;
}

}  // namespace subspace::image
