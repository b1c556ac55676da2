#include <algorithm>
#include <chrono>
#include <charconv>
#include <string>

#include "subspace/bench.hpp"
#include "subspace/error.hpp"
#include "subspace/image.hpp"
#include "subspace/signal.hpp"
#include "subspace/synth.hpp"

namespace subspace::bench {

namespace {

template <typename F>
double time_ms(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

Matrix columns(const Matrix& m, std::size_t first, std::size_t count) { return m.block(0, first, m.rows(), count); }

// QR of the stack, rank check on R, SVD of the A block of Q.
constexpr std::size_t gsvd_decompositions = 3;

}  // namespace

std::vector<BenchRecord> run_cutoff_bench(const std::vector<std::size_t>& sizes, std::size_t reps, std::uint64_t seed) {
    if (reps < 3) throw Error(ErrorCode::config, "cutoff bench needs reps >= 3");
    for (std::size_t n : sizes) {
        if (n < 8) throw Error(ErrorCode::config, "cutoff bench sizes must be >= 8");
    }
    std::vector<BenchRecord> records;
    for (std::size_t n : sizes) {
        synth::MixtureSpec spec;
        spec.samples = n;
        spec.channels = 8;
        spec.dominant_period = std::max(4.0, static_cast<double>(n) / 8.0);
        spec.seed = seed + n;
        const Matrix x = synth::channel_matrix(synth::gen_mixture(spec).signals);
        const Matrix a = columns(x, 0, 4);
        const Matrix b = columns(x, 4, 4);

        auto svd_method = [&] {
            volatile std::size_t m = signal::find_cutoff(linalg::svd(a, std::nullopt, linalg::BasisMode::thin)).m;
            (void)m;
        };
        auto gsvd_method = [&] {
            volatile std::size_t m = signal::gsvd_cutoff(linalg::gsvd(a, b, linalg::BasisMode::thin)).m;
            (void)m;
        };
        svd_method();
        for (std::size_t r = 0; r < reps; ++r) records.push_back({"cutoff-svd", n, r, time_ms(svd_method), 1, 1});
        gsvd_method();
        for (std::size_t r = 0; r < reps; ++r) {
            records.push_back({"cutoff-gsvd", n, r, time_ms(gsvd_method), gsvd_decompositions, 1});
        }
    }
    return records;
}

std::vector<BenchRecord> run_scan_bench(const std::vector<std::size_t>& window_sizes, std::size_t image_side,
                                        std::size_t reps, std::uint64_t seed, unsigned threads) {
    if (reps < 1) throw Error(ErrorCode::config, "scan bench needs reps >= 1");
    for (std::size_t w : window_sizes) {
        if (w < 2 || w > image_side) {
            throw Error(ErrorCode::config, "scan bench window " + std::to_string(w) + " must lie in [2, " +
                                               std::to_string(image_side) + "]");
        }
    }
    const synth::Texture tex = synth::gen_texture(synth::default_texture_spec(image_side, seed));
    std::vector<BenchRecord> records;
    for (std::size_t w : window_sizes) {
        image::WindowConfig cfg;
        cfg.window_size = w;
        cfg.stride = w;
        std::size_t decompositions = 0;
        auto scan = [&] {
            decompositions = image::sliding_scan(tex.image, cfg, image::Metric::smoothness, threads).counters.decompositions;
        };
        scan();
        for (std::size_t r = 0; r < reps; ++r) {
            const double ms = time_ms(scan);
            records.push_back({"scan", w, r, ms, decompositions, threads});
        }
    }
    return records;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records) {
    std::vector<BenchSummary> out;
    std::vector<std::vector<double>> times;
    for (const BenchRecord& rec : records) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const BenchSummary& s) { return s.suite == rec.suite && s.size == rec.size; });
        if (it == out.end()) {
            out.push_back({rec.suite, rec.size, 0, 0.0, rec.decompositions});
            times.emplace_back();
            it = out.end() - 1;
        }
        times[static_cast<std::size_t>(it - out.begin())].push_back(rec.wall_ms);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::vector<double>& t = times[i];
        std::sort(t.begin(), t.end());
        const std::size_t n = t.size();
        out[i].reps = n;
        out[i].median_ms = n % 2 ? t[n / 2] : 0.5 * (t[n / 2 - 1] + t[n / 2]);
    }
    return out;
}

std::string format_records_csv(const std::vector<BenchRecord>& records) {
    std::string out = "suite,size,rep,milliseconds,decompositions,threads\n";
    for (const BenchRecord& r : records) {
        char buf[32];
        const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, r.wall_ms);
        out += r.suite + "," + std::to_string(r.size) + "," + std::to_string(r.rep) + "," + std::string(buf, ptr) + "," +
               std::to_string(r.decompositions) + "," + std::to_string(r.threads) + "\n";
    }
    return out;
}

}  // namespace subspace::bench
