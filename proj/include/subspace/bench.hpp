#pragma once
// Timing and work-count harness for the cutoff and scan pipelines.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace subspace::bench {

struct BenchRecord {
    std::string suite;  // cutoff-svd, cutoff-gsvd, scan
    std::size_t size = 0;
    std::size_t rep = 0;
    double wall_ms = 0.0;
    std::size_t decompositions = 0;
    unsigned threads = 1;
};

/// Per size n: SVD + single cutoff on an n-sample, 4-channel synthetic matrix A
/// versus the generalized cutoff on (A, B) with B four further channels.
/// sizes >= 8, reps >= 3; one untimed warm-up per size and suite.
std::vector<BenchRecord> run_cutoff_bench(const std::vector<std::size_t>& sizes, std::size_t reps, std::uint64_t seed);

/// Smoothness scan with stride = window over a seeded image_side^2 texture.
std::vector<BenchRecord> run_scan_bench(const std::vector<std::size_t>& window_sizes, std::size_t image_side,
                                        std::size_t reps, std::uint64_t seed, unsigned threads = 1);

struct BenchSummary {
    std::string suite;
    std::size_t size = 0;
    std::size_t reps = 0;
    double median_ms = 0.0;
    std::size_t decompositions = 0;
};

/// Medians grouped by (suite, size) in first-seen order.
std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records);

/// suite,size,rep,milliseconds,decompositions,threads
std::string format_records_csv(const std::vector<BenchRecord>& records);

}  // namespace subspace::bench
