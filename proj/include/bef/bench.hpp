#pragma once

#include "bef/blind_algos.hpp"

#include <string>
#include <vector>

namespace bef {

// Ordinary least squares y = slope*x + intercept, plus R^2.
struct FitResult {
    AffineFit fit;
    double r_squared = 1.0;
};

FitResult fit_affine(std::span<const double> xs, std::span<const double> ys);

// Affine least-squares fit over (depth, seconds) points plus a projection for
// the requested depth range. Needs at least two points.
struct Extrapolation {
    AffineFit fit;
    std::vector<double> residuals;
    std::vector<std::pair<double, double>> projection;
};

Extrapolation fit_extrapolation(std::span<const std::pair<double, double>> series,
                                double project_from, double project_to, double step = 1.0);

struct PrimitiveBenchRow {
    std::string name;
    std::size_t bits = 0;
    double seconds = 0.0;
    std::uint64_t gates = 0;
    std::uint64_t peak_rss_bytes = 0;
};

struct TreeBenchRow {
    std::size_t depth = 0;
    double train_seconds = 0.0;
    double predict_seconds = 0.0;
    std::uint64_t gates = 0;
    OpCounts ops;
    std::uint64_t peak_rss_bytes = 0;
};

struct BenchReport {
    std::string backend;
    std::vector<PrimitiveBenchRow> primitives;
    std::vector<TreeBenchRow> tree_series;
    Extrapolation train_extrapolation;  // filled when >= 2 tree rows
    Extrapolation predict_extrapolation;

    std::string to_json() const;
    std::string primitives_csv() const;
    std::string tree_csv() const;
};

// One timing row per blind primitive at the given input width.
std::vector<PrimitiveBenchRow> bench_primitives(Backend& backend, const ClientKey& key,
                                                std::size_t bits, std::uint64_t seed);

std::uint64_t peak_rss_bytes();

// Gate count of `op` on a scratch clear backend (counter difference).
template <typename Op>
std::uint64_t count_gates(Backend& backend, Op&& op) {
    const std::uint64_t before = backend.stats().snapshot().total_gates();
    op();
    return backend.stats().snapshot().total_gates() - before;
}

}  // namespace bef
