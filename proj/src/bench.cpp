#include "bef/bench.hpp"

#include "json.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include <sys/resource.h>

namespace bef {

FitResult fit_affine(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw ValidationError("fit_affine needs at least two (x, y) points");
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw ValidationError("fit_affine: x values are all equal");
    FitResult result;
    result.fit.slope = (n * sxy - sx * sy) / denom;
    result.fit.intercept = (sy - result.fit.slope * sx) / n;

    const double mean_y = sy / n;
    double ss_res = 0, ss_tot = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - result.fit(xs[i]);
        ss_res += e * e;
        const double d = ys[i] - mean_y;
        ss_tot += d * d;
    }
    result.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
    return result;
}

Extrapolation fit_extrapolation(std::span<const std::pair<double, double>> series,
                                double project_from, double project_to, double step) {
    if (step <= 0.0) throw ValidationError("projection step must be positive");
    std::vector<double> xs, ys;
    for (const auto& [x, y] : series) {
        xs.push_back(x);
        ys.push_back(y);
    }
    Extrapolation out;
    out.fit = fit_affine(xs, ys).fit;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out.residuals.push_back(ys[i] - out.fit(xs[i]));
    }
    for (double x = project_from; x <= project_to + 1e-9; x += step) {
        out.projection.emplace_back(x, out.fit(x));
    }
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::vector<PrimitiveBenchRow> bench_primitives(Backend& backend, const ClientKey& key,
                                                std::size_t bits, std::uint64_t seed) {
    if (bits == 0 || bits > 63) throw ValidationError("bench width must be in [1, 63]");
    std::mt19937_64 rng(seed);
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
    const BitWord a = encrypt_word(backend, key, rng() & mask, bits);
    const BitWord b = encrypt_word(backend, key, rng() & mask, bits);
    const CipherBit cond = backend.encrypt_bit(key, (rng() & 1) != 0);

    std::vector<PrimitiveBenchRow> rows;
    const auto run = [&](const std::string& name, auto&& op) {
        const std::uint64_t before = backend.stats().snapshot().total_gates();
        const auto start = Clock::now();
        op();
        PrimitiveBenchRow row;
        row.name = name;
        row.bits = bits;
        row.seconds = seconds_since(start);
        row.gates = backend.stats().snapshot().total_gates() - before;
        row.peak_rss_bytes = peak_rss_bytes();
        rows.push_back(row);
    };

    run("compare", [&] { blind_compare(backend, a, b); });
    run("select", [&] { blind_select_word(backend, cond, a, b); });
    run("order", [&] { blind_order(backend, a, b, Direction::Ascending); });
    run("add", [&] { blind_add(backend, a, b); });
    run("inc_if", [&] { blind_inc_if(backend, a, cond); });
    run("dec", [&] { blind_dec(backend, a); });
    run("popcount", [&] { blind_popcount(backend, a.bits, bits + 1 > 63 ? 63 : bits + 1); });
    return rows;
}

std::uint64_t peak_rss_bytes() {
    struct rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) != 0) return 0;
    // ru_maxrss is kilobytes on Linux.
    return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
}

namespace {

nlohmann::json extrapolation_json(const Extrapolation& e) {
    nlohmann::json projection = nlohmann::json::array();
    for (const auto& [x, y] : e.projection) {
        projection.push_back({{"depth", x}, {"seconds", y}});
    }
    return nlohmann::json{{"slope", e.fit.slope},
                          {"intercept", e.fit.intercept},
                          {"residuals", e.residuals},
                          {"projection", projection}};
}

}  // namespace

std::string BenchReport::to_json() const {
    nlohmann::json primitives_json = nlohmann::json::array();
    for (const PrimitiveBenchRow& row : primitives) {
        primitives_json.push_back({{"name", row.name},
                                   {"bits", row.bits},
                                   {"seconds", row.seconds},
                                   {"gates", row.gates},
                                   {"peak_rss_bytes", row.peak_rss_bytes}});
    }
    nlohmann::json tree_json = nlohmann::json::array();
    for (const TreeBenchRow& row : tree_series) {
        tree_json.push_back({{"depth", row.depth},
                             {"train_seconds", row.train_seconds},
                             {"predict_seconds", row.predict_seconds},
                             {"gates", row.gates},
                             {"comparisons", row.ops.comparisons},
                             {"selections", row.ops.selections},
                             {"orderings", row.ops.orderings},
                             {"peak_rss_bytes", row.peak_rss_bytes}});
    }
    nlohmann::json j{{"backend", backend},
                     {"primitives", primitives_json},
                     {"tree_series", tree_json}};
    if (tree_series.size() >= 2) {
        j["train_extrapolation"] = extrapolation_json(train_extrapolation);
        j["predict_extrapolation"] = extrapolation_json(predict_extrapolation);
    }
    return j.dump(2);
}

std::string BenchReport::primitives_csv() const {
    std::ostringstream out;
    out << "name,bits,seconds,gates,peak_rss_bytes\n";
    for (const PrimitiveBenchRow& row : primitives) {
        out << row.name << ',' << row.bits << ',' << row.seconds << ',' << row.gates << ','
            << row.peak_rss_bytes << '\n';
    }
    return out.str();
}

std::string BenchReport::tree_csv() const {
    std::ostringstream out;
    out << "depth,train_seconds,predict_seconds,gates,comparisons,selections,orderings,"
           "peak_rss_bytes\n";
    for (const TreeBenchRow& row : tree_series) {
        out << row.depth << ',' << row.train_seconds << ',' << row.predict_seconds << ','
            << row.gates << ',' << row.ops.comparisons << ',' << row.ops.selections << ','
            << row.ops.orderings << ',' << row.peak_rss_bytes << '\n';
    }
    return out.str();
}

}  // namespace bef
