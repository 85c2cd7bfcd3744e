#pragma once

#include "bef/blind_core.hpp"

namespace bef {

struct KeyedTuple {
    BitWord key;
    BitWord payload;
};

BitWord blind_min(Backend& backend, std::span<const BitWord> values);
BitWord blind_max(Backend& backend, std::span<const BitWord> values);

// Insertion-style compare-and-swap sort: exactly n(n-1)/2 keyed orderings.
// Stable: equal keys keep their input order.
std::vector<KeyedTuple> blind_sort(Backend& backend, std::span<const KeyedTuple> tuples,
                                   Direction direction = Direction::Ascending);

// Payload of the smallest key; ties resolve to the earliest input position.
KeyedTuple blind_argmin(Backend& backend, std::span<const KeyedTuple> tuples);

struct AffineFit {
    double slope = 0.0;
    double intercept = 0.0;

    double operator()(double x) const { return slope * x + intercept; }
};

// Per-operation cost curves in seconds as a function of input bits. Defaults
// are the published measurements; replace with locally fitted values via
// from_json when extrapolating on different hardware.
struct CostModel {
    AffineFit comparison{52.2, -30.29};
    AffineFit selection{156.6, -82.34};
    AffineFit ordering{12.79, 492.3};

    static CostModel from_json(const std::string& json_text);
    std::string to_json() const;
};

// a*f(x) + b*g(x) + c*h(x): projected seconds for a comparisons, b selections
// and c orderings over x-bit inputs.
double cost_eval(double x, double a, double b, double c, const CostModel& model = {});

struct OpCounts {
    std::uint64_t comparisons = 0;
    std::uint64_t selections = 0;
    std::uint64_t orderings = 0;

    OpCounts& operator+=(const OpCounts& other);
    friend OpCounts operator+(OpCounts a, const OpCounts& b) { return a += b; }
    friend bool operator==(const OpCounts&, const OpCounts&) = default;
};

// Analytic blind-op counts for training a complete depth-d tree on n rows and
// m features. The root feature-selection stage contributes (m, n*m, 3m); each
// of the 2^level nodes at levels 1..d contributes (m, 2*n*m, 3m). These
// formulas are the counting definition the live counters are checked against.
OpCounts count_ops(std::uint64_t n_rows, std::uint64_t m_features, std::uint64_t depth);

OpCounts feature_selection_ops(std::uint64_t n_rows, std::uint64_t m_features);
OpCounts child_node_ops(std::uint64_t n_rows, std::uint64_t m_features);

}  // namespace bef
