#include "bef/blind_algos.hpp"

#include "json.hpp"

namespace bef {

BitWord blind_min(Backend& backend, std::span<const BitWord> values) {
    if (values.empty()) throw ValidationError("blind_min: empty list");
    BitWord best = values[0];
    for (std::size_t i = 1; i < values.size(); ++i) {
        best = blind_order(backend, best, values[i], Direction::Ascending).low;
    }
    return best;
}

BitWord blind_max(Backend& backend, std::span<const BitWord> values) {
    if (values.empty()) throw ValidationError("blind_max: empty list");
    BitWord best = values[0];
    for (std::size_t i = 1; i < values.size(); ++i) {
        best = blind_order(backend, best, values[i], Direction::Ascending).high;
    }
    return best;
}

std::vector<KeyedTuple> blind_sort(Backend& backend, std::span<const KeyedTuple> tuples,
                                   Direction direction) {
    std::vector<KeyedTuple> out(tuples.begin(), tuples.end());
    for (std::size_t i = 1; i < out.size(); ++i) {
        for (std::size_t j = i; j > 0; --j) {
            auto [first, second] =
                blind_order_keyed(backend, KeyedPair{out[j - 1].key, out[j - 1].payload},
                                  KeyedPair{out[j].key, out[j].payload}, direction);
            out[j - 1] = KeyedTuple{std::move(first.key), std::move(first.payload)};
            out[j] = KeyedTuple{std::move(second.key), std::move(second.payload)};
        }
    }
    return out;
}

KeyedTuple blind_argmin(Backend& backend, std::span<const KeyedTuple> tuples) {
    if (tuples.empty()) throw ValidationError("blind_argmin: empty list");
    KeyedPair best{tuples[0].key, tuples[0].payload};
    for (std::size_t i = 1; i < tuples.size(); ++i) {
        best = blind_order_keyed(backend, best, KeyedPair{tuples[i].key, tuples[i].payload},
                                 Direction::Ascending)
                   .first;
    }
    return KeyedTuple{std::move(best.key), std::move(best.payload)};
}

namespace {

AffineFit fit_from_json(const nlohmann::json& j) {
    return AffineFit{j.at("slope").get<double>(), j.at("intercept").get<double>()};
}

nlohmann::json fit_to_json(const AffineFit& f) {
    return nlohmann::json{{"slope", f.slope}, {"intercept", f.intercept}};
}

}  // namespace

CostModel CostModel::from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    CostModel model;
    if (j.contains("comparison")) model.comparison = fit_from_json(j.at("comparison"));
    if (j.contains("selection")) model.selection = fit_from_json(j.at("selection"));
    if (j.contains("ordering")) model.ordering = fit_from_json(j.at("ordering"));
    return model;
}

std::string CostModel::to_json() const {
    return nlohmann::json{{"comparison", fit_to_json(comparison)},
                          {"selection", fit_to_json(selection)},
                          {"ordering", fit_to_json(ordering)}}
        .dump(2);
}

double cost_eval(double x, double a, double b, double c, const CostModel& model) {
    if (x < 1.0) throw ValidationError("cost_eval: input bits must be >= 1");
    if (a < 0.0 || b < 0.0 || c < 0.0) throw ValidationError("cost_eval: negative op count");
    return a * model.comparison(x) + b * model.selection(x) + c * model.ordering(x);
}

OpCounts& OpCounts::operator+=(const OpCounts& other) {
    comparisons += other.comparisons;
    selections += other.selections;
    orderings += other.orderings;
    return *this;
}

OpCounts feature_selection_ops(std::uint64_t n, std::uint64_t m) {
    return OpCounts{m, n * m, 3 * m};
}

OpCounts child_node_ops(std::uint64_t n, std::uint64_t m) {
    return OpCounts{m, 2 * n * m, 3 * m};
}

OpCounts count_ops(std::uint64_t n, std::uint64_t m, std::uint64_t depth) {
    if (n == 0 || m == 0 || depth == 0) throw ValidationError("count_ops: n, m, d must be >= 1");
    OpCounts total = feature_selection_ops(n, m);
    const OpCounts child = child_node_ops(n, m);
    for (std::uint64_t level = 1; level <= depth; ++level) {
        const std::uint64_t nodes = std::uint64_t{1} << level;
        total += OpCounts{nodes * child.comparisons, nodes * child.selections,
                          nodes * child.orderings};
    }
    return total;
}

}  // namespace bef
