#include "bef/data.hpp"

#include "bef/backend.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace bef {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::uint8_t parse_binary_cell(const std::string& cell, const std::string& origin,
                               std::size_t row, const std::string& column) {
    if (cell == "0") return 0;
    if (cell == "1") return 1;
    throw ValidationError(origin + ": row " + std::to_string(row) + ", column '" + column +
                          "': expected 0 or 1, got '" + cell + "'");
}

}  // namespace

PlainDataset parse_csv(const std::string& text, const std::string& label_column,
                       const std::string& origin) {
    std::stringstream ss(text);
    std::string line;
    if (!std::getline(ss, line)) throw ValidationError(origin + ": empty input");
    const std::vector<std::string> header = split_row(line);
    if (header.empty()) throw ValidationError(origin + ": empty header row");

    std::optional<std::size_t> label_idx;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == label_column) {
            if (label_idx) throw ValidationError(origin + ": duplicate label column '" +
                                                 label_column + "'");
            label_idx = j;
        }
    }
    if (!label_idx) {
        throw ValidationError(origin + ": label column '" + label_column + "' not found");
    }

    PlainDataset ds;
    ds.label_name = label_column;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j != *label_idx) ds.feature_names.push_back(header[j]);
    }
    if (ds.feature_names.empty()) {
        throw ValidationError(origin + ": no feature columns besides the label");
    }

    std::size_t row = 1;
    while (std::getline(ss, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const std::vector<std::string> cells = split_row(line);
        if (cells.size() != header.size()) {
            throw ValidationError(origin + ": row " + std::to_string(row) + " has " +
                                  std::to_string(cells.size()) + " cells, expected " +
                                  std::to_string(header.size()));
        }
        std::vector<std::uint8_t> feats;
        feats.reserve(ds.feature_names.size());
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const std::uint8_t v = parse_binary_cell(cells[j], origin, row, header[j]);
            if (j == *label_idx) {
                ds.labels.push_back(v);
            } else {
                feats.push_back(v);
            }
        }
        ds.features.push_back(std::move(feats));
    }
    if (ds.features.empty()) throw ValidationError(origin + ": no data rows");
    return ds;
}

PlainDataset ingest_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), label_column, path);
}

std::string export_csv(const PlainDataset& dataset) {
    std::ostringstream out;
    for (const std::string& name : dataset.feature_names) out << name << ',';
    out << dataset.label_name << '\n';
    for (std::size_t i = 0; i < dataset.n_rows(); ++i) {
        for (std::size_t j = 0; j < dataset.m_features(); ++j) {
            out << int(dataset.features[i][j]) << ',';
        }
        out << int(dataset.labels[i]) << '\n';
    }
    return out.str();
}

PlainDataset stratified_sample(const PlainDataset& dataset, std::size_t k, std::uint64_t seed) {
    if (k == 0 || k > dataset.n_rows()) {
        throw ValidationError("sample size must be in [1, n_rows]");
    }
    std::vector<std::size_t> class_rows[2];
    for (std::size_t i = 0; i < dataset.n_rows(); ++i) {
        class_rows[dataset.labels[i]].push_back(i);
    }

    // Largest-remainder allocation of k rows across the two classes.
    const double n = static_cast<double>(dataset.n_rows());
    std::size_t take[2];
    double frac[2];
    std::size_t assigned = 0;
    for (int c = 0; c < 2; ++c) {
        const double exact = static_cast<double>(k) * static_cast<double>(class_rows[c].size()) / n;
        take[c] = static_cast<std::size_t>(exact);
        frac[c] = exact - static_cast<double>(take[c]);
        assigned += take[c];
    }
    while (assigned < k) {
        const int c = frac[1] > frac[0] ? 1 : 0;
        if (take[c] < class_rows[c].size()) {
            ++take[c];
            frac[c] = -1.0;
        } else {
            ++take[1 - c];
        }
        ++assigned;
    }

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> chosen;
    for (int c = 0; c < 2; ++c) {
        std::vector<std::size_t> rows = class_rows[c];
        std::shuffle(rows.begin(), rows.end(), rng);
        chosen.insert(chosen.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(take[c]));
    }
    std::sort(chosen.begin(), chosen.end());

    PlainDataset out;
    out.feature_names = dataset.feature_names;
    out.label_name = dataset.label_name;
    for (const std::size_t i : chosen) {
        out.features.push_back(dataset.features[i]);
        out.labels.push_back(dataset.labels[i]);
    }
    return out;
}

PlainDataset gen_synthetic(std::size_t n_rows, std::size_t m_features, std::uint64_t seed,
                           std::size_t planted_feature, double signal) {
    if (n_rows == 0 || m_features == 0) throw ValidationError("need n >= 1 and m >= 1");
    if (planted_feature >= m_features) throw ValidationError("planted feature out of range");
    if (signal < 0.0 || signal > 1.0) throw ValidationError("signal must be in [0, 1]");

    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution keep(signal);

    PlainDataset ds;
    ds.label_name = "label";
    for (std::size_t j = 0; j < m_features; ++j) {
        ds.feature_names.push_back("f" + std::to_string(j));
    }
    for (std::size_t i = 0; i < n_rows; ++i) {
        const std::uint8_t y = coin(rng) ? 1 : 0;
        std::vector<std::uint8_t> row(m_features);
        for (std::size_t j = 0; j < m_features; ++j) row[j] = coin(rng) ? 1 : 0;
        row[planted_feature] = keep(rng) ? y : static_cast<std::uint8_t>(1 - y);
        ds.features.push_back(std::move(row));
        ds.labels.push_back(y);
    }
    return ds;
}

PlainDataset select_k_best(const PlainDataset& dataset, std::size_t k) {
    if (k == 0 || k > dataset.m_features()) {
        throw ValidationError("k must be in [1, m_features]");
    }
    // Class-loss score per feature: min(#agree, #disagree) with the label;
    // lower is more predictive.
    std::vector<std::pair<std::size_t, std::size_t>> scored;  // (score, column)
    for (std::size_t j = 0; j < dataset.m_features(); ++j) {
        std::size_t agree = 0;
        for (std::size_t i = 0; i < dataset.n_rows(); ++i) {
            if (dataset.features[i][j] == dataset.labels[i]) ++agree;
        }
        scored.emplace_back(std::min(agree, dataset.n_rows() - agree), j);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < k; ++r) keep.push_back(scored[r].second);
    std::sort(keep.begin(), keep.end());

    PlainDataset out;
    out.label_name = dataset.label_name;
    out.labels = dataset.labels;
    for (const std::size_t j : keep) out.feature_names.push_back(dataset.feature_names[j]);
    for (std::size_t i = 0; i < dataset.n_rows(); ++i) {
        std::vector<std::uint8_t> row;
        row.reserve(k);
        for (const std::size_t j : keep) row.push_back(dataset.features[i][j]);
        out.features.push_back(std::move(row));
    }
    return out;
}

std::pair<PlainDataset, PlainDataset> split_holdout(const PlainDataset& dataset,
                                                    double train_fraction, std::uint64_t seed) {
    if (train_fraction <= 0.0 || train_fraction >= 1.0) {
        throw ValidationError("train_fraction must be in (0, 1)");
    }
    std::vector<std::size_t> order(dataset.n_rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::size_t n_train =
        static_cast<std::size_t>(train_fraction * static_cast<double>(dataset.n_rows()));
    n_train = std::clamp<std::size_t>(n_train, 1, dataset.n_rows() - 1);

    PlainDataset train, valid;
    train.feature_names = valid.feature_names = dataset.feature_names;
    train.label_name = valid.label_name = dataset.label_name;
    for (std::size_t r = 0; r < order.size(); ++r) {
        PlainDataset& dst = r < n_train ? train : valid;
        dst.features.push_back(dataset.features[order[r]]);
        dst.labels.push_back(dataset.labels[order[r]]);
    }
    return {std::move(train), std::move(valid)};
}

}  // namespace bef
