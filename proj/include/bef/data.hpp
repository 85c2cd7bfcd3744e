#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bef {

// Strictly binary tabular data with a header row and a designated label
// column.
struct PlainDataset {
    std::vector<std::string> feature_names;
    std::string label_name;
    std::vector<std::vector<std::uint8_t>> features;  // [row][feature], values in {0,1}
    std::vector<std::uint8_t> labels;

    std::size_t n_rows() const { return features.size(); }
    std::size_t m_features() const { return feature_names.size(); }
};

PlainDataset ingest_csv(const std::string& path, const std::string& label_column);
PlainDataset parse_csv(const std::string& text, const std::string& label_column,
                       const std::string& origin = "<memory>");
std::string export_csv(const PlainDataset& dataset);

// Proportional-allocation stratified sample of k rows; per-class counts match
// the population proportions within one row. Deterministic under seed.
PlainDataset stratified_sample(const PlainDataset& dataset, std::size_t k, std::uint64_t seed);

// Seeded random binary dataset with one planted predictive feature: column
// `planted_feature` equals the label with probability `signal`, all other
// cells are uniform.
PlainDataset gen_synthetic(std::size_t n_rows, std::size_t m_features, std::uint64_t seed,
                           std::size_t planted_feature, double signal = 1.0);

// Plaintext preprocessing: keep the k features with the lowest class-loss
// score, preserving column order. Runs on cleartext data, data-owner side.
PlainDataset select_k_best(const PlainDataset& dataset, std::size_t k);

// Train/validation split helper (seeded, no stratification).
std::pair<PlainDataset, PlainDataset> split_holdout(const PlainDataset& dataset,
                                                    double train_fraction, std::uint64_t seed);

}  // namespace bef
