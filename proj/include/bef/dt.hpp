#pragma once

#include "bef/blind_algos.hpp"

namespace bef::dt {

// n x m matrix of encrypted binary feature values plus the encrypted label
// column. Shapes are plaintext by design: the server must know them to run
// the circuits.
struct EncryptedDataset {
    std::vector<std::vector<CipherBit>> features;  // [row][feature]
    std::vector<CipherBit> labels;                 // [row]
    std::size_t n_rows = 0;
    std::size_t m_features = 0;
    std::size_t count_width = 0;  // ceil(log2(n+1)) unless overridden
};

std::size_t default_count_width(std::size_t n_rows);

EncryptedDataset encrypt_dataset(Backend& backend, const ClientKey& key,
                                 const std::vector<std::vector<std::uint8_t>>& features,
                                 const std::vector<std::uint8_t>& labels,
                                 std::optional<std::size_t> count_width = std::nullopt);

// Row i participates in a node's computation iff valid[i] decrypts to 1.
// known_all_valid records the (plaintext) fact that every entry is a trivial
// 1, which holds only for the root vector.
struct ConditionVector {
    std::vector<CipherBit> valid;
    bool known_all_valid = false;
};

ConditionVector root_condition(Backend& backend, std::size_t n_rows);

// used[j] decrypts to 1 iff feature j was already selected on this path.
// Bits only ever turn on.
struct FeatureMask {
    std::vector<CipherBit> used;
};

FeatureMask empty_mask(Backend& backend, std::size_t m_features);

enum class Protocol : std::uint8_t { Binary = 0, General = 1 };

struct TreeNode {
    std::vector<CipherBit> selector;   // one-hot over features (internal nodes)
    std::optional<BitWord> threshold;  // general protocol only
    std::optional<CipherBit> leaf_label;
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;

    bool is_leaf() const { return leaf_label.has_value(); }
};

struct TrainedTree {
    std::unique_ptr<TreeNode> root;
    std::size_t m_features = 0;
    std::size_t max_depth = 0;
    std::size_t count_width = 0;
    std::size_t threshold_width = 0;  // 0 for binary protocol
    Protocol protocol = Protocol::Binary;
};

struct TrainConfig {
    std::size_t max_depth = 1;
    std::optional<std::size_t> count_width;
};

// Class-loss score for feature j over the valid rows:
//   score_j = min(#agree, #disagree),  agree = (x_ij == y_i)
// Features already used get the all-ones word so they can never win.
BitWord feature_score(Backend& backend, const EncryptedDataset& dataset,
                      const ConditionVector& cond, const FeatureMask& mask, std::size_t j);

struct FeatureSelectionResult {
    std::vector<CipherBit> selector;  // encrypted one-hot of the winning feature
    std::vector<CipherBit> column;    // the winning feature's data column
    FeatureMask updated_mask;
};

// Scores every feature and blindly reduces to the minimum-score tuple; ties
// resolve to the lowest feature index.
//
// Blind-op accounting per node (the counting convention behind count_ops):
//   comparisons: 1 per feature        (the min(agree, disagree) comparison)
//   selections:  n per feature, 2n per feature off the root
//                (per-row agreement select; off-root rows are additionally
//                 gated by the condition vector)
//   orderings:   3 per feature        (used-feature score forcing, plus the
//                 selector-payload and column-payload reduction steps)
FeatureSelectionResult feature_selection(Backend& backend, const EncryptedDataset& dataset,
                                         const ConditionVector& cond, const FeatureMask& mask);

// Soft-partition: children receive the full dataset, only the condition
// vector changes. right = cond AND column, left = cond AND NOT column.
std::pair<ConditionVector, ConditionVector> partition(Backend& backend,
                                                      const ConditionVector& cond,
                                                      std::span<const CipherBit> column);

// Majority label over valid rows; exact ties and empty nodes yield E(0).
CipherBit leaf_label(Backend& backend, const EncryptedDataset& dataset,
                     const ConditionVector& cond);

// Non-interactive training of a complete depth-d tree. Every node, leaves
// included, runs the same feature-selection circuit, so per-level work (and
// the serialized model layout) depends only on the plaintext shape.
TrainedTree train(Backend& backend, const EncryptedDataset& dataset, const TrainConfig& config);

CipherBit predict_binary(Backend& backend, const TrainedTree& tree,
                         std::span<const CipherBit> x);
CipherBit predict_general(Backend& backend, const TrainedTree& tree,
                          std::span<const BitWord> x);

// Plaintext image of a complete tree, BFS order. Internal node i holds
// node_feature[i] / node_threshold[i]; leaf i holds leaf_label[i].
struct PlainTree {
    std::size_t m_features = 0;
    std::size_t max_depth = 0;
    std::size_t threshold_width = 0;
    std::vector<std::size_t> node_feature;
    std::vector<std::uint64_t> node_threshold;
    std::vector<std::uint8_t> leaf_label;

    friend bool operator==(const PlainTree&, const PlainTree&) = default;
};

// Import path for the general prediction protocol: the protocol is
// independent of how the tree was trained.
TrainedTree encrypt_tree(Backend& backend, const ClientKey& key, const PlainTree& plain,
                         Protocol protocol);
PlainTree decrypt_tree(Backend& backend, const ClientKey& key, const TrainedTree& tree);

// Plaintext traversal of a decrypted tree (test/evaluation helper).
bool traverse_binary(const PlainTree& tree, std::span<const std::uint8_t> x);
bool traverse_general(const PlainTree& tree, std::span<const std::uint64_t> x);

}  // namespace bef::dt
