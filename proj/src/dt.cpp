#include "bef/dt.hpp"

namespace bef::dt {

std::size_t default_count_width(std::size_t n_rows) {
    std::size_t w = 1;
    while ((std::size_t{1} << w) < n_rows + 1) ++w;
    return w;
}

EncryptedDataset encrypt_dataset(Backend& backend, const ClientKey& key,
                                 const std::vector<std::vector<std::uint8_t>>& features,
                                 const std::vector<std::uint8_t>& labels,
                                 std::optional<std::size_t> count_width) {
    const std::size_t n = features.size();
    if (n == 0) throw ValidationError("dataset has no rows");
    const std::size_t m = features[0].size();
    if (m == 0) throw ValidationError("dataset has no features");
    if (labels.size() != n) throw ValidationError("label column length mismatch");

    EncryptedDataset ds;
    ds.n_rows = n;
    ds.m_features = m;
    ds.count_width = count_width.value_or(default_count_width(n));
    if (ds.count_width < default_count_width(n)) {
        throw ValidationError("count_width " + std::to_string(ds.count_width) +
                              " too small for " + std::to_string(n) + " rows");
    }
    ds.features.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (features[i].size() != m) throw ValidationError("ragged feature matrix");
        std::vector<CipherBit> row;
        row.reserve(m);
        for (std::size_t j = 0; j < m; ++j) {
            if (features[i][j] > 1) throw ValidationError("non-binary feature value");
            row.push_back(backend.encrypt_bit(key, features[i][j] != 0));
        }
        ds.features.push_back(std::move(row));
        if (labels[i] > 1) throw ValidationError("non-binary label value");
        ds.labels.push_back(backend.encrypt_bit(key, labels[i] != 0));
    }
    return ds;
}

ConditionVector root_condition(Backend& backend, std::size_t n_rows) {
    ConditionVector cond;
    cond.known_all_valid = true;
    cond.valid.reserve(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) cond.valid.push_back(backend.trivial_bit(true));
    return cond;
}

FeatureMask empty_mask(Backend& backend, std::size_t m_features) {
    FeatureMask mask;
    mask.used.reserve(m_features);
    for (std::size_t j = 0; j < m_features; ++j) mask.used.push_back(backend.trivial_bit(false));
    return mask;
}

namespace {

BitWord replicate_bit(const CipherBit& bit, std::size_t width) {
    return BitWord{std::vector<CipherBit>(width, bit)};
}

BitWord valid_count(Backend& backend, const EncryptedDataset& ds, const ConditionVector& cond) {
    if (cond.known_all_valid) return trivial_word(backend, ds.n_rows, ds.count_width);
    return circuits::popcount(backend, cond.valid, ds.count_width);
}

}  // namespace

BitWord feature_score(Backend& backend, const EncryptedDataset& ds, const ConditionVector& cond,
                      const FeatureMask& mask, std::size_t j) {
    if (j >= ds.m_features) throw ValidationError("feature index out of range");
    if (cond.valid.size() != ds.n_rows) throw ValidationError("condition vector length mismatch");

    // Per-row agreement bit, as a blind selection between the label and its
    // complement; off the root each row is additionally gated by the
    // condition vector.
    const CipherBit zero = backend.trivial_bit(false);
    std::vector<CipherBit> agree;
    agree.reserve(ds.n_rows);
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        const CipherBit not_y = backend.not_(ds.labels[i]);
        CipherBit a = blind_select_bit(backend, ds.features[i][j], ds.labels[i], not_y);
        if (!cond.known_all_valid) {
            a = blind_select_bit(backend, cond.valid[i], a, zero);
        }
        agree.push_back(std::move(a));
    }

    const BitWord agree_count = circuits::popcount(backend, agree, ds.count_width);
    const BitWord total = valid_count(backend, ds, cond);
    const BitWord disagree_count = circuits::sub(backend, total, agree_count);

    const CompareResult cr = blind_compare(backend, agree_count, disagree_count);
    const BitWord score = circuits::mux_word(backend, cr.gt, disagree_count, agree_count);

    // Used features are forced to the all-ones word so they can never win;
    // max(score, used ? all-ones : 0) realized as one blind ordering.
    return blind_order(backend, score, replicate_bit(mask.used[j], ds.count_width),
                       Direction::Ascending)
        .high;
}

FeatureSelectionResult feature_selection(Backend& backend, const EncryptedDataset& ds,
                                         const ConditionVector& cond, const FeatureMask& mask) {
    const std::size_t m = ds.m_features;
    const std::size_t n = ds.n_rows;
    const std::size_t w = ds.count_width;
    if (mask.used.size() != m) throw ValidationError("feature mask length mismatch");

    std::vector<BitWord> scores;
    scores.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        scores.push_back(feature_score(backend, ds, cond, mask, j));
    }

    // Blind reduction to the minimum-score tuple. The running best starts at
    // an all-ones sentinel key; candidates replace it only on strict
    // improvement, so ties resolve to the lowest feature index. The one-hot
    // selector and the data column travel as separate keyed payloads.
    KeyedPair best_selector{trivial_word(backend, (std::uint64_t{1} << w) - 1, w),
                            trivial_word(backend, 0, m)};
    KeyedPair best_column{trivial_word(backend, (std::uint64_t{1} << w) - 1, w),
                          trivial_word(backend, 0, n)};
    for (std::size_t j = 0; j < m; ++j) {
        BitWord one_hot = trivial_word(backend, 0, m);
        one_hot.bits[j] = backend.trivial_bit(true);
        BitWord column;
        column.bits.reserve(n);
        for (std::size_t i = 0; i < n; ++i) column.bits.push_back(ds.features[i][j]);

        best_selector =
            blind_order_keyed(backend, best_selector, KeyedPair{scores[j], std::move(one_hot)},
                              Direction::Ascending)
                .first;
        best_column = blind_order_keyed(backend, best_column,
                                        KeyedPair{scores[j], std::move(column)},
                                        Direction::Ascending)
                          .first;
    }

    FeatureSelectionResult result;
    result.selector = std::move(best_selector.payload.bits);
    result.column = std::move(best_column.payload.bits);
    result.updated_mask.used.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        result.updated_mask.used.push_back(backend.or_(mask.used[j], result.selector[j]));
    }
    return result;
}

std::pair<ConditionVector, ConditionVector> partition(Backend& backend,
                                                      const ConditionVector& cond,
                                                      std::span<const CipherBit> column) {
    if (cond.valid.size() != column.size()) {
        throw ValidationError("partition: condition/column length mismatch");
    }
    ConditionVector left, right;
    left.valid.reserve(cond.valid.size());
    right.valid.reserve(cond.valid.size());
    for (std::size_t i = 0; i < cond.valid.size(); ++i) {
        right.valid.push_back(backend.and_(cond.valid[i], column[i]));
        left.valid.push_back(backend.and_(cond.valid[i], backend.not_(column[i])));
    }
    return {std::move(left), std::move(right)};
}

CipherBit leaf_label(Backend& backend, const EncryptedDataset& ds, const ConditionVector& cond) {
    if (cond.valid.size() != ds.n_rows) throw ValidationError("condition vector length mismatch");
    std::vector<CipherBit> ones, zeros;
    ones.reserve(ds.n_rows);
    zeros.reserve(ds.n_rows);
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        ones.push_back(backend.and_(cond.valid[i], ds.labels[i]));
        zeros.push_back(backend.and_(cond.valid[i], backend.not_(ds.labels[i])));
    }
    const BitWord c1 = circuits::popcount(backend, ones, ds.count_width);
    const BitWord c0 = circuits::popcount(backend, zeros, ds.count_width);
    // Majority; ties and empty nodes give E(0). Counted as gates only, not as
    // a blind comparison: the op-count model covers the per-node
    // feature-selection work.
    return circuits::compare(backend, c1, c0).gt;
}

namespace {

void build_node(Backend& backend, const EncryptedDataset& ds, TreeNode& node,
                const ConditionVector& cond, const FeatureMask& mask, std::size_t level,
                std::size_t max_depth) {
    // Every node, leaves included, runs the identical selection circuit, so
    // the work per level is a function of the plaintext shape alone.
    FeatureSelectionResult fs = feature_selection(backend, ds, cond, mask);
    if (level == max_depth) {
        node.leaf_label = leaf_label(backend, ds, cond);
        return;
    }
    node.selector = std::move(fs.selector);
    auto [left_cond, right_cond] = partition(backend, cond, fs.column);
    node.left = std::make_unique<TreeNode>();
    node.right = std::make_unique<TreeNode>();
    build_node(backend, ds, *node.left, left_cond, fs.updated_mask, level + 1, max_depth);
    build_node(backend, ds, *node.right, right_cond, fs.updated_mask, level + 1, max_depth);
}

}  // namespace

TrainedTree train(Backend& backend, const EncryptedDataset& dataset, const TrainConfig& config) {
    if (config.max_depth == 0) throw ValidationError("max_depth must be >= 1");
    if (config.max_depth > dataset.m_features) {
        throw ValidationError("max_depth " + std::to_string(config.max_depth) +
                              " exceeds feature count " + std::to_string(dataset.m_features));
    }
    EncryptedDataset ds = dataset;
    if (config.count_width) {
        if (*config.count_width < default_count_width(ds.n_rows)) {
            throw ValidationError("count_width override too small");
        }
        ds.count_width = *config.count_width;
    }

    TrainedTree tree;
    tree.m_features = ds.m_features;
    tree.max_depth = config.max_depth;
    tree.count_width = ds.count_width;
    tree.protocol = Protocol::Binary;
    tree.root = std::make_unique<TreeNode>();
    build_node(backend, ds, *tree.root, root_condition(backend, ds.n_rows),
               empty_mask(backend, ds.m_features), 0, config.max_depth);
    return tree;
}

namespace {

CipherBit selected_bit(Backend& backend, std::span<const CipherBit> selector,
                       std::span<const CipherBit> x) {
    CipherBit acc = backend.and_(selector[0], x[0]);
    for (std::size_t j = 1; j < selector.size(); ++j) {
        acc = backend.or_(acc, backend.and_(selector[j], x[j]));
    }
    return acc;
}

CipherBit predict_binary_node(Backend& backend, const TreeNode& node,
                              std::span<const CipherBit> x) {
    if (node.is_leaf()) return *node.leaf_label;
    const CipherBit branch = selected_bit(backend, node.selector, x);
    const CipherBit right = predict_binary_node(backend, *node.right, x);
    const CipherBit left = predict_binary_node(backend, *node.left, x);
    return blind_select_bit(backend, branch, right, left);
}

CipherBit predict_general_node(Backend& backend, const TrainedTree& tree, const TreeNode& node,
                               std::span<const BitWord> x) {
    if (node.is_leaf()) return *node.leaf_label;
    if (!node.threshold) throw ValidationError("general prediction needs node thresholds");
    // Blindly pick the word of the selected feature, bit position by bit
    // position, then branch on x > threshold.
    BitWord x_at;
    x_at.bits.reserve(tree.threshold_width);
    for (std::size_t k = 0; k < tree.threshold_width; ++k) {
        CipherBit acc = backend.and_(node.selector[0], x[0].bits[k]);
        for (std::size_t j = 1; j < node.selector.size(); ++j) {
            acc = backend.or_(acc, backend.and_(node.selector[j], x[j].bits[k]));
        }
        x_at.bits.push_back(std::move(acc));
    }
    const CipherBit branch = blind_compare(backend, x_at, *node.threshold).gt;
    const CipherBit right = predict_general_node(backend, tree, *node.right, x);
    const CipherBit left = predict_general_node(backend, tree, *node.left, x);
    return blind_select_bit(backend, branch, right, left);
}

}  // namespace

CipherBit predict_binary(Backend& backend, const TrainedTree& tree,
                         std::span<const CipherBit> x) {
    if (x.size() != tree.m_features) throw ValidationError("input length mismatch");
    return predict_binary_node(backend, *tree.root, x);
}

CipherBit predict_general(Backend& backend, const TrainedTree& tree,
                          std::span<const BitWord> x) {
    if (x.size() != tree.m_features) throw ValidationError("input length mismatch");
    if (tree.threshold_width == 0) throw ValidationError("tree has no thresholds");
    for (const BitWord& word : x) {
        if (word.width() != tree.threshold_width) {
            throw ValidationError("input word width does not match tree threshold width");
        }
    }
    return predict_general_node(backend, tree, *tree.root, x);
}

namespace {

std::unique_ptr<TreeNode> encrypt_node(Backend& backend, const ClientKey& key,
                                       const PlainTree& plain, Protocol protocol,
                                       std::size_t heap_index, std::size_t depth) {
    auto node = std::make_unique<TreeNode>();
    const std::size_t leaf_base = std::size_t{1} << plain.max_depth;
    if (depth == plain.max_depth) {
        node->leaf_label = backend.encrypt_bit(key, plain.leaf_label[heap_index - leaf_base] != 0);
        return node;
    }
    const std::size_t feature = plain.node_feature[heap_index - 1];
    node->selector.reserve(plain.m_features);
    for (std::size_t j = 0; j < plain.m_features; ++j) {
        node->selector.push_back(backend.encrypt_bit(key, j == feature));
    }
    if (protocol == Protocol::General) {
        node->threshold = encrypt_word(backend, key, plain.node_threshold[heap_index - 1],
                                       plain.threshold_width);
    }
    node->left = encrypt_node(backend, key, plain, protocol, 2 * heap_index, depth + 1);
    node->right = encrypt_node(backend, key, plain, protocol, 2 * heap_index + 1, depth + 1);
    return node;
}

void decrypt_node(Backend& backend, const ClientKey& key, const TrainedTree& tree,
                  const TreeNode& node, PlainTree& out, std::size_t heap_index,
                  std::size_t depth) {
    const std::size_t leaf_base = std::size_t{1} << tree.max_depth;
    if (depth == tree.max_depth) {
        out.leaf_label[heap_index - leaf_base] =
            backend.decrypt_bit(key, *node.leaf_label) ? 1 : 0;
        return;
    }
    std::size_t feature = 0;
    for (std::size_t j = 0; j < node.selector.size(); ++j) {
        if (backend.decrypt_bit(key, node.selector[j])) {
            feature = j;
            break;
        }
    }
    out.node_feature[heap_index - 1] = feature;
    if (node.threshold) {
        out.node_threshold[heap_index - 1] = decrypt_word(backend, key, *node.threshold);
    }
    decrypt_node(backend, key, tree, *node.left, out, 2 * heap_index, depth + 1);
    decrypt_node(backend, key, tree, *node.right, out, 2 * heap_index + 1, depth + 1);
}

}  // namespace

TrainedTree encrypt_tree(Backend& backend, const ClientKey& key, const PlainTree& plain,
                         Protocol protocol) {
    const std::size_t internal = (std::size_t{1} << plain.max_depth) - 1;
    const std::size_t leaves = std::size_t{1} << plain.max_depth;
    if (plain.m_features == 0 || plain.max_depth == 0) {
        throw ValidationError("plain tree needs m >= 1 and depth >= 1");
    }
    if (plain.node_feature.size() != internal || plain.leaf_label.size() != leaves) {
        throw ValidationError("plain tree arrays do not match a complete tree");
    }
    if (protocol == Protocol::General &&
        (plain.threshold_width == 0 || plain.node_threshold.size() != internal)) {
        throw ValidationError("general protocol needs thresholds for every internal node");
    }
    TrainedTree tree;
    tree.m_features = plain.m_features;
    tree.max_depth = plain.max_depth;
    tree.count_width = 0;
    tree.threshold_width = protocol == Protocol::General ? plain.threshold_width : 0;
    tree.protocol = protocol;
    tree.root = encrypt_node(backend, key, plain, protocol, 1, 0);
    return tree;
}

PlainTree decrypt_tree(Backend& backend, const ClientKey& key, const TrainedTree& tree) {
    PlainTree out;
    out.m_features = tree.m_features;
    out.max_depth = tree.max_depth;
    out.threshold_width = tree.threshold_width;
    out.node_feature.assign((std::size_t{1} << tree.max_depth) - 1, 0);
    out.node_threshold.assign((std::size_t{1} << tree.max_depth) - 1, 0);
    out.leaf_label.assign(std::size_t{1} << tree.max_depth, 0);
    decrypt_node(backend, key, tree, *tree.root, out, 1, 0);
    return out;
}

bool traverse_binary(const PlainTree& tree, std::span<const std::uint8_t> x) {
    std::size_t i = 1;
    const std::size_t leaf_base = std::size_t{1} << tree.max_depth;
    while (i < leaf_base) {
        const std::size_t feature = tree.node_feature[i - 1];
        i = 2 * i + (x[feature] != 0 ? 1 : 0);
    }
    return tree.leaf_label[i - leaf_base] != 0;
}

bool traverse_general(const PlainTree& tree, std::span<const std::uint64_t> x) {
    std::size_t i = 1;
    const std::size_t leaf_base = std::size_t{1} << tree.max_depth;
    while (i < leaf_base) {
        const std::size_t feature = tree.node_feature[i - 1];
        i = 2 * i + (x[feature] > tree.node_threshold[i - 1] ? 1 : 0);
    }
    return tree.leaf_label[i - leaf_base] != 0;
}

}  // namespace bef::dt
