#include "bef/containers.hpp"

#include <fstream>
#include <sstream>

namespace bef {

namespace {

class Writer {
public:
    Writer(std::ostream& out, std::string name) : name_(std::move(name)), out_(out) {
        if (!out_) throw ValidationError("cannot open '" + name_ + "' for writing");
    }

    void magic(const char m[4]) { out_.write(m, 4); }

    void u8(std::uint8_t v) { out_.put(static_cast<char>(v)); }

    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out_.put(static_cast<char>((v >> (8 * i)) & 0xff));
    }

    void bytes(std::span<const std::uint8_t> data) {
        if (data.size() > UINT32_MAX) throw ValidationError("blob too large for container");
        u32(static_cast<std::uint32_t>(data.size()));
        out_.write(reinterpret_cast<const char*>(data.data()),
                   static_cast<std::streamsize>(data.size()));
    }

    void str(const std::string& s) {
        bytes(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
    }

    void cipher(Backend& backend, const CipherBit& bit) { bytes(backend.serialize_bit(bit)); }

    void finish() {
        out_.flush();
        if (!out_) throw ValidationError("write failed for '" + name_ + "'");
    }

private:
    std::string name_;
    std::ostream& out_;
};

// Holds the stream as a base so it outlives-and-predates the Writer part.
struct FileStreamHolder {
    explicit FileStreamHolder(const std::filesystem::path& path)
        : stream(path, std::ios::binary | std::ios::trunc) {}
    std::ofstream stream;
};

class FileWriter : private FileStreamHolder, public Writer {
public:
    explicit FileWriter(const std::filesystem::path& path)
        : FileStreamHolder(path), Writer(stream, path.string()) {}
};

class Reader {
public:
    explicit Reader(const std::filesystem::path& path)
        : path_(path), in_(path, std::ios::binary) {
        if (!in_) throw ValidationError("cannot open '" + path.string() + "'");
    }

    std::string magic() {
        char m[4];
        in_.read(m, 4);
        check("magic");
        return std::string(m, 4);
    }

    void expect_magic(const char* m) {
        if (magic() != m) {
            throw ValidationError("'" + path_.string() + "' is not a " + m + " container");
        }
    }

    std::uint8_t u8() {
        const int c = in_.get();
        if (c == EOF) fail("byte");
        return static_cast<std::uint8_t>(c);
    }

    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
        return v;
    }

    std::vector<std::uint8_t> bytes() {
        const std::uint32_t len = u32();
        std::vector<std::uint8_t> out(len);
        in_.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(len));
        check("blob");
        return out;
    }

    std::string str() {
        const std::vector<std::uint8_t> b = bytes();
        return std::string(b.begin(), b.end());
    }

    CipherBit cipher(Backend& backend) { return backend.deserialize_bit(bytes()); }

    void expect_version_and_backend(Backend& backend) {
        const std::uint32_t version = u32();
        if (version != kContainerVersion) {
            throw ValidationError("'" + path_.string() + "': unsupported container version " +
                                  std::to_string(version));
        }
        const std::string recorded = str();
        if (recorded != backend.name()) {
            throw ValidationError("'" + path_.string() + "' was written for backend '" +
                                  recorded + "', not '" + std::string(backend.name()) + "'");
        }
    }

private:
    [[noreturn]] void fail(const char* what) {
        throw ValidationError("'" + path_.string() + "': truncated container (" + what + ")");
    }

    void check(const char* what) {
        if (!in_) fail(what);
    }

    std::filesystem::path path_;
    std::ifstream in_;
};

}  // namespace

void write_key_file(const std::filesystem::path& path, const std::string& backend, KeyKind kind,
                    std::span<const std::uint8_t> key_bytes) {
    FileWriter w(path);
    w.magic("BEFK");
    w.u32(kContainerVersion);
    w.str(backend);
    w.u8(static_cast<std::uint8_t>(kind));
    w.bytes(key_bytes);
    w.finish();
}

KeyFile read_key_file(const std::filesystem::path& path) {
    Reader r(path);
    r.expect_magic("BEFK");
    const std::uint32_t version = r.u32();
    if (version != kContainerVersion) {
        throw ValidationError("'" + path.string() + "': unsupported container version " +
                              std::to_string(version));
    }
    KeyFile file;
    file.backend = r.str();
    const std::uint8_t kind = r.u8();
    if (kind > 1) throw ValidationError("'" + path.string() + "': unknown key kind");
    file.kind = static_cast<KeyKind>(kind);
    file.key_bytes = r.bytes();
    return file;
}

void write_dataset_file(const std::filesystem::path& path, Backend& backend,
                        const dt::EncryptedDataset& dataset) {
    FileWriter w(path);
    w.magic("BEFD");
    w.u32(kContainerVersion);
    w.str(std::string(backend.name()));
    w.u32(static_cast<std::uint32_t>(dataset.n_rows));
    w.u32(static_cast<std::uint32_t>(dataset.m_features));
    for (const auto& row : dataset.features) {
        for (const CipherBit& bit : row) w.cipher(backend, bit);
    }
    for (const CipherBit& bit : dataset.labels) w.cipher(backend, bit);
    w.finish();
}

dt::EncryptedDataset read_dataset_file(const std::filesystem::path& path, Backend& backend) {
    Reader r(path);
    r.expect_magic("BEFD");
    r.expect_version_and_backend(backend);
    dt::EncryptedDataset ds;
    ds.n_rows = r.u32();
    ds.m_features = r.u32();
    if (ds.n_rows == 0 || ds.m_features == 0) {
        throw ValidationError("'" + path.string() + "': empty dataset container");
    }
    ds.count_width = dt::default_count_width(ds.n_rows);
    ds.features.reserve(ds.n_rows);
    for (std::size_t i = 0; i < ds.n_rows; ++i) {
        std::vector<CipherBit> row;
        row.reserve(ds.m_features);
        for (std::size_t j = 0; j < ds.m_features; ++j) row.push_back(r.cipher(backend));
        ds.features.push_back(std::move(row));
    }
    ds.labels.reserve(ds.n_rows);
    for (std::size_t i = 0; i < ds.n_rows; ++i) ds.labels.push_back(r.cipher(backend));
    return ds;
}

namespace {

void collect_bfs(const dt::TreeNode* root, std::vector<const dt::TreeNode*>& out) {
    out.push_back(root);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i]->left) out.push_back(out[i]->left.get());
        if (out[i]->right) out.push_back(out[i]->right.get());
    }
}

void write_model_body(Writer& w, Backend& backend, const dt::TrainedTree& tree) {
    w.u32(static_cast<std::uint32_t>(tree.m_features));
    w.u32(static_cast<std::uint32_t>(tree.max_depth));
    w.u32(static_cast<std::uint32_t>(tree.count_width));
    w.u32(static_cast<std::uint32_t>(tree.threshold_width));
    w.u8(static_cast<std::uint8_t>(tree.protocol));
    std::vector<const dt::TreeNode*> nodes;
    collect_bfs(tree.root.get(), nodes);
    for (const dt::TreeNode* node : nodes) {
        if (node->is_leaf()) {
            w.cipher(backend, *node->leaf_label);
            continue;
        }
        for (const CipherBit& bit : node->selector) w.cipher(backend, bit);
        if (tree.protocol == dt::Protocol::General) {
            for (const CipherBit& bit : node->threshold->bits) w.cipher(backend, bit);
        }
    }
}

}  // namespace

void write_model_file(const std::filesystem::path& path, Backend& backend,
                      const dt::TrainedTree& tree) {
    FileWriter w(path);
    w.magic("BEFM");
    w.u32(kContainerVersion);
    w.str(std::string(backend.name()));
    write_model_body(w, backend, tree);
    w.finish();
}

std::vector<std::uint8_t> serialize_model(Backend& backend, const dt::TrainedTree& tree) {
    std::ostringstream buffer(std::ios::binary);
    Writer w(buffer, "<memory>");
    w.magic("BEFM");
    w.u32(kContainerVersion);
    w.str(std::string(backend.name()));
    write_model_body(w, backend, tree);
    w.finish();
    const std::string s = buffer.str();
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

dt::TrainedTree read_model_file(const std::filesystem::path& path, Backend& backend) {
    Reader r(path);
    r.expect_magic("BEFM");
    r.expect_version_and_backend(backend);
    dt::TrainedTree tree;
    tree.m_features = r.u32();
    tree.max_depth = r.u32();
    tree.count_width = r.u32();
    tree.threshold_width = r.u32();
    const std::uint8_t protocol = r.u8();
    if (protocol > 1) throw ValidationError("'" + path.string() + "': unknown protocol tag");
    tree.protocol = static_cast<dt::Protocol>(protocol);
    if (tree.m_features == 0 || tree.max_depth == 0 || tree.max_depth > 63) {
        throw ValidationError("'" + path.string() + "': bad model shape");
    }
    if (tree.protocol == dt::Protocol::General && tree.threshold_width == 0) {
        throw ValidationError("'" + path.string() + "': general model without thresholds");
    }

    // Rebuild the complete tree in the same breadth-first order.
    tree.root = std::make_unique<dt::TreeNode>();
    std::vector<std::pair<dt::TreeNode*, std::size_t>> nodes;  // (node, depth)
    nodes.emplace_back(tree.root.get(), 0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto [node, depth] = nodes[i];
        if (depth < tree.max_depth) {
            node->left = std::make_unique<dt::TreeNode>();
            node->right = std::make_unique<dt::TreeNode>();
            nodes.emplace_back(node->left.get(), depth + 1);
            nodes.emplace_back(node->right.get(), depth + 1);
        }
    }
    for (auto [node, depth] : nodes) {
        if (depth == tree.max_depth) {
            node->leaf_label = r.cipher(backend);
            continue;
        }
        node->selector.reserve(tree.m_features);
        for (std::size_t j = 0; j < tree.m_features; ++j) node->selector.push_back(r.cipher(backend));
        if (tree.protocol == dt::Protocol::General) {
            BitWord threshold;
            threshold.bits.reserve(tree.threshold_width);
            for (std::size_t k = 0; k < tree.threshold_width; ++k) {
                threshold.bits.push_back(r.cipher(backend));
            }
            node->threshold = std::move(threshold);
        }
    }
    return tree;
}

void write_result_file(const std::filesystem::path& path, Backend& backend,
                       std::span<const CipherBit> results) {
    FileWriter w(path);
    w.magic("BEFR");
    w.u32(kContainerVersion);
    w.str(std::string(backend.name()));
    w.u32(static_cast<std::uint32_t>(results.size()));
    for (const CipherBit& bit : results) w.cipher(backend, bit);
    w.finish();
}

std::vector<CipherBit> read_result_file(const std::filesystem::path& path, Backend& backend) {
    Reader r(path);
    r.expect_magic("BEFR");
    r.expect_version_and_backend(backend);
    const std::uint32_t n = r.u32();
    std::vector<CipherBit> out;
    out.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) out.push_back(r.cipher(backend));
    return out;
}

std::string peek_magic(const std::filesystem::path& path) {
    Reader r(path);
    return r.magic();
}

std::string peek_backend(const std::filesystem::path& path) {
    Reader r(path);
    r.magic();
    const std::uint32_t version = r.u32();
    if (version != kContainerVersion) {
        throw ValidationError("'" + path.string() + "': unsupported container version " +
                              std::to_string(version));
    }
    return r.str();
}

}  // namespace bef
