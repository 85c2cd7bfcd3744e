#include "bef/tfhe_backend.hpp"

#include "bef/tfhe_ffi.h"

#include <cstring>
#include <random>

namespace bef {

namespace {

struct CtDeleter {
    void operator()(BefCiphertext* ct) const { bef_tfhe_ciphertext_free(ct); }
};

struct CkDeleter {
    void operator()(BefClientKey* ck) const { bef_tfhe_client_key_free(ck); }
};

struct SkDeleter {
    void operator()(BefServerKey* sk) const { bef_tfhe_server_key_free(sk); }
};

const BefCiphertext* as_ct(const CipherBit& bit) {
    return static_cast<const BefCiphertext*>(bit.impl.get());
}

CipherBit wrap_ct(BefCiphertext* ct, std::uint64_t key_id) {
    if (ct == nullptr) throw Error("tfhe shim returned null ciphertext");
    return CipherBit{std::shared_ptr<const BefCiphertext>(ct, CtDeleter{}), key_id};
}

std::vector<std::uint8_t> take_buffer(BefBuffer buf) {
    std::vector<std::uint8_t> out(buf.data, buf.data + buf.len);
    bef_tfhe_buffer_free(buf);
    return out;
}

std::uint64_t random_key_id() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32 | rd()) | 1u;
}

// key blobs: 8-byte key-space id, then the bincode-serialized key
std::vector<std::uint8_t> frame_key(std::uint64_t id, std::span<const std::uint8_t> body) {
    std::vector<std::uint8_t> out;
    out.reserve(8 + body.size());
    for (int i = 0; i < 8; ++i) out.push_back((id >> (8 * i)) & 0xff);
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

std::pair<std::uint64_t, std::span<const std::uint8_t>> unframe_key(
    std::span<const std::uint8_t> data) {
    if (data.size() < 8) throw ValidationError("tfhe key blob too short");
    std::uint64_t id = 0;
    for (int i = 0; i < 8; ++i) id |= static_cast<std::uint64_t>(data[static_cast<std::size_t>(i)]) << (8 * i);
    return {id, data.subspan(8)};
}

}  // namespace

struct TfheBackend::Impl {
    std::shared_ptr<const BefServerKey> eval_key;
    std::uint64_t eval_key_id = 0;
};

TfheBackend::TfheBackend() : impl_(std::make_unique<Impl>()) {}
TfheBackend::~TfheBackend() = default;

KeyPair TfheBackend::keygen(const SecurityConfig& config) {
    (void)to_string(config.parameter_preset);
    const bool seeded = config.insecure_test_mode && config.rng_seed.has_value();
    BefClientKey* ck = nullptr;
    BefServerKey* sk = nullptr;
    if (bef_tfhe_keygen(seeded ? *config.rng_seed : 0, seeded ? 1 : 0, &ck, &sk) != 0) {
        throw Error("tfhe keygen failed");
    }
    std::uint64_t id;
    if (seeded) {
        std::mt19937_64 rng(*config.rng_seed);
        id = rng() | 1u;
    } else {
        id = random_key_id();
    }
    KeyPair pair;
    pair.client_key = ClientKey{std::shared_ptr<const BefClientKey>(ck, CkDeleter{}), id};
    pair.evaluation_key = EvaluationKey{std::shared_ptr<const BefServerKey>(sk, SkDeleter{}), id};
    return pair;
}

void TfheBackend::use_evaluation_key(const EvaluationKey& key) {
    if (!key.impl) throw KeyMismatchError("invalid tfhe evaluation key");
    impl_->eval_key = std::static_pointer_cast<const BefServerKey>(key.impl);
    impl_->eval_key_id = key.key_id;
}

CipherBit TfheBackend::trivial_bit(bool bit) {
    if (!impl_->eval_key) throw KeyMismatchError("no evaluation key installed");
    return wrap_ct(bef_tfhe_trivial(impl_->eval_key.get(), bit ? 1 : 0), 0);
}

CipherBit TfheBackend::do_encrypt(const ClientKey& key, bool bit) {
    if (!key.impl) throw KeyMismatchError("invalid tfhe client key");
    const auto* ck = static_cast<const BefClientKey*>(key.impl.get());
    return wrap_ct(bef_tfhe_encrypt(ck, bit ? 1 : 0), key.key_id);
}

bool TfheBackend::do_decrypt(const ClientKey& key, const CipherBit& ct) {
    if (!key.impl) throw KeyMismatchError("invalid tfhe client key");
    if (!ct.valid()) throw ValidationError("empty ciphertext");
    if (ct.key_id != 0 && ct.key_id != key.key_id) {
        throw KeyMismatchError("ciphertext does not belong to this key");
    }
    const auto* ck = static_cast<const BefClientKey*>(key.impl.get());
    const int r = bef_tfhe_decrypt(ck, as_ct(ct));
    if (r < 0) throw Error("tfhe decrypt failed");
    return r != 0;
}

CipherBit TfheBackend::do_gate(GateKind kind, std::span<const CipherBit> in) {
    if (!impl_->eval_key) throw KeyMismatchError("no evaluation key installed");
    const BefServerKey* sk = impl_->eval_key.get();
    switch (kind) {
        case GateKind::And: return wrap_ct(bef_tfhe_gate2(sk, 0, as_ct(in[0]), as_ct(in[1])), 0);
        case GateKind::Or: return wrap_ct(bef_tfhe_gate2(sk, 1, as_ct(in[0]), as_ct(in[1])), 0);
        case GateKind::Xor: return wrap_ct(bef_tfhe_gate2(sk, 2, as_ct(in[0]), as_ct(in[1])), 0);
        case GateKind::Not: return wrap_ct(bef_tfhe_not(sk, as_ct(in[0])), 0);
        case GateKind::Mux:
            return wrap_ct(bef_tfhe_mux(sk, as_ct(in[0]), as_ct(in[1]), as_ct(in[2])), 0);
    }
    throw ValidationError("bad gate kind");
}

std::vector<std::uint8_t> TfheBackend::serialize_client_key(const ClientKey& key) const {
    if (!key.impl) throw KeyMismatchError("invalid tfhe client key");
    BefBuffer buf{};
    if (bef_tfhe_client_key_serialize(static_cast<const BefClientKey*>(key.impl.get()), &buf) != 0) {
        throw Error("tfhe client key serialization failed");
    }
    return frame_key(key.key_id, take_buffer(buf));
}

ClientKey TfheBackend::deserialize_client_key(std::span<const std::uint8_t> data) const {
    auto [id, body] = unframe_key(data);
    BefClientKey* ck = bef_tfhe_client_key_deserialize(body.data(), body.size());
    if (ck == nullptr) throw ValidationError("malformed tfhe client key");
    return ClientKey{std::shared_ptr<const BefClientKey>(ck, CkDeleter{}), id};
}

std::vector<std::uint8_t> TfheBackend::serialize_evaluation_key(const EvaluationKey& key) const {
    if (!key.impl) throw KeyMismatchError("invalid tfhe evaluation key");
    BefBuffer buf{};
    if (bef_tfhe_server_key_serialize(static_cast<const BefServerKey*>(key.impl.get()), &buf) != 0) {
        throw Error("tfhe evaluation key serialization failed");
    }
    return frame_key(key.key_id, take_buffer(buf));
}

EvaluationKey TfheBackend::deserialize_evaluation_key(std::span<const std::uint8_t> data) const {
    auto [id, body] = unframe_key(data);
    BefServerKey* sk = bef_tfhe_server_key_deserialize(body.data(), body.size());
    if (sk == nullptr) throw ValidationError("malformed tfhe evaluation key");
    return EvaluationKey{std::shared_ptr<const BefServerKey>(sk, SkDeleter{}), id};
}

std::vector<std::uint8_t> TfheBackend::serialize_bit(const CipherBit& ct) const {
    if (!ct.valid()) throw ValidationError("empty ciphertext");
    BefBuffer buf{};
    if (bef_tfhe_ciphertext_serialize(as_ct(ct), &buf) != 0) {
        throw Error("tfhe ciphertext serialization failed");
    }
    return frame_key(ct.key_id, take_buffer(buf));
}

CipherBit TfheBackend::deserialize_bit(std::span<const std::uint8_t> data) const {
    auto [id, body] = unframe_key(data);
    BefCiphertext* ct = bef_tfhe_ciphertext_deserialize(body.data(), body.size());
    if (ct == nullptr) throw ValidationError("malformed tfhe ciphertext");
    return wrap_ct(ct, id);
}

}  // namespace bef
