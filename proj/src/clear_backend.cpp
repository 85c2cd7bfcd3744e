#include "bef/clear_backend.hpp"

#include <cstring>
#include <random>

namespace bef {

namespace {

struct ClearBit {
    bool value;
};

const ClearBit& as_bit(const CipherBit& ct) {
    return *static_cast<const ClearBit*>(ct.impl.get());
}

CipherBit make_bit(bool value, std::uint64_t key_id) {
    return CipherBit{std::make_shared<const ClearBit>(ClearBit{value}), key_id};
}

std::uint64_t fresh_key_id(const SecurityConfig& config) {
    if (config.rng_seed) {
        std::mt19937_64 rng(*config.rng_seed);
        return rng() | 1u;
    }
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32 | rd()) | 1u;
}

std::vector<std::uint8_t> id_bytes(std::uint64_t id) {
    std::vector<std::uint8_t> out(8);
    for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = (id >> (8 * i)) & 0xff;
    return out;
}

std::uint64_t read_id(std::span<const std::uint8_t> data) {
    if (data.size() < 8) throw ValidationError("clear-backend key blob too short");
    std::uint64_t id = 0;
    for (int i = 0; i < 8; ++i) id |= static_cast<std::uint64_t>(data[static_cast<std::size_t>(i)]) << (8 * i);
    return id;
}

}  // namespace

KeyPair ClearBackend::keygen(const SecurityConfig& config) {
    // Validate even though the clear backend has no real parameters.
    (void)to_string(config.parameter_preset);
    const std::uint64_t id = fresh_key_id(config);
    KeyPair pair;
    pair.client_key = ClientKey{std::make_shared<int>(0), id};
    pair.evaluation_key = EvaluationKey{std::make_shared<int>(0), id};
    return pair;
}

void ClearBackend::use_evaluation_key(const EvaluationKey& key) {
    eval_key_id_ = key.key_id;
    eval_key_set_ = true;
}

CipherBit ClearBackend::trivial_bit(bool bit) { return make_bit(bit, 0); }

CipherBit ClearBackend::do_encrypt(const ClientKey& key, bool bit) {
    if (key.key_id == 0) throw KeyMismatchError("invalid clear-backend client key");
    return make_bit(bit, key.key_id);
}

bool ClearBackend::do_decrypt(const ClientKey& key, const CipherBit& ct) {
    if (!ct.valid()) throw ValidationError("empty ciphertext");
    if (ct.key_id != 0 && ct.key_id != key.key_id) {
        throw KeyMismatchError("ciphertext does not belong to this key");
    }
    return as_bit(ct).value;
}

CipherBit ClearBackend::do_gate(GateKind kind, std::span<const CipherBit> in) {
    if (!eval_key_set_) throw KeyMismatchError("no evaluation key installed");
    switch (kind) {
        case GateKind::And: return make_bit(as_bit(in[0]).value && as_bit(in[1]).value, 0);
        case GateKind::Or: return make_bit(as_bit(in[0]).value || as_bit(in[1]).value, 0);
        case GateKind::Xor: return make_bit(as_bit(in[0]).value != as_bit(in[1]).value, 0);
        case GateKind::Not: return make_bit(!as_bit(in[0]).value, 0);
        case GateKind::Mux:
            return make_bit(as_bit(in[0]).value ? as_bit(in[1]).value : as_bit(in[2]).value, 0);
    }
    throw ValidationError("bad gate kind");
}

std::vector<std::uint8_t> ClearBackend::serialize_client_key(const ClientKey& key) const {
    return id_bytes(key.key_id);
}

ClientKey ClearBackend::deserialize_client_key(std::span<const std::uint8_t> data) const {
    return ClientKey{std::make_shared<int>(0), read_id(data)};
}

std::vector<std::uint8_t> ClearBackend::serialize_evaluation_key(const EvaluationKey& key) const {
    return id_bytes(key.key_id);
}

EvaluationKey ClearBackend::deserialize_evaluation_key(std::span<const std::uint8_t> data) const {
    return EvaluationKey{std::make_shared<int>(0), read_id(data)};
}

std::vector<std::uint8_t> ClearBackend::serialize_bit(const CipherBit& ct) const {
    if (!ct.valid()) throw ValidationError("empty ciphertext");
    auto out = id_bytes(ct.key_id);
    out.push_back(as_bit(ct).value ? 1 : 0);
    return out;
}

CipherBit ClearBackend::deserialize_bit(std::span<const std::uint8_t> data) const {
    if (data.size() != 9) throw ValidationError("bad clear-backend ciphertext blob");
    return make_bit(data[8] != 0, read_id(data));
}

}  // namespace bef
