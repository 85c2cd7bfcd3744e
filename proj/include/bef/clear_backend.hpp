#pragma once

#include "bef/backend.hpp"

namespace bef {

// Plaintext implementation of the gate interface. Serves as the bit-exact
// testing oracle for the encrypted backend and as a fast engine for the
// gate-count / op-count harness. Key ids enforce the key-space contract so
// cross-key bugs surface here too.
class ClearBackend final : public Backend {
public:
    std::string_view name() const override { return "clear"; }
    KeyPair keygen(const SecurityConfig& config = {}) override;
    void use_evaluation_key(const EvaluationKey& key) override;
    CipherBit trivial_bit(bool bit) override;

    std::vector<std::uint8_t> serialize_client_key(const ClientKey& key) const override;
    ClientKey deserialize_client_key(std::span<const std::uint8_t> data) const override;
    std::vector<std::uint8_t> serialize_evaluation_key(const EvaluationKey& key) const override;
    EvaluationKey deserialize_evaluation_key(std::span<const std::uint8_t> data) const override;
    std::vector<std::uint8_t> serialize_bit(const CipherBit& ct) const override;
    CipherBit deserialize_bit(std::span<const std::uint8_t> data) const override;

protected:
    CipherBit do_encrypt(const ClientKey& key, bool bit) override;
    bool do_decrypt(const ClientKey& key, const CipherBit& ct) override;
    CipherBit do_gate(GateKind kind, std::span<const CipherBit> inputs) override;

private:
    std::uint64_t eval_key_id_ = 0;
    bool eval_key_set_ = false;
};

}  // namespace bef
