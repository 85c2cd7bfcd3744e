#pragma once

#include "bef/backend.hpp"

namespace bef {

// Encrypted backend over the TFHE-rs boolean API (gate bootstrapping, default
// parameters >= 128-bit security). Scheme internals live behind the FFI shim;
// this class adds key-space tagging, instrumentation and serialization framing.
class TfheBackend final : public Backend {
public:
    TfheBackend();
    ~TfheBackend() override;

    std::string_view name() const override { return "tfhe-boolean"; }
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
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace bef
