#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bef {

class Error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed inputs, bad widths, bad files. CLI maps this to exit code 2.
class ValidationError : public Error {
    using Error::Error;
};

// Wrong key kind / cross-key ciphertexts. CLI maps this to exit code 3.
class KeyMismatchError : public Error {
    using Error::Error;
};

enum class GateKind : int { And = 0, Or = 1, Xor = 2, Not = 3, Mux = 4 };
inline constexpr int kGateKindCount = 5;

std::string_view to_string(GateKind kind);

enum class SecurityPreset {
    // Backend's recommended parameters, >= 128-bit classical security for the
    // encrypted backend. The only preset currently enumerated.
    Default128,
};

SecurityPreset preset_from_string(std::string_view name);
std::string_view to_string(SecurityPreset preset);

struct SecurityConfig {
    SecurityPreset parameter_preset = SecurityPreset::Default128;
    std::optional<std::uint64_t> rng_seed;
    // The encrypted backend ignores rng_seed unless this is set. Seeded key
    // generation is not secure; test runs only.
    bool insecure_test_mode = false;
};

// Plain-integer copy of the live counters.
struct StatsSnapshot {
    std::array<std::uint64_t, kGateKindCount> gate_counts{};
    std::array<std::uint64_t, kGateKindCount> gate_ns{};
    std::uint64_t encrypt_calls = 0;
    std::uint64_t decrypt_calls = 0;
    std::uint64_t comparisons = 0;
    std::uint64_t selections = 0;
    std::uint64_t orderings = 0;

    std::uint64_t total_gates() const;
    std::string to_json() const;
};

// Monotone counters: every gate evaluation, every explicit decryption, and
// every blind comparison/selection/ordering bumps its counter. decrypt_calls
// is the IRDE meter; word decryption counts once per bit.
class BackendStats {
public:
    void record_gate(GateKind kind, std::uint64_t ns);
    void record_encrypt() { encrypt_calls_.fetch_add(1, std::memory_order_relaxed); }
    void record_decrypt() { decrypt_calls_.fetch_add(1, std::memory_order_relaxed); }
    void record_comparison() { comparisons_.fetch_add(1, std::memory_order_relaxed); }
    void record_selection() { selections_.fetch_add(1, std::memory_order_relaxed); }
    void record_ordering() { orderings_.fetch_add(1, std::memory_order_relaxed); }

    StatsSnapshot snapshot() const;
    void reset();

    std::uint64_t decrypt_calls() const { return decrypt_calls_.load(std::memory_order_relaxed); }

private:
    std::array<std::atomic<std::uint64_t>, kGateKindCount> gate_counts_{};
    std::array<std::atomic<std::uint64_t>, kGateKindCount> gate_ns_{};
    std::atomic<std::uint64_t> encrypt_calls_{0};
    std::atomic<std::uint64_t> decrypt_calls_{0};
    std::atomic<std::uint64_t> comparisons_{0};
    std::atomic<std::uint64_t> selections_{0};
    std::atomic<std::uint64_t> orderings_{0};
};

// One encrypted boolean. `impl` is backend-specific; `key_id` tags the key
// space (0 = trivial constant, compatible with any key space).
struct CipherBit {
    std::shared_ptr<const void> impl;
    std::uint64_t key_id = 0;

    bool valid() const { return impl != nullptr; }
};

enum class KeyKind : std::uint8_t { Client = 0, Evaluation = 1 };

struct ClientKey {
    std::shared_ptr<const void> impl;
    std::uint64_t key_id = 0;
};

struct EvaluationKey {
    std::shared_ptr<const void> impl;
    std::uint64_t key_id = 0;
};

struct KeyPair {
    ClientKey client_key;
    EvaluationKey evaluation_key;
};

// LSB-first unsigned word of CipherBits.
struct BitWord {
    std::vector<CipherBit> bits;

    BitWord() = default;
    explicit BitWord(std::vector<CipherBit> b) : bits(std::move(b)) {}

    std::size_t width() const { return bits.size(); }
};

// Uniform gate-evaluation interface. Gate evaluation uses the installed
// evaluation key only; encrypt/decrypt need the client key. The non-virtual
// entry points do arity/key checking and instrumentation, so both backends
// are counted identically.
class Backend {
public:
    virtual ~Backend() = default;

    virtual std::string_view name() const = 0;
    virtual KeyPair keygen(const SecurityConfig& config = {}) = 0;
    virtual void use_evaluation_key(const EvaluationKey& key) = 0;

    CipherBit encrypt_bit(const ClientKey& key, bool bit);
    bool decrypt_bit(const ClientKey& key, const CipherBit& ct);
    // Unencrypted server-side constant.
    virtual CipherBit trivial_bit(bool bit) = 0;

    CipherBit gate(GateKind kind, std::span<const CipherBit> inputs);

    CipherBit and_(const CipherBit& a, const CipherBit& b);
    CipherBit or_(const CipherBit& a, const CipherBit& b);
    CipherBit xor_(const CipherBit& a, const CipherBit& b);
    CipherBit not_(const CipherBit& a);
    CipherBit mux(const CipherBit& sel, const CipherBit& then_v, const CipherBit& else_v);

    virtual std::vector<std::uint8_t> serialize_client_key(const ClientKey& key) const = 0;
    virtual ClientKey deserialize_client_key(std::span<const std::uint8_t> data) const = 0;
    virtual std::vector<std::uint8_t> serialize_evaluation_key(const EvaluationKey& key) const = 0;
    virtual EvaluationKey deserialize_evaluation_key(std::span<const std::uint8_t> data) const = 0;
    virtual std::vector<std::uint8_t> serialize_bit(const CipherBit& ct) const = 0;
    virtual CipherBit deserialize_bit(std::span<const std::uint8_t> data) const = 0;

    BackendStats& stats() { return stats_; }
    const BackendStats& stats() const { return stats_; }

protected:
    virtual CipherBit do_encrypt(const ClientKey& key, bool bit) = 0;
    virtual bool do_decrypt(const ClientKey& key, const CipherBit& ct) = 0;
    virtual CipherBit do_gate(GateKind kind, std::span<const CipherBit> inputs) = 0;

    BackendStats stats_;
};

// "clear" or "tfhe-boolean".
std::unique_ptr<Backend> make_backend(std::string_view name);

BitWord encrypt_word(Backend& backend, const ClientKey& key, std::uint64_t value,
                     std::size_t width);
std::uint64_t decrypt_word(Backend& backend, const ClientKey& key, const BitWord& word);
BitWord trivial_word(Backend& backend, std::uint64_t value, std::size_t width);

}  // namespace bef
