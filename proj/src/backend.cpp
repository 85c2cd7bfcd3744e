#include "bef/backend.hpp"

#include "bef/clear_backend.hpp"
#include "bef/tfhe_backend.hpp"

#include <chrono>

#include "json.hpp"

namespace bef {

std::string_view to_string(GateKind kind) {
    switch (kind) {
        case GateKind::And: return "AND";
        case GateKind::Or: return "OR";
        case GateKind::Xor: return "XOR";
        case GateKind::Not: return "NOT";
        case GateKind::Mux: return "MUX";
    }
    return "?";
}

SecurityPreset preset_from_string(std::string_view name) {
    if (name == "default" || name == "default-128") {
        return SecurityPreset::Default128;
    }
    throw ValidationError("unknown security preset: " + std::string(name));
}

std::string_view to_string(SecurityPreset) { return "default-128"; }

std::uint64_t StatsSnapshot::total_gates() const {
    std::uint64_t total = 0;
    for (auto c : gate_counts) total += c;
    return total;
}

std::string StatsSnapshot::to_json() const {
    nlohmann::json gates;
    nlohmann::json times;
    for (int i = 0; i < kGateKindCount; ++i) {
        const std::string key{to_string(static_cast<GateKind>(i))};
        gates[key] = gate_counts[static_cast<std::size_t>(i)];
        times[key] = gate_ns[static_cast<std::size_t>(i)] * 1e-9;
    }
    nlohmann::json j{
        {"gate_counts", gates},
        {"gate_seconds", times},
        {"total_gates", total_gates()},
        {"encrypt_calls", encrypt_calls},
        {"decrypt_calls", decrypt_calls},
        {"blind_ops",
         {{"comparisons", comparisons}, {"selections", selections}, {"orderings", orderings}}},
    };
    return j.dump(2);
}

void BackendStats::record_gate(GateKind kind, std::uint64_t ns) {
    const auto i = static_cast<std::size_t>(kind);
    gate_counts_[i].fetch_add(1, std::memory_order_relaxed);
    gate_ns_[i].fetch_add(ns, std::memory_order_relaxed);
}

StatsSnapshot BackendStats::snapshot() const {
    StatsSnapshot s;
    for (int i = 0; i < kGateKindCount; ++i) {
        s.gate_counts[static_cast<std::size_t>(i)] =
            gate_counts_[static_cast<std::size_t>(i)].load(std::memory_order_relaxed);
        s.gate_ns[static_cast<std::size_t>(i)] =
            gate_ns_[static_cast<std::size_t>(i)].load(std::memory_order_relaxed);
    }
    s.encrypt_calls = encrypt_calls_.load(std::memory_order_relaxed);
    s.decrypt_calls = decrypt_calls_.load(std::memory_order_relaxed);
    s.comparisons = comparisons_.load(std::memory_order_relaxed);
    s.selections = selections_.load(std::memory_order_relaxed);
    s.orderings = orderings_.load(std::memory_order_relaxed);
    return s;
}

void BackendStats::reset() {
    for (auto& c : gate_counts_) c.store(0, std::memory_order_relaxed);
    for (auto& c : gate_ns_) c.store(0, std::memory_order_relaxed);
    encrypt_calls_.store(0, std::memory_order_relaxed);
    decrypt_calls_.store(0, std::memory_order_relaxed);
    comparisons_.store(0, std::memory_order_relaxed);
    selections_.store(0, std::memory_order_relaxed);
    orderings_.store(0, std::memory_order_relaxed);
}

namespace {

std::size_t arity_of(GateKind kind) {
    switch (kind) {
        case GateKind::Not: return 1;
        case GateKind::Mux: return 3;
        default: return 2;
    }
}

}  // namespace

CipherBit Backend::encrypt_bit(const ClientKey& key, bool bit) {
    stats_.record_encrypt();
    return do_encrypt(key, bit);
}

bool Backend::decrypt_bit(const ClientKey& key, const CipherBit& ct) {
    stats_.record_decrypt();
    return do_decrypt(key, ct);
}

CipherBit Backend::gate(GateKind kind, std::span<const CipherBit> inputs) {
    if (inputs.size() != arity_of(kind)) {
        throw ValidationError("gate " + std::string(to_string(kind)) + " expects " +
                              std::to_string(arity_of(kind)) + " inputs, got " +
                              std::to_string(inputs.size()));
    }
    std::uint64_t key_id = 0;
    for (const auto& in : inputs) {
        if (!in.valid()) throw ValidationError("gate input is empty");
        if (in.key_id == 0) continue;  // trivial, compatible with any key space
        if (key_id == 0) {
            key_id = in.key_id;
        } else if (key_id != in.key_id) {
            throw KeyMismatchError("gate inputs belong to different key spaces");
        }
    }
    const auto t0 = std::chrono::steady_clock::now();
    CipherBit out = do_gate(kind, inputs);
    const auto ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0)
            .count());
    out.key_id = key_id;
    stats_.record_gate(kind, ns);
    return out;
}

CipherBit Backend::and_(const CipherBit& a, const CipherBit& b) {
    const CipherBit in[] = {a, b};
    return gate(GateKind::And, in);
}

CipherBit Backend::or_(const CipherBit& a, const CipherBit& b) {
    const CipherBit in[] = {a, b};
    return gate(GateKind::Or, in);
}

CipherBit Backend::xor_(const CipherBit& a, const CipherBit& b) {
    const CipherBit in[] = {a, b};
    return gate(GateKind::Xor, in);
}

CipherBit Backend::not_(const CipherBit& a) {
    const CipherBit in[] = {a};
    return gate(GateKind::Not, in);
}

CipherBit Backend::mux(const CipherBit& sel, const CipherBit& then_v, const CipherBit& else_v) {
    const CipherBit in[] = {sel, then_v, else_v};
    return gate(GateKind::Mux, in);
}

std::unique_ptr<Backend> make_backend(std::string_view name) {
    if (name == "clear") return std::make_unique<ClearBackend>();
    if (name == "tfhe-boolean" || name == "encrypted") return std::make_unique<TfheBackend>();
    throw ValidationError("unknown backend: " + std::string(name));
}

BitWord encrypt_word(Backend& backend, const ClientKey& key, std::uint64_t value,
                     std::size_t width) {
    if (width == 0) throw ValidationError("word width must be positive");
    if (width < 64 && (value >> width) != 0) {
        throw ValidationError("value does not fit in " + std::to_string(width) + " bits");
    }
    BitWord word;
    word.bits.reserve(width);
    for (std::size_t i = 0; i < width; ++i) {
        word.bits.push_back(backend.encrypt_bit(key, (value >> i) & 1u));
    }
    return word;
}

std::uint64_t decrypt_word(Backend& backend, const ClientKey& key, const BitWord& word) {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < word.width(); ++i) {
        if (backend.decrypt_bit(key, word.bits[i])) value |= (std::uint64_t{1} << i);
    }
    return value;
}

BitWord trivial_word(Backend& backend, std::uint64_t value, std::size_t width) {
    if (width == 0) throw ValidationError("word width must be positive");
    BitWord word;
    word.bits.reserve(width);
    for (std::size_t i = 0; i < width; ++i) {
        word.bits.push_back(backend.trivial_bit((value >> i) & 1u));
    }
    return word;
}

}  // namespace bef
