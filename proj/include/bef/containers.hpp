#pragma once

#include "bef/dt.hpp"

#include <filesystem>

namespace bef {

// Versioned binary containers, all little-endian:
//   BEFK  key file:      magic, u32 version, backend id, u8 key kind, key bytes
//   BEFD  dataset file:  magic, u32 version, backend id, u32 n, u32 m,
//                        feature bits row-major, then label bits
//   BEFM  model file:    magic, u32 version, backend id, u32 m, u32 max_depth,
//                        u32 count_width, u32 threshold_width, u8 protocol,
//                        nodes breadth-first (internal: m selector bits
//                        [+ threshold word], leaf: 1 label bit)
//   BEFR  result file:   magic, u32 version, backend id, u32 n, n result bits
// Every ciphertext is written as u32 length + backend-native bytes, so the
// layout of a container depends only on the plaintext shape parameters.
inline constexpr std::uint32_t kContainerVersion = 1;

struct KeyFile {
    std::string backend;
    KeyKind kind;
    std::vector<std::uint8_t> key_bytes;
};

void write_key_file(const std::filesystem::path& path, const std::string& backend, KeyKind kind,
                    std::span<const std::uint8_t> key_bytes);
KeyFile read_key_file(const std::filesystem::path& path);

void write_dataset_file(const std::filesystem::path& path, Backend& backend,
                        const dt::EncryptedDataset& dataset);
dt::EncryptedDataset read_dataset_file(const std::filesystem::path& path, Backend& backend);

void write_model_file(const std::filesystem::path& path, Backend& backend,
                      const dt::TrainedTree& tree);
dt::TrainedTree read_model_file(const std::filesystem::path& path, Backend& backend);
std::vector<std::uint8_t> serialize_model(Backend& backend, const dt::TrainedTree& tree);

void write_result_file(const std::filesystem::path& path, Backend& backend,
                       std::span<const CipherBit> results);
std::vector<CipherBit> read_result_file(const std::filesystem::path& path, Backend& backend);

// Backend id recorded in a container, without loading the payload.
std::string peek_backend(const std::filesystem::path& path);
std::string peek_magic(const std::filesystem::path& path);

}  // namespace bef
