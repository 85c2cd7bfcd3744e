#pragma once

#include "bef/backend.hpp"

#include <memory>

namespace bef::test {

struct Fixture {
    std::unique_ptr<Backend> backend;
    KeyPair keys;

    Backend& be() { return *backend; }
    const ClientKey& ck() { return keys.client_key; }
};

inline Fixture make_fixture(std::string_view name = "clear", std::uint64_t seed = 1) {
    Fixture f;
    f.backend = make_backend(name);
    SecurityConfig config;
    config.rng_seed = seed;
    config.insecure_test_mode = true;
    f.keys = f.backend->keygen(config);
    f.backend->use_evaluation_key(f.keys.evaluation_key);
    return f;
}

}  // namespace bef::test
