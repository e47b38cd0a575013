#pragma once

#include <optional>

#include "arid/algebra.hpp"

// ECIES-style public-key encryption over G1: ephemeral DH, SHA-512 KDF,
// SHA-256 counter keystream, HMAC-SHA256 tag.
namespace arid::pke {

struct PublicKey {
    GroupElement point;  // sk·g1
};
struct SecretKey {
    Scalar k;
};
struct KeyPair {
    PublicKey pk;
    SecretKey sk;
};

KeyPair keygen(const BilinearContext& ctx, RandomSource& rng);
std::vector<uint8_t> encrypt(const BilinearContext& ctx, const PublicKey& pk,
                             const std::vector<uint8_t>& msg, RandomSource& rng);
std::optional<std::vector<uint8_t>> decrypt(const BilinearContext& ctx, const SecretKey& sk,
                                            const std::vector<uint8_t>& ct);
// serialized ciphertext length for a plaintext of the given length
size_t ciphertext_bytes(const BilinearContext& ctx, size_t msg_len);

}  // namespace arid::pke
