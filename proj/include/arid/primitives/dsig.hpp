#pragma once

#include "arid/algebra.hpp"

// BLS signatures: pk = sk·g2, σ = sk·HashToG1(m), verified by
// e(σ, g2) = e(H(m), pk).
namespace arid::dsig {

struct PublicKey {
    GroupElement point;  // G2
};
struct SecretKey {
    Scalar k;
};
struct KeyPair {
    PublicKey pk;
    SecretKey sk;
};

KeyPair keygen(const BilinearContext& ctx, RandomSource& rng);
GroupElement sign(const BilinearContext& ctx, const SecretKey& sk,
                  const std::vector<uint8_t>& msg);
bool verify(const BilinearContext& ctx, const PublicKey& pk, const std::vector<uint8_t>& msg,
            const GroupElement& sig);

}  // namespace arid::dsig
