#pragma once

#include <utility>

#include "arid/algebra.hpp"

// Structure-preserving signatures on equivalence classes (ℓ-element G1
// message vectors): Z = y·Σ x_i·M_i, Y = (1/y)·P, Ŷ = (1/y)·P̂.
namespace arid::spseq {

struct SecretKey {
    std::vector<Scalar> x;
};
struct PublicKey {
    std::vector<GroupElement> xhat;  // x_i·P̂ in G2
};
struct KeyPair {
    SecretKey sk;
    PublicKey pk;
};
struct Signature {
    GroupElement z, y;  // G1
    GroupElement yhat;  // G2
};

KeyPair keygen(const BilinearContext& ctx, size_t l, RandomSource& rng);
Signature sign(const BilinearContext& ctx, const SecretKey& sk,
               const std::vector<GroupElement>& m, RandomSource& rng);
bool verify(const BilinearContext& ctx, const PublicKey& pk, const std::vector<GroupElement>& m,
            const Signature& sig);
bool vkey(const BilinearContext& ctx, const SecretKey& sk, const PublicKey& pk);
// Re-representation: returns (ρ·m, fresh signature on it). Verifies the input
// signature first.
std::pair<std::vector<GroupElement>, Signature> chgrep(const BilinearContext& ctx,
                                                       const PublicKey& pk,
                                                       const std::vector<GroupElement>& m,
                                                       const Signature& sig, const Scalar& rho,
                                                       RandomSource& rng);

}  // namespace arid::spseq
