#pragma once

#include <optional>
#include <string_view>

#include "arid/algebra.hpp"

// Cramer-Shoup encryption over the target group Gt. The masking key is the
// generalized two-exponent form h = g1^{z1}·g2^{z2} (the single-z textbook
// scheme is the z2 = 0 special case); this is what lets the group-signature
// opening key double as a decryption key for the (T1..T4) ciphertext layer.
namespace arid::csc {

inline constexpr std::string_view kAlphaLabel = "a2rid/csc/alpha";

struct PublicKey {
    GroupElement g1, g2, c, d, h;  // all Gt
};
struct SecretKey {
    Scalar x1, x2, y1, y2, z1, z2;
};
struct KeyPair {
    PublicKey pk;
    SecretKey sk;
};
struct Ciphertext {
    GroupElement u1, u2, e, psi;
};

KeyPair keygen(const BilinearContext& ctx, RandomSource& rng);

// α = H(u1 ‖ u2 ‖ e); shared with the CS protocol's T4 hash.
Scalar alpha_hash(const BilinearContext& ctx, const GroupElement& u1, const GroupElement& u2,
                  const GroupElement& e);

Ciphertext encrypt(const BilinearContext& ctx, const PublicKey& pk, const GroupElement& m,
                   const Scalar& r);
std::optional<GroupElement> decrypt(const BilinearContext& ctx, const SecretKey& sk,
                                    const Ciphertext& ct);

}  // namespace arid::csc
