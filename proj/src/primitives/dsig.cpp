#include "arid/primitives/dsig.hpp"

namespace arid::dsig {

namespace {
constexpr std::string_view kHashLabel = "a2rid/dsig/h2c";
}

KeyPair keygen(const BilinearContext& ctx, RandomSource& rng) {
    KeyPair kp;
    kp.sk.k = ctx.random_nonzero_scalar(rng);
    kp.pk.point = ctx.mul(ctx.g2(), kp.sk.k);
    return kp;
}

GroupElement sign(const BilinearContext& ctx, const SecretKey& sk,
                  const std::vector<uint8_t>& msg) {
    return ctx.mul(ctx.hash_to_g1(kHashLabel, msg), sk.k);
}

bool verify(const BilinearContext& ctx, const PublicKey& pk, const std::vector<uint8_t>& msg,
            const GroupElement& sig) {
    if (sig.group != Group::G1 || ctx.is_identity(sig)) return false;
    GroupElement h = ctx.hash_to_g1(kHashLabel, msg);
    return ctx.pairing(sig, ctx.g2()) == ctx.pairing(h, pk.point);
}

}  // namespace arid::dsig
