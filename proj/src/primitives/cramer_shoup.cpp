#include "arid/primitives/cramer_shoup.hpp"

namespace arid::csc {

KeyPair keygen(const BilinearContext& ctx, RandomSource& rng) {
    KeyPair kp;
    Scalar a = ctx.random_nonzero_scalar(rng);
    Scalar b = ctx.random_nonzero_scalar(rng);
    kp.pk.g1 = ctx.mul(ctx.gt(), a);
    kp.pk.g2 = ctx.mul(ctx.gt(), b);
    kp.sk.x1 = ctx.random_scalar(rng);
    kp.sk.x2 = ctx.random_scalar(rng);
    kp.sk.y1 = ctx.random_scalar(rng);
    kp.sk.y2 = ctx.random_scalar(rng);
    kp.sk.z1 = ctx.random_scalar(rng);
    kp.sk.z2 = ctx.random_scalar(rng);
    kp.pk.c = ctx.add(ctx.mul(kp.pk.g1, kp.sk.x1), ctx.mul(kp.pk.g2, kp.sk.x2));
    kp.pk.d = ctx.add(ctx.mul(kp.pk.g1, kp.sk.y1), ctx.mul(kp.pk.g2, kp.sk.y2));
    kp.pk.h = ctx.add(ctx.mul(kp.pk.g1, kp.sk.z1), ctx.mul(kp.pk.g2, kp.sk.z2));
    return kp;
}

Scalar alpha_hash(const BilinearContext& ctx, const GroupElement& u1, const GroupElement& u2,
                  const GroupElement& e) {
    HashInput in(kAlphaLabel);
    in.add(ctx.serialize(u1)).add(ctx.serialize(u2)).add(ctx.serialize(e));
    return ctx.hash_to_scalar(in);
}

Ciphertext encrypt(const BilinearContext& ctx, const PublicKey& pk, const GroupElement& m,
                   const Scalar& r) {
    Ciphertext ct;
    ct.u1 = ctx.mul(pk.g1, r);
    ct.u2 = ctx.mul(pk.g2, r);
    ct.e = ctx.add(ctx.mul(pk.h, r), m);
    Scalar alpha = alpha_hash(ctx, ct.u1, ct.u2, ct.e);
    ct.psi = ctx.add(ctx.mul(pk.c, r), ctx.mul(pk.d, ctx.s_mul(r, alpha)));
    return ct;
}

std::optional<GroupElement> decrypt(const BilinearContext& ctx, const SecretKey& sk,
                                    const Ciphertext& ct) {
    Scalar alpha = alpha_hash(ctx, ct.u1, ct.u2, ct.e);
    GroupElement check = ctx.add(ctx.mul(ct.u1, ctx.s_add(sk.x1, ctx.s_mul(sk.y1, alpha))),
                                 ctx.mul(ct.u2, ctx.s_add(sk.x2, ctx.s_mul(sk.y2, alpha))));
    if (!(check == ct.psi)) return std::nullopt;
    return ctx.sub(ct.e, ctx.add(ctx.mul(ct.u1, sk.z1), ctx.mul(ct.u2, sk.z2)));
}

}  // namespace arid::csc
