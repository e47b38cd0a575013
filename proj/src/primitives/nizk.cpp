#include "arid/primitives/nizk.hpp"

namespace arid::nizk {

namespace {
Scalar challenge(const BilinearContext& ctx, const GroupElement& Q, const GroupElement& U,
                 const GroupElement& B2, const std::vector<uint8_t>& bind, const GroupElement& A,
                 const GroupElement& B) {
    HashInput in("a2rid/nizk");
    in.add(ctx.serialize(Q))
        .add(ctx.serialize(U))
        .add(ctx.serialize(B2))
        .add(bind)
        .add(ctx.serialize(A))
        .add(ctx.serialize(B));
    return ctx.hash_to_scalar(in);
}
}  // namespace

Proof prove(const BilinearContext& ctx, const GroupElement& Q, const GroupElement& U,
            const GroupElement& B2, const Scalar& w, const std::vector<uint8_t>& bind,
            RandomSource& rng) {
    Scalar chi = ctx.random_nonzero_scalar(rng);
    GroupElement A = ctx.mul(Q, chi);
    GroupElement B = ctx.mul(B2, chi);
    Proof p;
    p.c = challenge(ctx, Q, U, B2, bind, A, B);
    p.s = ctx.s_sub(chi, ctx.s_mul(p.c, w));
    return p;
}

bool verify(const BilinearContext& ctx, const GroupElement& Q, const GroupElement& U,
            const GroupElement& B2, const GroupElement& V, const Proof& proof,
            const std::vector<uint8_t>& bind) {
    GroupElement A = ctx.add(ctx.mul(Q, proof.s), ctx.mul(U, proof.c));
    GroupElement B = ctx.add(ctx.mul(B2, proof.s), ctx.mul(V, proof.c));
    return challenge(ctx, Q, U, B2, bind, A, B) == proof.c;
}

}  // namespace arid::nizk
