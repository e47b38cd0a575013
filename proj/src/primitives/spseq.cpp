#include "arid/primitives/spseq.hpp"

#include "arid/errors.hpp"

namespace arid::spseq {

KeyPair keygen(const BilinearContext& ctx, size_t l, RandomSource& rng) {
    if (l < 2) throw CryptoError("spseq: vector length must be >= 2");
    KeyPair kp;
    kp.sk.x.reserve(l);
    kp.pk.xhat.reserve(l);
    for (size_t i = 0; i < l; i++) {
        Scalar xi = ctx.random_nonzero_scalar(rng);
        kp.sk.x.push_back(xi);
        kp.pk.xhat.push_back(ctx.mul(ctx.g2(), xi));
    }
    return kp;
}

Signature sign(const BilinearContext& ctx, const SecretKey& sk,
               const std::vector<GroupElement>& m, RandomSource& rng) {
    if (m.size() != sk.x.size()) throw CryptoError("spseq: wrong message vector length");
    for (const auto& mi : m)
        if (ctx.is_identity(mi)) throw CryptoError("spseq: identity message component");
    Scalar y = ctx.random_nonzero_scalar(rng);
    GroupElement acc = ctx.identity(Group::G1);
    for (size_t i = 0; i < m.size(); i++) acc = ctx.add(acc, ctx.mul(m[i], sk.x[i]));
    Signature sig;
    sig.z = ctx.mul(acc, y);
    Scalar yinv = ctx.s_inv(y);
    sig.y = ctx.mul(ctx.g1(), yinv);
    sig.yhat = ctx.mul(ctx.g2(), yinv);
    return sig;
}

bool verify(const BilinearContext& ctx, const PublicKey& pk, const std::vector<GroupElement>& m,
            const Signature& sig) {
    if (m.size() != pk.xhat.size()) return false;
    if (ctx.is_identity(sig.y) || ctx.is_identity(sig.yhat)) return false;
    GroupElement lhs = ctx.identity(Group::Gt);
    for (size_t i = 0; i < m.size(); i++) lhs = ctx.add(lhs, ctx.pairing(m[i], pk.xhat[i]));
    if (!(lhs == ctx.pairing(sig.z, sig.yhat))) return false;
    return ctx.pairing(sig.y, ctx.g2()) == ctx.pairing(ctx.g1(), sig.yhat);
}

bool vkey(const BilinearContext& ctx, const SecretKey& sk, const PublicKey& pk) {
    if (sk.x.size() != pk.xhat.size()) return false;
    for (size_t i = 0; i < sk.x.size(); i++)
        if (!(ctx.mul(ctx.g2(), sk.x[i]) == pk.xhat[i])) return false;
    return true;
}

std::pair<std::vector<GroupElement>, Signature> chgrep(const BilinearContext& ctx,
                                                       const PublicKey& pk,
                                                       const std::vector<GroupElement>& m,
                                                       const Signature& sig, const Scalar& rho,
                                                       RandomSource& rng) {
    if (rho.v == 0) throw CryptoError("spseq: zero representative scalar");
    if (!verify(ctx, pk, m, sig)) throw CryptoError("spseq: invalid input signature");
    Scalar psi = ctx.random_nonzero_scalar(rng);
    std::vector<GroupElement> m2;
    m2.reserve(m.size());
    for (const auto& mi : m) m2.push_back(ctx.mul(mi, rho));
    Signature s2;
    s2.z = ctx.mul(sig.z, ctx.s_mul(psi, rho));
    Scalar psinv = ctx.s_inv(psi);
    s2.y = ctx.mul(sig.y, psinv);
    s2.yhat = ctx.mul(sig.yhat, psinv);
    return {std::move(m2), s2};
}

}  // namespace arid::spseq
