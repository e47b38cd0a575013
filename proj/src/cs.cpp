#include "arid/cs.hpp"

#include "arid/primitives/cramer_shoup.hpp"

namespace arid::cs {

namespace {

constexpr uint8_t kSigVersion = 0x01;

// H(T1 ‖ T2 ‖ T3): shared with the standalone Cramer-Shoup α-hash so the
// (T1..T4) layer is decryptable by the standalone decryptor.
Scalar t4_hash(const BilinearContext& ctx, const GroupElement& t1, const GroupElement& t2,
               const GroupElement& t3) {
    return csc::alpha_hash(ctx, t1, t2, t3);
}

Scalar challenge_hash(const BilinearContext& ctx, const GroupPublicKey& gpk,
                      const GroupElement& r1, const GroupElement& r2, const GroupElement& r3,
                      const GroupElement& r4, const GroupElement& r5,
                      const std::vector<uint8_t>& msg) {
    HashInput in("a2rid/cs/challenge");
    in.add(ctx.serialize(r1))
        .add(ctx.serialize(r2))
        .add(ctx.serialize(r3))
        .add(ctx.serialize(r4))
        .add(ctx.serialize(r5))
        .add(ctx.serialize(ctx.g1()))
        .add(ctx.serialize(ctx.gt()))
        .add(ctx.serialize(gpk.x))
        .add(ctx.serialize(gpk.y))
        .add(ctx.serialize(gpk.h))
        .add(ctx.serialize(gpk.y1))
        .add(ctx.serialize(gpk.y2))
        .add(ctx.serialize(gpk.y3))
        .add(msg);
    return ctx.hash_to_scalar(in);
}

Scalar join_hash(const BilinearContext& ctx, const GroupElement& r) {
    HashInput in("a2rid/cs/join");
    in.add(ctx.serialize(ctx.g1())).add(ctx.serialize(r));
    return ctx.hash_to_scalar(in);
}

}  // namespace

SetupResult setup(const BilinearContext& ctx, RandomSource& rng) {
    SetupResult out;
    out.ik.x = ctx.random_nonzero_scalar(rng);
    out.ik.y = ctx.random_nonzero_scalar(rng);
    out.gpk.x = ctx.mul(ctx.g1(), out.ik.x);
    out.gpk.xhat = ctx.mul(ctx.g2(), out.ik.x);
    out.gpk.yhat = ctx.mul(ctx.g2(), out.ik.y);
    out.gpk.y = ctx.mul(ctx.gt(), out.ik.y);
    Scalar w = ctx.random_nonzero_scalar(rng);
    out.gpk.h = ctx.mul(ctx.gt(), w);
    out.ok.x1 = ctx.random_scalar(rng);
    out.ok.x2 = ctx.random_scalar(rng);
    out.ok.x3 = ctx.random_scalar(rng);
    out.ok.x4 = ctx.random_scalar(rng);
    out.ok.x5 = ctx.random_scalar(rng);
    out.gpk.y1 = ctx.add(ctx.mul(ctx.gt(), out.ok.x1), ctx.mul(out.gpk.h, out.ok.x2));
    out.gpk.y2 = ctx.add(ctx.mul(ctx.gt(), out.ok.x3), ctx.mul(out.gpk.h, out.ok.x4));
    out.gpk.y3 = ctx.mul(ctx.gt(), out.ok.x5);
    return out;
}

std::pair<JoinState, JoinRequest> join_request(const BilinearContext& ctx,
                                               const GroupPublicKey& /*gpk*/, RandomSource& rng) {
    JoinState st;
    st.k = ctx.random_nonzero_scalar(rng);
    st.p1 = ctx.mul(ctx.g1(), st.k);
    Scalar rk = ctx.random_nonzero_scalar(rng);
    GroupElement r = ctx.mul(ctx.g1(), rk);
    JoinRequest req;
    req.p1 = st.p1;
    req.eta1 = join_hash(ctx, r);
    req.sk = ctx.s_add(ctx.s_mul(req.eta1, st.k), rk);
    return {st, req};
}

Certificate join_issue(const BilinearContext& ctx, const GroupPublicKey& /*gpk*/,
                       const IssuingKey& ik, const JoinRequest& req, RegistrationList& reg,
                       RandomSource& rng) {
    if (req.p1.group != Group::G1 || ctx.is_identity(req.p1))
        throw CryptoError("cs join: malformed member point");
    // γ = g^{Sk} / P1^{η1} must reproduce the commitment behind η1
    GroupElement gamma = ctx.sub(ctx.mul(ctx.g1(), req.sk), ctx.mul(req.p1, req.eta1));
    if (!(join_hash(ctx, gamma) == req.eta1))
        throw CryptoError("cs join: proof of knowledge failed");
    for (const auto& e : reg)
        if (e.p1 == req.p1) throw CryptoError("cs join: duplicate member point");
    Scalar r = ctx.random_nonzero_scalar(rng);
    Certificate cert;
    cert.a = ctx.mul(ctx.g1(), r);
    cert.b = ctx.mul(cert.a, ik.y);
    // c = a^x · P1^{r·x·y}
    cert.c = ctx.add(ctx.mul(cert.a, ik.x),
                     ctx.mul(req.p1, ctx.s_mul(r, ctx.s_mul(ik.x, ik.y))));
    reg.push_back(RegistrationEntry{req.p1, ctx.pairing(req.p1, ctx.g2())});
    return cert;
}

MemberKey join_finalize(const BilinearContext& ctx, const GroupPublicKey& gpk,
                        const JoinState& st, const Certificate& cert) {
    if (ctx.is_identity(cert.a)) throw CryptoError("cs join: degenerate certificate");
    // ê(a, Y) = ê(g, b): b = a^y
    if (!(ctx.pairing(cert.a, gpk.yhat) == ctx.pairing(cert.b, ctx.g2())))
        throw CryptoError("cs join: certificate b-component check failed");
    // ê(c, g) = ê(a, X)·ê(b, X)^k: c = a^{x(1 + k·y)}
    GroupElement rhs = ctx.add(ctx.pairing(cert.a, gpk.xhat),
                               ctx.mul(ctx.pairing(cert.b, gpk.xhat), st.k));
    if (!(ctx.pairing(cert.c, ctx.g2()) == rhs))
        throw CryptoError("cs join: certificate c-component check failed");
    return MemberKey{st.k, cert.a, cert.b, cert.c};
}

Signature sign(const BilinearContext& ctx, const GroupPublicKey& gpk, const MemberKey& gsk,
               const std::vector<uint8_t>& msg, RandomSource& rng, SignTranscript* tr) {
    // nonce draw order is part of the contract (scripted-randomness tests)
    Scalar u = ctx.random_nonzero_scalar(rng);
    Scalar r = ctx.random_nonzero_scalar(rng);
    Scalar rp = ctx.random_nonzero_scalar(rng);
    Scalar rho = ctx.random_nonzero_scalar(rng);
    Scalar mu = ctx.random_nonzero_scalar(rng);
    Scalar nu = ctx.random_nonzero_scalar(rng);

    Signature sig;
    GroupElement p2 = ctx.mul(ctx.gt(), gsk.k);  // ê(P1, g) = g_T^k
    sig.t1 = ctx.mul(ctx.gt(), u);
    sig.t2 = ctx.mul(gpk.h, u);
    sig.t3 = ctx.add(ctx.mul(gpk.y1, u), p2);
    Scalar h = t4_hash(ctx, sig.t1, sig.t2, sig.t3);
    sig.t4 = ctx.add(ctx.mul(gpk.y2, u), ctx.mul(gpk.y3, ctx.s_mul(u, h)));
    sig.t5 = ctx.mul(gsk.a, rp);
    sig.t6 = ctx.mul(gsk.b, rp);
    sig.t7 = ctx.mul(gsk.c, ctx.s_mul(r, rp));

    GroupElement r1 = ctx.sub(ctx.mul(ctx.pairing(sig.t7, ctx.g2()), rho),
                              ctx.mul(ctx.pairing(sig.t6, gpk.xhat), mu));
    GroupElement r2 = ctx.mul(ctx.gt(), nu);
    GroupElement r3 = ctx.mul(gpk.h, nu);
    GroupElement r4 = ctx.add(ctx.mul(gpk.y1, nu), ctx.mul(ctx.gt(), mu));
    GroupElement r5 = ctx.add(ctx.mul(gpk.y2, nu), ctx.mul(gpk.y3, ctx.s_mul(nu, h)));
    sig.c = challenge_hash(ctx, gpk, r1, r2, r3, r4, r5, msg);
    sig.s_rho = ctx.s_add(ctx.s_mul(sig.c, ctx.s_inv(r)), rho);
    sig.s_mu = ctx.s_add(ctx.s_mul(sig.c, gsk.k), mu);
    sig.s_nu = ctx.s_add(ctx.s_mul(sig.c, u), nu);

    if (tr) {
        tr->u = u; tr->r = r; tr->rp = rp; tr->rho = rho; tr->mu = mu; tr->nu = nu;
        tr->h = h; tr->r1 = r1; tr->r2 = r2; tr->r3 = r3; tr->r4 = r4; tr->r5 = r5;
        tr->p2 = p2;
    }
    return sig;
}

bool verify(const BilinearContext& ctx, const GroupPublicKey& gpk,
            const std::vector<uint8_t>& msg, const Signature& sig, VerifyTranscript* tr) {
    Scalar h = t4_hash(ctx, sig.t1, sig.t2, sig.t3);
    // R1' = ê(g,T7)^{S_ρ} / (ê(X,T6)^{S_μ} · ê(X,T5)^c)
    GroupElement r1 = ctx.sub(ctx.mul(ctx.pairing(sig.t7, ctx.g2()), sig.s_rho),
                              ctx.add(ctx.mul(ctx.pairing(sig.t6, gpk.xhat), sig.s_mu),
                                      ctx.mul(ctx.pairing(sig.t5, gpk.xhat), sig.c)));
    GroupElement r2 = ctx.sub(ctx.mul(ctx.gt(), sig.s_nu), ctx.mul(sig.t1, sig.c));
    GroupElement r3 = ctx.sub(ctx.mul(gpk.h, sig.s_nu), ctx.mul(sig.t2, sig.c));
    GroupElement r4 = ctx.sub(ctx.add(ctx.mul(gpk.y1, sig.s_nu), ctx.mul(ctx.gt(), sig.s_mu)),
                              ctx.mul(sig.t3, sig.c));
    GroupElement r5 = ctx.sub(ctx.add(ctx.mul(gpk.y2, sig.s_nu),
                                      ctx.mul(gpk.y3, ctx.s_mul(h, sig.s_nu))),
                              ctx.mul(sig.t4, sig.c));
    Scalar c_prime = challenge_hash(ctx, gpk, r1, r2, r3, r4, r5, msg);
    bool cert_ok = ctx.pairing(sig.t5, gpk.yhat) == ctx.pairing(sig.t6, ctx.g2());
    if (tr) {
        tr->h = h; tr->c_prime = c_prime; tr->cert_ok = cert_ok;
        tr->r1 = r1; tr->r2 = r2; tr->r3 = r3; tr->r4 = r4; tr->r5 = r5;
    }
    return cert_ok && c_prime == sig.c;
}

size_t open(const BilinearContext& ctx, const GroupPublicKey& /*gpk*/, const OpeningKey& ok,
            const RegistrationList& reg, const Signature& sig) {
    Scalar h = t4_hash(ctx, sig.t1, sig.t2, sig.t3);
    // T4 =? T1^{x3 + x5·H} · T2^{x4}
    GroupElement expect = ctx.add(ctx.mul(sig.t1, ctx.s_add(ok.x3, ctx.s_mul(ok.x5, h))),
                                  ctx.mul(sig.t2, ok.x4));
    if (!(expect == sig.t4)) throw CryptoError("cs open: ciphertext validity check failed");
    GroupElement p2 = ctx.sub(sig.t3, ctx.add(ctx.mul(sig.t1, ok.x1), ctx.mul(sig.t2, ok.x2)));
    for (size_t i = 0; i < reg.size(); i++)
        if (reg[i].p2 == p2) return i;
    throw CryptoError("cs open: no matching registration entry");
}

std::vector<uint8_t> serialize_signature(const BilinearContext& ctx, const Signature& sig) {
    std::vector<uint8_t> out;
    out.push_back(kSigVersion);
    auto put = [&](const std::vector<uint8_t>& b) { out.insert(out.end(), b.begin(), b.end()); };
    put(ctx.serialize(sig.s_rho));
    put(ctx.serialize(sig.s_mu));
    put(ctx.serialize(sig.s_nu));
    for (const GroupElement* t : {&sig.t1, &sig.t2, &sig.t3, &sig.t4})
        put(ctx.serialize(*t));
    for (const GroupElement* t : {&sig.t5, &sig.t6, &sig.t7})
        put(ctx.serialize(*t));
    put(ctx.serialize(sig.c));
    return out;
}

size_t signature_blob_bytes(const BilinearContext& ctx) {
    return 1 + 4 * ctx.scalar_bytes() + 4 * ctx.element_bytes(Group::Gt) +
           3 * ctx.element_bytes(Group::G1);
}

Signature deserialize_signature(const BilinearContext& ctx, const std::vector<uint8_t>& blob) {
    if (blob.size() != signature_blob_bytes(ctx))
        throw SerializationError("cs signature: wrong blob length");
    if (blob[0] != kSigVersion) throw SerializationError("cs signature: unknown version");
    size_t off = 1;
    size_t sb = ctx.scalar_bytes();
    size_t gtb = ctx.element_bytes(Group::Gt);
    size_t g1b = ctx.element_bytes(Group::G1);
    Signature sig;
    auto get_s = [&]() {
        Scalar s = ctx.deserialize_scalar(blob.data() + off, sb);
        off += sb;
        return s;
    };
    auto get_e = [&](Group g, size_t n) {
        GroupElement e = ctx.deserialize(blob.data() + off, n, g);
        off += n;
        return e;
    };
    sig.s_rho = get_s();
    sig.s_mu = get_s();
    sig.s_nu = get_s();
    sig.t1 = get_e(Group::Gt, gtb);
    sig.t2 = get_e(Group::Gt, gtb);
    sig.t3 = get_e(Group::Gt, gtb);
    sig.t4 = get_e(Group::Gt, gtb);
    sig.t5 = get_e(Group::G1, g1b);
    sig.t6 = get_e(Group::G1, g1b);
    sig.t7 = get_e(Group::G1, g1b);
    sig.c = get_s();
    return sig;
}

std::vector<uint8_t> serialize_gpk(const BilinearContext& ctx, const GroupPublicKey& gpk) {
    std::vector<uint8_t> out;
    auto put = [&](const std::vector<uint8_t>& b) { out.insert(out.end(), b.begin(), b.end()); };
    put(ctx.serialize(gpk.x));
    put(ctx.serialize(gpk.xhat));
    put(ctx.serialize(gpk.yhat));
    put(ctx.serialize(gpk.y));
    put(ctx.serialize(gpk.h));
    put(ctx.serialize(gpk.y1));
    put(ctx.serialize(gpk.y2));
    put(ctx.serialize(gpk.y3));
    return out;
}

GroupPublicKey deserialize_gpk(const BilinearContext& ctx, const std::vector<uint8_t>& b) {
    size_t g1b = ctx.element_bytes(Group::G1);
    size_t g2b = ctx.element_bytes(Group::G2);
    size_t gtb = ctx.element_bytes(Group::Gt);
    if (b.size() != g1b + 2 * g2b + 5 * gtb)
        throw SerializationError("cs gpk: wrong length");
    size_t off = 0;
    auto get = [&](Group g, size_t n) {
        GroupElement e = ctx.deserialize(b.data() + off, n, g);
        off += n;
        return e;
    };
    GroupPublicKey gpk;
    gpk.x = get(Group::G1, g1b);
    gpk.xhat = get(Group::G2, g2b);
    gpk.yhat = get(Group::G2, g2b);
    gpk.y = get(Group::Gt, gtb);
    gpk.h = get(Group::Gt, gtb);
    gpk.y1 = get(Group::Gt, gtb);
    gpk.y2 = get(Group::Gt, gtb);
    gpk.y3 = get(Group::Gt, gtb);
    return gpk;
}

}  // namespace arid::cs
