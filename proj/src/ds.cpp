#include "arid/ds.hpp"

#include <cstring>

namespace arid::ds {

namespace {

constexpr uint8_t kSigVersion = 0x01;
constexpr uint8_t kStoreVersion = 0x01;
constexpr char kStoreMagic[4] = {'A', '2', 'P', 'S'};

std::vector<uint8_t> crs_seed(std::string_view label, RandomSource& rng) {
    HashInput in(label);
    in.add(rng.bytes(32));
    auto d = sha256(in.bytes());
    return {d.begin(), d.end()};
}

std::vector<uint8_t> nizk_bind(const GroupPublicKey& gpk, const std::vector<uint8_t>& c_ji) {
    HashInput in("a2rid/ds/join-bind");
    in.add(gpk.crs_j).add(c_ji);
    return in.bytes();
}

void add_sigma1(const BilinearContext& ctx, HashInput& in, const Signature& sig) {
    in.add(ctx.serialize(sig.r1))
        .add(ctx.serialize(sig.p1))
        .add(ctx.serialize(sig.sigma1.z))
        .add(ctx.serialize(sig.sigma1.y))
        .add(ctx.serialize(sig.sigma1.yhat));
}

Scalar challenge_cca2(const BilinearContext& ctx, const GroupPublicKey& gpk,
                      const GroupElement& n, const GroupElement& m1hat,
                      const GroupElement& m2hat, const Signature& sig,
                      const std::vector<uint8_t>& msg) {
    HashInput in("a2rid/ds/cca2");
    in.add(gpk.crs_s)
        .add(ctx.serialize(n))
        .add(ctx.serialize(m1hat))
        .add(ctx.serialize(m2hat));
    add_sigma1(ctx, in, sig);
    in.add(msg);
    return ctx.hash_to_scalar(in);
}

Scalar challenge_cpa(const BilinearContext& ctx, const GroupPublicKey& gpk, const GroupElement& n,
                     const Signature& sig, const std::vector<uint8_t>& msg) {
    HashInput in("a2rid/ds/cpa");
    in.add(gpk.crs_s).add(ctx.serialize(n));
    add_sigma1(ctx, in, sig);
    in.add(msg);
    return ctx.hash_to_scalar(in);
}

// Draws the per-message nonces (fixed order: ρ, φ, [u,] v[, η]) and computes
// every group element the online phase needs. Shared by the RNG signing path
// and the precompute generator so both produce identical signatures for
// identical randomness.
Bundle make_bundle(const BilinearContext& ctx, const GroupPublicKey& /*gpk*/,
                   const MemberKey& gsk, Mode mode, RandomSource& rng) {
    Bundle b;
    b.rho = ctx.random_nonzero_scalar(rng);
    Scalar phi = ctx.random_nonzero_scalar(rng);
    if (mode == Mode::Cca2) b.u = ctx.random_nonzero_scalar(rng);
    b.v = ctx.random_nonzero_scalar(rng);
    if (mode == Mode::Cca2) b.eta = ctx.random_nonzero_scalar(rng);

    b.r1 = ctx.mul(gsk.r_pt, b.rho);
    b.p1 = ctx.mul(gsk.p_pt, b.rho);
    b.z = ctx.mul(gsk.sigma.z, ctx.s_mul(phi, b.rho));
    Scalar phinv = ctx.s_inv(phi);
    b.y = ctx.mul(gsk.sigma.y, phinv);
    b.yhat = ctx.mul(gsk.sigma.yhat, phinv);
    b.n = ctx.mul(ctx.g1(), b.v);
    if (mode == Mode::Cca2) {
        b.c1hat = ctx.mul(b.yhat, b.u);
        b.c2hat = ctx.mul(ctx.g2(), ctx.s_add(b.rho, b.u));
        b.m1hat = ctx.mul(b.yhat, b.eta);
        b.m2hat = ctx.mul(ctx.g2(), ctx.s_add(b.v, b.eta));
    } else {
        b.u = ctx.s_from(0);
        b.eta = ctx.s_from(0);
        b.c1hat = b.c2hat = b.m1hat = b.m2hat = ctx.identity(Group::G2);
    }
    return b;
}

// Online completion: only hashing and scalar-field arithmetic.
Signature finish(const BilinearContext& ctx, const GroupPublicKey& gpk, Mode mode,
                 const std::vector<uint8_t>& msg, const Bundle& b) {
    Signature sig;
    sig.mode = mode;
    sig.r1 = b.r1;
    sig.p1 = b.p1;
    sig.sigma1 = spseq::Signature{b.z, b.y, b.yhat};
    if (mode == Mode::Cca2) {
        sig.c1hat = b.c1hat;
        sig.c2hat = b.c2hat;
        sig.c = challenge_cca2(ctx, gpk, b.n, b.m1hat, b.m2hat, sig, msg);
        sig.z1 = ctx.s_add(b.v, ctx.s_mul(sig.c, b.rho));
        sig.z2 = ctx.s_add(b.eta, ctx.s_mul(sig.c, b.u));
    } else {
        sig.c1hat = sig.c2hat = ctx.identity(Group::G2);
        sig.c = challenge_cpa(ctx, gpk, b.n, sig, msg);
        sig.z1 = ctx.s_add(b.v, ctx.s_mul(sig.c, b.rho));
        sig.z2 = ctx.s_from(0);
    }
    return sig;
}

}  // namespace

std::pair<GroupPublicKey, AuthorityKeys> setup(const BilinearContext& ctx, RandomSource& rng) {
    if (ctx.pairing_type() != PairingType::Type3Asymmetric)
        throw CryptoError("ds setup: requires a Type-3 pairing context");
    GroupPublicKey gpk;
    AuthorityKeys keys;
    auto sps = spseq::keygen(ctx, 2, rng);
    keys.ik = sps.sk;
    gpk.pk_r = sps.pk;
    auto enc = pke::keygen(ctx, rng);
    keys.ok = enc.sk;
    gpk.pk_o = enc.pk;
    gpk.crs_j = crs_seed("a2rid/crs/j", rng);
    gpk.crs_o = crs_seed("a2rid/crs/o", rng);
    gpk.crs_s = crs_seed("a2rid/crs/s", rng);
    return {gpk, keys};
}

std::pair<JoinState, JoinRequest> join_request(const BilinearContext& ctx,
                                               const GroupPublicKey& gpk,
                                               const dsig::SecretKey& sk_i,
                                               const dsig::PublicKey& pk_i, RandomSource& rng) {
    JoinState st;
    st.q = ctx.random_nonzero_scalar(rng);
    st.r = ctx.random_nonzero_scalar(rng);
    st.big_q = ctx.mul(ctx.g1(), st.q);
    st.u = ctx.mul(st.big_q, st.r);
    JoinRequest req;
    req.big_q = st.big_q;
    req.u = st.u;
    GroupElement rhat = ctx.mul(ctx.g2(), st.r);
    req.c_ji = pke::encrypt(ctx, gpk.pk_o, ctx.serialize(rhat), rng);
    req.sigma_ji = dsig::sign(ctx, sk_i, req.c_ji);
    req.pi = nizk::prove(ctx, req.big_q, req.u, ctx.g2(), st.r, nizk_bind(gpk, req.c_ji), rng);
    req.pk_i = pk_i;
    return {st, req};
}

IssuedMaterial join_issue(const BilinearContext& ctx, const GroupPublicKey& gpk,
                          const AuthorityKeys& keys, Registry& registry, const JoinRequest& req,
                          RandomSource& rng) {
    if (ctx.is_identity(req.big_q) || ctx.is_identity(req.u))
        throw CryptoError("ds join: degenerate request points");
    if (!dsig::verify(ctx, req.pk_i, req.c_ji, req.sigma_ji))
        throw CryptoError("ds join: witness signature invalid");
    auto dec = pke::decrypt(ctx, keys.ok, req.c_ji);
    if (!dec) throw CryptoError("ds join: witness ciphertext undecryptable");
    GroupElement rhat;
    try {
        rhat = ctx.deserialize(*dec, Group::G2);
    } catch (const SerializationError&) {
        throw CryptoError("ds join: witness is not a valid G2 element");
    }
    if (!nizk::verify(ctx, req.big_q, req.u, ctx.g2(), rhat, req.pi, nizk_bind(gpk, req.c_ji)))
        throw CryptoError("ds join: knowledge proof failed");
    IssuedMaterial out;
    out.sigma_prime = spseq::sign(ctx, keys.ik, {req.u, req.big_q}, rng);
    registry.push_back(RegistrationEntry{req.c_ji, req.sigma_ji, req.pk_i});
    return out;
}

MemberKey join_finalize(const BilinearContext& ctx, const GroupPublicKey& gpk,
                        const JoinState& st, const dsig::PublicKey& pk_i,
                        const IssuedMaterial& issued, RandomSource& rng) {
    std::vector<GroupElement> m{st.u, st.big_q};
    if (!spseq::verify(ctx, gpk.pk_r, m, issued.sigma_prime))
        throw CryptoError("ds join finalize: issuer credential signature invalid");
    // normalize the representative to (rP, P) with ρ = q^{-1}
    Scalar mu = ctx.s_inv(st.q);
    auto [m2, cred] = spseq::chgrep(ctx, gpk.pk_r, m, issued.sigma_prime, mu, rng);
    GroupElement want_r = ctx.mul(ctx.g1(), st.r);
    if (!(m2[0] == want_r) || !(m2[1] == ctx.g1()))
        throw CryptoError("ds join finalize: credential normalization mismatch");
    if (!spseq::verify(ctx, gpk.pk_r, m2, cred))
        throw CryptoError("ds join finalize: normalized credential invalid");
    (void)pk_i;
    return MemberKey{m2[0], m2[1], cred, mu};
}

size_t PrecomputeStore::bundle_bytes(const BilinearContext& ctx, Mode mode) {
    size_t sb = ctx.scalar_bytes();
    size_t g1b = ctx.element_bytes(Group::G1);
    size_t g2b = ctx.element_bytes(Group::G2);
    size_t n = 2 * sb + 5 * g1b + g2b;  // rho, v, r1, p1, z, y, n, yhat
    if (mode == Mode::Cca2) n += 2 * sb + 4 * g2b;
    return n;
}

size_t PrecomputeStore::total_bytes(const BilinearContext& ctx) const {
    return 15 + bundles.size() * bundle_bytes(ctx, mode);
}

std::vector<uint8_t> PrecomputeStore::serialize(const BilinearContext& ctx) const {
    std::vector<uint8_t> out(kStoreMagic, kStoreMagic + 4);
    out.push_back(kStoreVersion);
    out.push_back(static_cast<uint8_t>(mode));
    out.push_back(static_cast<uint8_t>(curve));
    uint32_t cnt = static_cast<uint32_t>(bundles.size());
    uint32_t blen = static_cast<uint32_t>(bundle_bytes(ctx, mode));
    for (uint32_t v : {cnt, blen}) {
        out.push_back(static_cast<uint8_t>(v >> 24));
        out.push_back(static_cast<uint8_t>(v >> 16));
        out.push_back(static_cast<uint8_t>(v >> 8));
        out.push_back(static_cast<uint8_t>(v));
    }
    auto put = [&](const std::vector<uint8_t>& b) { out.insert(out.end(), b.begin(), b.end()); };
    for (const auto& b : bundles) {
        put(ctx.serialize(b.rho));
        put(ctx.serialize(b.v));
        if (mode == Mode::Cca2) {
            put(ctx.serialize(b.u));
            put(ctx.serialize(b.eta));
        }
        for (const GroupElement* e : {&b.r1, &b.p1, &b.z, &b.y}) put(ctx.serialize(*e));
        put(ctx.serialize(b.yhat));
        put(ctx.serialize(b.n));
        if (mode == Mode::Cca2)
            for (const GroupElement* e : {&b.c1hat, &b.c2hat, &b.m1hat, &b.m2hat})
                put(ctx.serialize(*e));
    }
    return out;
}

PrecomputeStore PrecomputeStore::deserialize(const BilinearContext& ctx,
                                             const std::vector<uint8_t>& b) {
    if (b.size() < 15 || memcmp(b.data(), kStoreMagic, 4) != 0)
        throw SerializationError("precompute store: bad magic");
    if (b[4] != kStoreVersion) throw SerializationError("precompute store: unknown version");
    PrecomputeStore st;
    if (b[5] != static_cast<uint8_t>(Mode::Cca2) && b[5] != static_cast<uint8_t>(Mode::Cpa))
        throw SerializationError("precompute store: unknown mode");
    st.mode = static_cast<Mode>(b[5]);
    st.curve = static_cast<CurveId>(b[6]);
    if (st.curve != ctx.curve()) throw SerializationError("precompute store: curve mismatch");
    auto u32 = [&](size_t off) {
        return (uint32_t(b[off]) << 24) | (uint32_t(b[off + 1]) << 16) |
               (uint32_t(b[off + 2]) << 8) | uint32_t(b[off + 3]);
    };
    uint32_t cnt = u32(7), blen = u32(11);
    if (blen != bundle_bytes(ctx, st.mode))
        throw SerializationError("precompute store: bundle length mismatch");
    if (b.size() != 15 + size_t(cnt) * blen)
        throw SerializationError("precompute store: truncated");
    size_t off = 15;
    size_t sb = ctx.scalar_bytes();
    size_t g1b = ctx.element_bytes(Group::G1);
    size_t g2b = ctx.element_bytes(Group::G2);
    auto get_s = [&]() {
        Scalar s = ctx.deserialize_scalar(b.data() + off, sb);
        off += sb;
        return s;
    };
    auto get_e = [&](Group g) {
        size_t n = (g == Group::G1) ? g1b : g2b;
        GroupElement e = ctx.deserialize(b.data() + off, n, g);
        off += n;
        return e;
    };
    for (uint32_t i = 0; i < cnt; i++) {
        Bundle bu;
        bu.rho = get_s();
        bu.v = get_s();
        if (st.mode == Mode::Cca2) {
            bu.u = get_s();
            bu.eta = get_s();
        } else {
            bu.u = ctx.s_from(0);
            bu.eta = ctx.s_from(0);
        }
        bu.r1 = get_e(Group::G1);
        bu.p1 = get_e(Group::G1);
        bu.z = get_e(Group::G1);
        bu.y = get_e(Group::G1);
        bu.yhat = get_e(Group::G2);
        bu.n = get_e(Group::G1);
        if (st.mode == Mode::Cca2) {
            bu.c1hat = get_e(Group::G2);
            bu.c2hat = get_e(Group::G2);
            bu.m1hat = get_e(Group::G2);
            bu.m2hat = get_e(Group::G2);
        } else {
            bu.c1hat = bu.c2hat = bu.m1hat = bu.m2hat = ctx.identity(Group::G2);
        }
        st.bundles.push_back(std::move(bu));
    }
    return st;
}

PrecomputeStore precompute_generate(const BilinearContext& ctx, const GroupPublicKey& gpk,
                                    const MemberKey& gsk, Mode mode, uint32_t flight_seconds,
                                    uint32_t rate, RandomSource& rng) {
    uint64_t count = uint64_t(flight_seconds) * rate;
    if (count < 1) throw CryptoError("precompute: flight_seconds * rate must be >= 1");
    PrecomputeStore st;
    st.mode = mode;
    st.curve = ctx.curve();
    for (uint64_t i = 0; i < count; i++)
        st.bundles.push_back(make_bundle(ctx, gpk, gsk, mode, rng));
    return st;
}

Signature sign(const BilinearContext& ctx, const GroupPublicKey& gpk, const MemberKey& gsk,
               Mode mode, const std::vector<uint8_t>& msg, RandomSource& rng) {
    Bundle b = make_bundle(ctx, gpk, gsk, mode, rng);
    return finish(ctx, gpk, mode, msg, b);
}

Signature sign(const BilinearContext& ctx, const GroupPublicKey& gpk, Mode mode,
               const std::vector<uint8_t>& msg, PrecomputeStore& store) {
    if (store.mode != mode) throw CryptoError("precompute store mode mismatch");
    if (store.bundles.empty()) throw CryptoError("precompute store exhausted");
    Bundle b = std::move(store.bundles.front());
    store.bundles.pop_front();
    return finish(ctx, gpk, mode, msg, b);
}

bool verify(const BilinearContext& ctx, const GroupPublicKey& gpk,
            const std::vector<uint8_t>& msg, const Signature& sig) {
    if (ctx.is_identity(sig.r1) || ctx.is_identity(sig.p1)) return false;
    if (!spseq::verify(ctx, gpk.pk_r, {sig.r1, sig.p1}, sig.sigma1)) return false;
    GroupElement n = ctx.sub(ctx.mul(ctx.g1(), sig.z1), ctx.mul(sig.p1, sig.c));
    if (sig.mode == Mode::Cca2) {
        GroupElement m1 = ctx.sub(ctx.mul(sig.sigma1.yhat, sig.z2), ctx.mul(sig.c1hat, sig.c));
        GroupElement m2 = ctx.sub(ctx.mul(ctx.g2(), ctx.s_add(sig.z1, sig.z2)),
                                  ctx.mul(sig.c2hat, sig.c));
        return challenge_cca2(ctx, gpk, n, m1, m2, sig, msg) == sig.c;
    }
    return challenge_cpa(ctx, gpk, n, sig, msg) == sig.c;
}

size_t open(const BilinearContext& ctx, const GroupPublicKey& /*gpk*/, const AuthorityKeys& keys,
            const Registry& registry, const Signature& sig) {
    GroupElement lhs = ctx.pairing(sig.r1, ctx.g2());
    std::vector<size_t> matches;
    for (size_t i = 0; i < registry.size(); i++) {
        auto dec = pke::decrypt(ctx, keys.ok, registry[i].c_ji);
        if (!dec) continue;
        GroupElement rhat;
        try {
            rhat = ctx.deserialize(*dec, Group::G2);
        } catch (const SerializationError&) {
            continue;
        }
        if (ctx.pairing(sig.p1, rhat) == lhs) matches.push_back(i);
    }
    if (matches.empty()) throw CryptoError("ds open: no matching registration entry");
    if (matches.size() > 1) throw CryptoError("ds open: multiple matches (registry corruption)");
    return matches[0];
}

size_t signature_blob_bytes(const BilinearContext& ctx, Mode mode) {
    size_t sb = ctx.scalar_bytes();
    size_t g1b = ctx.element_bytes(Group::G1);
    size_t g2b = ctx.element_bytes(Group::G2);
    size_t n = 1 + 4 * g1b + g2b + 2 * sb;  // ver, r1, p1, z, y, yhat, c, z1
    if (mode == Mode::Cca2) n += 2 * g2b + sb;
    return n;
}

std::vector<uint8_t> serialize_signature(const BilinearContext& ctx, const Signature& sig) {
    std::vector<uint8_t> out;
    out.push_back(kSigVersion);
    auto put = [&](const std::vector<uint8_t>& b) { out.insert(out.end(), b.begin(), b.end()); };
    for (const GroupElement* e : {&sig.r1, &sig.p1, &sig.sigma1.z, &sig.sigma1.y})
        put(ctx.serialize(*e));
    put(ctx.serialize(sig.sigma1.yhat));
    if (sig.mode == Mode::Cca2) {
        put(ctx.serialize(sig.c1hat));
        put(ctx.serialize(sig.c2hat));
    }
    put(ctx.serialize(sig.c));
    put(ctx.serialize(sig.z1));
    if (sig.mode == Mode::Cca2) put(ctx.serialize(sig.z2));
    return out;
}

Signature deserialize_signature(const BilinearContext& ctx, Mode mode,
                                const std::vector<uint8_t>& blob) {
    if (blob.size() != signature_blob_bytes(ctx, mode))
        throw SerializationError("ds signature: wrong blob length");
    if (blob[0] != kSigVersion) throw SerializationError("ds signature: unknown version");
    size_t off = 1;
    size_t sb = ctx.scalar_bytes();
    size_t g1b = ctx.element_bytes(Group::G1);
    size_t g2b = ctx.element_bytes(Group::G2);
    auto get_s = [&]() {
        Scalar s = ctx.deserialize_scalar(blob.data() + off, sb);
        off += sb;
        return s;
    };
    auto get_e = [&](Group g) {
        size_t n = (g == Group::G1) ? g1b : g2b;
        GroupElement e = ctx.deserialize(blob.data() + off, n, g);
        off += n;
        return e;
    };
    Signature sig;
    sig.mode = mode;
    sig.r1 = get_e(Group::G1);
    sig.p1 = get_e(Group::G1);
    sig.sigma1.z = get_e(Group::G1);
    sig.sigma1.y = get_e(Group::G1);
    sig.sigma1.yhat = get_e(Group::G2);
    if (mode == Mode::Cca2) {
        sig.c1hat = get_e(Group::G2);
        sig.c2hat = get_e(Group::G2);
    } else {
        sig.c1hat = sig.c2hat = ctx.identity(Group::G2);
    }
    sig.c = get_s();
    sig.z1 = get_s();
    sig.z2 = (mode == Mode::Cca2) ? get_s() : ctx.s_from(0);
    return sig;
}

std::vector<uint8_t> serialize_gpk(const BilinearContext& ctx, const GroupPublicKey& gpk) {
    std::vector<uint8_t> out;
    auto put = [&](const std::vector<uint8_t>& b) { out.insert(out.end(), b.begin(), b.end()); };
    put(ctx.serialize(gpk.pk_r.xhat[0]));
    put(ctx.serialize(gpk.pk_r.xhat[1]));
    put(ctx.serialize(gpk.pk_o.point));
    put(gpk.crs_j);
    put(gpk.crs_o);
    put(gpk.crs_s);
    return out;
}

GroupPublicKey deserialize_gpk(const BilinearContext& ctx, const std::vector<uint8_t>& b) {
    size_t g1b = ctx.element_bytes(Group::G1);
    size_t g2b = ctx.element_bytes(Group::G2);
    if (b.size() != 2 * g2b + g1b + 96) throw SerializationError("ds gpk: wrong length");
    GroupPublicKey gpk;
    size_t off = 0;
    gpk.pk_r.xhat.push_back(ctx.deserialize(b.data() + off, g2b, Group::G2));
    off += g2b;
    gpk.pk_r.xhat.push_back(ctx.deserialize(b.data() + off, g2b, Group::G2));
    off += g2b;
    gpk.pk_o.point = ctx.deserialize(b.data() + off, g1b, Group::G1);
    off += g1b;
    gpk.crs_j.assign(b.begin() + off, b.begin() + off + 32);
    gpk.crs_o.assign(b.begin() + off + 32, b.begin() + off + 64);
    gpk.crs_s.assign(b.begin() + off + 64, b.begin() + off + 96);
    return gpk;
}

}  // namespace arid::ds
