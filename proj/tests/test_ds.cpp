#include "arid/ds.hpp"
#include "doctest.h"
#include "support/oracle.hpp"

using namespace arid;

namespace {

struct DsGroup {
    ds::GroupPublicKey gpk;
    ds::AuthorityKeys keys;
    ds::Registry reg;
    std::vector<ds::MemberKey> members;
};

DsGroup make_group(const BilinearContext& ctx, RandomSource& rng, int n) {
    DsGroup g;
    std::tie(g.gpk, g.keys) = ds::setup(ctx, rng);
    for (int i = 0; i < n; i++) {
        auto kp = dsig::keygen(ctx, rng);
        auto [st, req] = ds::join_request(ctx, g.gpk, kp.sk, kp.pk, rng);
        auto issued = ds::join_issue(ctx, g.gpk, g.keys, g.reg, req, rng);
        g.members.push_back(ds::join_finalize(ctx, g.gpk, st, kp.pk, issued, rng));
    }
    return g;
}

Scalar oracle_challenge(const BilinearContext& ctx, const ds::GroupPublicKey& gpk,
                        ds::Mode mode, const GroupElement& n, const GroupElement* m1hat,
                        const GroupElement* m2hat, const ds::Signature& sig,
                        const std::vector<uint8_t>& msg) {
    HashInput in(mode == ds::Mode::Cca2 ? "a2rid/ds/cca2" : "a2rid/ds/cpa");
    in.add(gpk.crs_s).add(ctx.serialize(n));
    if (mode == ds::Mode::Cca2) in.add(ctx.serialize(*m1hat)).add(ctx.serialize(*m2hat));
    in.add(ctx.serialize(sig.r1))
        .add(ctx.serialize(sig.p1))
        .add(ctx.serialize(sig.sigma1.z))
        .add(ctx.serialize(sig.sigma1.y))
        .add(ctx.serialize(sig.sigma1.yhat))
        .add(msg);
    return ctx.hash_to_scalar(in);
}

}  // namespace

TEST_CASE("ds: requires a type-3 context") {
    auto sym = BilinearContext::create(CurveId::Toy);
    SeededRandom rng(1);
    CHECK_THROWS_AS((void)ds::setup(sym, rng), CryptoError);
}

TEST_CASE("ds: toy transcript oracle, byte for byte, both modes") {
    auto ctx = BilinearContext::create(CurveId::ToyT3);
    SeededRandom rng(20);
    auto g = make_group(ctx, rng, 2);
    const auto& gsk = g.members[0];
    const Int q = ctx.order();
    auto ser = [&](const GroupElement& e) { return ctx.serialize(e); };
    auto nmul = [&](const GroupElement& p, const Int& k) { return oracle::naive_mul(ctx, p, k); };
    std::vector<uint8_t> msg{'d', 's'};

    for (ds::Mode mode : {ds::Mode::Cca2, ds::Mode::Cpa}) {
        CAPTURE(static_cast<int>(mode));
        // scripted nonces, draw order ρ, φ, [u,] v[, η]
        const Int rho = 21, phi = 31, u = 41, v = 51, eta = 61;
        ScriptedRandom sr;
        sr.push_block(oracle::nonce_block(ctx, rho));
        sr.push_block(oracle::nonce_block(ctx, phi));
        if (mode == ds::Mode::Cca2) sr.push_block(oracle::nonce_block(ctx, u));
        sr.push_block(oracle::nonce_block(ctx, v));
        if (mode == ds::Mode::Cca2) sr.push_block(oracle::nonce_block(ctx, eta));

        auto sig = ds::sign(ctx, g.gpk, gsk, mode, msg, sr);
        REQUIRE(sr.remaining() == 0);

        // σ1: randomized representative and adapted SPS-EQ signature
        CHECK(ser(sig.r1) == ser(nmul(gsk.r_pt, rho)));
        CHECK(ser(sig.p1) == ser(nmul(gsk.p_pt, rho)));
        CHECK(ser(sig.sigma1.z) == ser(nmul(gsk.sigma.z, phi * rho % q)));
        Int phinv = mod_inv(phi, q);
        CHECK(ser(sig.sigma1.y) == ser(nmul(gsk.sigma.y, phinv)));
        CHECK(ser(sig.sigma1.yhat) == ser(nmul(gsk.sigma.yhat, phinv)));

        // σ2: signature of knowledge
        GroupElement n = nmul(ctx.g1(), v);
        if (mode == ds::Mode::Cca2) {
            GroupElement m1hat = nmul(sig.sigma1.yhat, eta);
            GroupElement m2hat = nmul(ctx.g2(), v + eta);
            CHECK(ser(sig.c1hat) == ser(nmul(sig.sigma1.yhat, u)));
            CHECK(ser(sig.c2hat) == ser(nmul(ctx.g2(), rho + u)));
            Int c = oracle_challenge(ctx, g.gpk, mode, n, &m1hat, &m2hat, sig, msg).v;
            CHECK(sig.c.v == c);
            CHECK(sig.z1.v == mod(v + c * rho, q));
            CHECK(sig.z2.v == mod(eta + c * u, q));
        } else {
            Int c = oracle_challenge(ctx, g.gpk, mode, n, nullptr, nullptr, sig, msg).v;
            CHECK(sig.c.v == c);
            CHECK(sig.z1.v == mod(v + c * rho, q));
        }
        CHECK(ds::verify(ctx, g.gpk, msg, sig));

        // open oracle: the pairing test matches exactly the signer's entry
        GroupElement lhs = ctx.pairing(sig.r1, ctx.g2());
        for (size_t i = 0; i < g.reg.size(); i++) {
            auto dec = pke::decrypt(ctx, g.keys.ok, g.reg[i].c_ji);
            REQUIRE(dec);
            auto rhat = ctx.deserialize(*dec, Group::G2);
            CHECK((ctx.pairing(sig.p1, rhat) == lhs) == (i == 0));
        }
        CHECK(ds::open(ctx, g.gpk, g.keys, g.reg, sig) == 0);
    }
}

TEST_CASE("ds: join ceremony rejections leave the registry unchanged") {
    auto ctx = BilinearContext::create(CurveId::ToyT3);
    SeededRandom rng(21);
    auto [gpk, keys] = ds::setup(ctx, rng);
    ds::Registry reg;
    auto kp = dsig::keygen(ctx, rng);
    auto [st, req] = ds::join_request(ctx, gpk, kp.sk, kp.pk, rng);
    auto bad = req;
    bad.pi.s = ctx.s_add(bad.pi.s, ctx.s_from(1));
    CHECK_THROWS_AS((void)ds::join_issue(ctx, gpk, keys, reg, bad, rng), CryptoError);
    bad = req;
    bad.c_ji[8] ^= 1;  // breaks both the DSig and the PKE tag
    CHECK_THROWS_AS((void)ds::join_issue(ctx, gpk, keys, reg, bad, rng), CryptoError);
    bad = req;
    bad.u = ctx.add(bad.u, ctx.g1());  // proof no longer matches the statement
    CHECK_THROWS_AS((void)ds::join_issue(ctx, gpk, keys, reg, bad, rng), CryptoError);
    CHECK(reg.empty());
    auto issued = ds::join_issue(ctx, gpk, keys, reg, req, rng);
    CHECK(reg.size() == 1);
    // member-side recheck catches a tampered credential
    auto bad_issued = issued;
    bad_issued.sigma_prime.z = ctx.add(bad_issued.sigma_prime.z, ctx.g1());
    CHECK_THROWS_AS((void)ds::join_finalize(ctx, gpk, st, kp.pk, bad_issued, rng), CryptoError);
    auto key = ds::join_finalize(ctx, gpk, st, kp.pk, issued, rng);
    // credential normalized to the (rP, P) representative
    CHECK(key.p_pt == ctx.g1());
    CHECK(spseq::verify(ctx, gpk.pk_r, {key.r_pt, key.p_pt}, key.sigma));
}

TEST_CASE("ds: sign/verify/open on bn254, tampering rejected") {
    auto ctx = BilinearContext::create(CurveId::Bn254);
    SeededRandom rng(22);
    auto g = make_group(ctx, rng, 3);
    std::vector<uint8_t> msg{'b', 'n'};
    for (ds::Mode mode : {ds::Mode::Cca2, ds::Mode::Cpa}) {
        for (int i = 0; i < 3; i++) {
            auto sig = ds::sign(ctx, g.gpk, g.members[i], mode, msg, rng);
            CHECK(ds::verify(ctx, g.gpk, msg, sig));
            CHECK(!ds::verify(ctx, g.gpk, {'b', 'm'}, sig));
            CHECK(ds::open(ctx, g.gpk, g.keys, g.reg, sig) == size_t(i));
            auto t = sig;
            t.r1 = ctx.add(t.r1, ctx.g1());
            CHECK(!ds::verify(ctx, g.gpk, msg, t));
            t = sig;
            t.z1 = ctx.s_add(t.z1, ctx.s_from(1));
            CHECK(!ds::verify(ctx, g.gpk, msg, t));
            if (mode == ds::Mode::Cca2) {
                t = sig;
                t.c1hat = ctx.add(t.c1hat, ctx.g2());
                CHECK(!ds::verify(ctx, g.gpk, msg, t));
            }
        }
    }
}

TEST_CASE("ds: signing is pairing-free on both paths") {
    auto ctx = BilinearContext::create(CurveId::Bn254);
    SeededRandom rng(23);
    auto g = make_group(ctx, rng, 1);
    std::vector<uint8_t> msg{'p'};
    for (ds::Mode mode : {ds::Mode::Cca2, ds::Mode::Cpa}) {
        reset_op_counters();
        (void)ds::sign(ctx, g.gpk, g.members[0], mode, msg, rng);
        CHECK(op_counters().pairings == 0);
        auto store = ds::precompute_generate(ctx, g.gpk, g.members[0], mode, 2, 1, rng);
        reset_op_counters();
        (void)ds::sign(ctx, g.gpk, mode, msg, store);
        CHECK(op_counters().pairings == 0);
        // the store path is also free of online scalar multiplications
        CHECK(op_counters().scalar_muls == 0);
    }
}

TEST_CASE("ds: precompute store — byte-identical signatures, sizes, exhaustion") {
    auto ctx = BilinearContext::create(CurveId::Bn254);
    SeededRandom rng(24);
    auto g = make_group(ctx, rng, 1);
    std::vector<uint8_t> msg{'s'};
    // pinned bundle/store sizes on bn254
    CHECK(ds::PrecomputeStore::bundle_bytes(ctx, ds::Mode::Cpa) == 518);
    CHECK(ds::PrecomputeStore::bundle_bytes(ctx, ds::Mode::Cca2) == 1098);
    for (ds::Mode mode : {ds::Mode::Cca2, ds::Mode::Cpa}) {
        SeededRandom r1(77), r2(77);
        auto store = ds::precompute_generate(ctx, g.gpk, g.members[0], mode, 3, 1, r1);
        CHECK(store.capacity() == 3);
        auto blob = store.serialize(ctx);
        CHECK(blob.size() == store.total_bytes(ctx));
        auto store2 = ds::PrecomputeStore::deserialize(ctx, blob);
        CHECK(store2.capacity() == 3);
        // same seed, bundle path == plain path byte for byte
        auto sa = ds::sign(ctx, g.gpk, mode, msg, store2);
        auto sb = ds::sign(ctx, g.gpk, g.members[0], mode, msg, r2);
        CHECK(ds::serialize_signature(ctx, sa) == ds::serialize_signature(ctx, sb));
        (void)ds::sign(ctx, g.gpk, mode, msg, store2);
        (void)ds::sign(ctx, g.gpk, mode, msg, store2);
        CHECK(store2.capacity() == 0);
        CHECK_THROWS_AS((void)ds::sign(ctx, g.gpk, mode, msg, store2), CryptoError);
        // mode mismatch
        ds::Mode other = mode == ds::Mode::Cca2 ? ds::Mode::Cpa : ds::Mode::Cca2;
        CHECK_THROWS_AS((void)ds::sign(ctx, g.gpk, other, msg, store), CryptoError);
        // corrupted store file
        auto badblob = blob;
        badblob[0] ^= 1;
        CHECK_THROWS_AS((void)ds::PrecomputeStore::deserialize(ctx, badblob),
                        SerializationError);
        badblob = blob;
        badblob.pop_back();
        CHECK_THROWS_AS((void)ds::PrecomputeStore::deserialize(ctx, badblob),
                        SerializationError);
    }
    // 60 s at 1 msg/s CPA store: pinned total size
    SeededRandom r3(78);
    auto store60 = ds::precompute_generate(ctx, g.gpk, g.members[0], ds::Mode::Cpa, 60, 1, r3);
    CHECK(store60.total_bytes(ctx) == 31095);
}

TEST_CASE("ds: serialization, pinned blob sizes, rejects") {
    auto ctx = BilinearContext::create(CurveId::Bn254);
    SeededRandom rng(25);
    auto g = make_group(ctx, rng, 1);
    std::vector<uint8_t> msg{'w'};
    CHECK(ds::signature_blob_bytes(ctx, ds::Mode::Cca2) == 744);
    CHECK(ds::signature_blob_bytes(ctx, ds::Mode::Cpa) == 454);
    for (ds::Mode mode : {ds::Mode::Cca2, ds::Mode::Cpa}) {
        auto sig = ds::sign(ctx, g.gpk, g.members[0], mode, msg, rng);
        auto blob = ds::serialize_signature(ctx, sig);
        CHECK(blob.size() == ds::signature_blob_bytes(ctx, mode));
        auto sig2 = ds::deserialize_signature(ctx, mode, blob);
        CHECK(ds::verify(ctx, g.gpk, msg, sig2));
        CHECK(ds::serialize_signature(ctx, sig2) == blob);
        auto bad = blob;
        bad[0] = 9;
        CHECK_THROWS_AS((void)ds::deserialize_signature(ctx, mode, bad), SerializationError);
        bad = blob;
        bad.pop_back();
        CHECK_THROWS_AS((void)ds::deserialize_signature(ctx, mode, bad), SerializationError);
    }
    auto gb = ds::serialize_gpk(ctx, g.gpk);
    auto gpk2 = ds::deserialize_gpk(ctx, gb);
    auto sig = ds::sign(ctx, g.gpk, g.members[0], ds::Mode::Cpa, msg, rng);
    CHECK(ds::verify(ctx, gpk2, msg, sig));
}

TEST_CASE("ds: open failure modes") {
    auto ctx = BilinearContext::create(CurveId::ToyT3);
    SeededRandom rng(26);
    auto g = make_group(ctx, rng, 2);
    auto sig = ds::sign(ctx, g.gpk, g.members[1], ds::Mode::Cpa, {'o'}, rng);
    // unknown member: registry without the signer's entry
    ds::Registry partial{g.reg[0]};
    CHECK_THROWS_WITH_AS((void)ds::open(ctx, g.gpk, g.keys, partial, sig),
                         "ds open: no matching registration entry", CryptoError);
    // registry corruption: duplicated entry matches twice
    ds::Registry dup{g.reg[0], g.reg[1], g.reg[1]};
    CHECK_THROWS_WITH_AS((void)ds::open(ctx, g.gpk, g.keys, dup, sig),
                         "ds open: multiple matches (registry corruption)", CryptoError);
}

TEST_CASE("ds: unlinkability plumbing — two signatures share no components") {
    auto ctx = BilinearContext::create(CurveId::ToyT3);
    SeededRandom rng(27);
    auto g = make_group(ctx, rng, 1);
    auto s1 = ds::sign(ctx, g.gpk, g.members[0], ds::Mode::Cpa, {'u'}, rng);
    auto s2 = ds::sign(ctx, g.gpk, g.members[0], ds::Mode::Cpa, {'u'}, rng);
    CHECK(!(ctx.serialize(s1.r1) == ctx.serialize(s2.r1)));
    CHECK(!(ctx.serialize(s1.sigma1.z) == ctx.serialize(s2.sigma1.z)));
}
