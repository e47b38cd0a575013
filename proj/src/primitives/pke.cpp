#include "arid/primitives/pke.hpp"

#include <cstring>

namespace arid::pke {

namespace {
constexpr size_t kMacLen = 32;

// keystream = SHA-256(key ‖ ctr32) blocks
void xor_keystream(const uint8_t* key32, uint8_t* data, size_t len) {
    uint32_t ctr = 0;
    size_t off = 0;
    while (off < len) {
        std::vector<uint8_t> block(key32, key32 + 32);
        block.push_back(static_cast<uint8_t>(ctr >> 24));
        block.push_back(static_cast<uint8_t>(ctr >> 16));
        block.push_back(static_cast<uint8_t>(ctr >> 8));
        block.push_back(static_cast<uint8_t>(ctr));
        auto ks = sha256(block);
        size_t n = std::min(len - off, ks.size());
        for (size_t i = 0; i < n; i++) data[off + i] ^= ks[i];
        off += n;
        ctr++;
    }
}

std::array<uint8_t, 64> derive(const BilinearContext& ctx, const GroupElement& shared,
                               const GroupElement& eph) {
    HashInput in("a2rid/pke/kdf");
    in.add(ctx.serialize(shared)).add(ctx.serialize(eph));
    return sha512(in.bytes().data(), in.bytes().size());
}
}  // namespace

KeyPair keygen(const BilinearContext& ctx, RandomSource& rng) {
    KeyPair kp;
    kp.sk.k = ctx.random_nonzero_scalar(rng);
    kp.pk.point = ctx.mul(ctx.g1(), kp.sk.k);
    return kp;
}

size_t ciphertext_bytes(const BilinearContext& ctx, size_t msg_len) {
    return ctx.element_bytes(Group::G1) + msg_len + kMacLen;
}

std::vector<uint8_t> encrypt(const BilinearContext& ctx, const PublicKey& pk,
                             const std::vector<uint8_t>& msg, RandomSource& rng) {
    Scalar t = ctx.random_nonzero_scalar(rng);
    GroupElement eph = ctx.mul(ctx.g1(), t);
    GroupElement shared = ctx.mul(pk.point, t);
    auto keys = derive(ctx, shared, eph);
    std::vector<uint8_t> out = ctx.serialize(eph);
    size_t body_off = out.size();
    out.insert(out.end(), msg.begin(), msg.end());
    xor_keystream(keys.data(), out.data() + body_off, msg.size());
    auto mac = hmac_sha256(keys.data() + 32, 32, out.data(), out.size());
    out.insert(out.end(), mac.begin(), mac.end());
    return out;
}

std::optional<std::vector<uint8_t>> decrypt(const BilinearContext& ctx, const SecretKey& sk,
                                            const std::vector<uint8_t>& ct) {
    size_t eph_len = ctx.element_bytes(Group::G1);
    if (ct.size() < eph_len + kMacLen) return std::nullopt;
    GroupElement eph;
    try {
        eph = ctx.deserialize(ct.data(), eph_len, Group::G1);
    } catch (const SerializationError&) {
        return std::nullopt;
    }
    GroupElement shared = ctx.mul(eph, sk.k);
    auto keys = derive(ctx, shared, eph);
    size_t body_len = ct.size() - eph_len - kMacLen;
    auto mac = hmac_sha256(keys.data() + 32, 32, ct.data(), eph_len + body_len);
    // constant-time-ish comparison
    uint8_t diff = 0;
    for (size_t i = 0; i < kMacLen; i++) diff |= mac[i] ^ ct[eph_len + body_len + i];
    if (diff != 0) return std::nullopt;
    std::vector<uint8_t> msg(ct.begin() + eph_len, ct.begin() + eph_len + body_len);
    xor_keystream(keys.data(), msg.data(), msg.size());
    return msg;
}

}  // namespace arid::pke
