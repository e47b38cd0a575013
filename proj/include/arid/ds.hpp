#pragma once

#include <deque>
#include <optional>

#include "arid/algebra.hpp"
#include "arid/errors.hpp"
#include "arid/primitives/dsig.hpp"
#include "arid/primitives/nizk.hpp"
#include "arid/primitives/pke.hpp"
#include "arid/primitives/spseq.hpp"

// DS-A²RID: SPS-EQ credential on the class of (rP, P), re-randomized per
// message, plus a pairing-free Schnorr-style signature of knowledge in a
// CCA2-full or CPA-full variant. Requires a Type-3 context.
namespace arid::ds {

enum class Mode : uint8_t { Cca2 = 1, Cpa = 2 };

struct GroupPublicKey {
    spseq::PublicKey pk_r;               // ℓ = 2
    pke::PublicKey pk_o;
    std::vector<uint8_t> crs_j, crs_o, crs_s;  // labeled 32-byte seeds
};
struct AuthorityKeys {
    spseq::SecretKey ik;
    pke::SecretKey ok;
};
struct MemberKey {
    GroupElement r_pt, p_pt;  // credential representative (rP, P)
    spseq::Signature sigma;
    Scalar mu;                // join normalization scalar q^{-1}
};
struct RegistrationEntry {
    std::vector<uint8_t> c_ji;  // PKE ciphertext of ser(r·P̂)
    GroupElement sigma_ji;      // DSig over c_ji
    dsig::PublicKey pk_i;
};
using Registry = std::vector<RegistrationEntry>;

struct Signature {
    Mode mode = Mode::Cca2;
    GroupElement r1, p1;       // σ1 message pair (ρR, ρP)
    spseq::Signature sigma1;   // (Z, Y, Ŷ)
    // σ2. CPA uses (c, z1) only.
    GroupElement c1hat, c2hat;  // G2 (CCA2)
    Scalar c, z1, z2;
};

struct JoinState {
    Scalar q, r;
    GroupElement big_q, u;  // Q = qP, U = rQ
};
struct JoinRequest {
    GroupElement u, big_q;      // (U_i, Q)
    std::vector<uint8_t> c_ji;  // encrypted witness
    GroupElement sigma_ji;      // DSig over c_ji
    nizk::Proof pi;
    dsig::PublicKey pk_i;
};
struct IssuedMaterial {
    spseq::Signature sigma_prime;  // SPS-EQ signature on (U_i, Q)
};

std::pair<GroupPublicKey, AuthorityKeys> setup(const BilinearContext& ctx, RandomSource& rng);

std::pair<JoinState, JoinRequest> join_request(const BilinearContext& ctx,
                                               const GroupPublicKey& gpk,
                                               const dsig::SecretKey& sk_i,
                                               const dsig::PublicKey& pk_i, RandomSource& rng);
// Verifies π and σ_ji (decrypting the witness with ok); appends to registry.
// Throws CryptoError on any check failure (registry unchanged).
IssuedMaterial join_issue(const BilinearContext& ctx, const GroupPublicKey& gpk,
                          const AuthorityKeys& keys, Registry& registry, const JoinRequest& req,
                          RandomSource& rng);
// Member-side rechecks plus ChgRep normalization to (rP, P) with ρ = q^{-1}.
// Throws CryptoError naming the failed check.
MemberKey join_finalize(const BilinearContext& ctx, const GroupPublicKey& gpk,
                        const JoinState& st, const dsig::PublicKey& pk_i,
                        const IssuedMaterial& issued, RandomSource& rng);

// Per-message precomputed bundle: everything the online phase needs except
// the challenge hash and two scalar responses.
struct Bundle {
    Scalar rho, v, u, eta;                  // u/eta unused in CPA
    GroupElement r1, p1, z, y;              // G1
    GroupElement yhat;                      // G2
    GroupElement n;                         // G1
    GroupElement c1hat, c2hat, m1hat, m2hat;  // G2, CCA2 only
};

class PrecomputeStore {
public:
    Mode mode = Mode::Cpa;
    CurveId curve = CurveId::Bn254;
    std::deque<Bundle> bundles;

    size_t capacity() const { return bundles.size(); }
    static size_t bundle_bytes(const BilinearContext& ctx, Mode mode);
    size_t total_bytes(const BilinearContext& ctx) const;
    std::vector<uint8_t> serialize(const BilinearContext& ctx) const;
    static PrecomputeStore deserialize(const BilinearContext& ctx,
                                       const std::vector<uint8_t>& b);
};

PrecomputeStore precompute_generate(const BilinearContext& ctx, const GroupPublicKey& gpk,
                                    const MemberKey& gsk, Mode mode, uint32_t flight_seconds,
                                    uint32_t rate, RandomSource& rng);

// RNG-path signing.
Signature sign(const BilinearContext& ctx, const GroupPublicKey& gpk, const MemberKey& gsk,
               Mode mode, const std::vector<uint8_t>& msg, RandomSource& rng);
// Bundle-path signing; throws CryptoError when the store is exhausted or the
// store mode does not match.
Signature sign(const BilinearContext& ctx, const GroupPublicKey& gpk, Mode mode,
               const std::vector<uint8_t>& msg, PrecomputeStore& store);

bool verify(const BilinearContext& ctx, const GroupPublicKey& gpk,
            const std::vector<uint8_t>& msg, const Signature& sig);

// Registry index of the signer; throws CryptoError on no/multiple matches.
size_t open(const BilinearContext& ctx, const GroupPublicKey& gpk, const AuthorityKeys& keys,
            const Registry& registry, const Signature& sig);

// Raw signature blob: 1-byte format version then mode-specific fixed layout.
std::vector<uint8_t> serialize_signature(const BilinearContext& ctx, const Signature& sig);
Signature deserialize_signature(const BilinearContext& ctx, Mode mode,
                                const std::vector<uint8_t>& blob);
size_t signature_blob_bytes(const BilinearContext& ctx, Mode mode);

std::vector<uint8_t> serialize_gpk(const BilinearContext& ctx, const GroupPublicKey& gpk);
GroupPublicKey deserialize_gpk(const BilinearContext& ctx, const std::vector<uint8_t>& b);

}  // namespace arid::ds
