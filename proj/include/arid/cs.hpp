#pragma once

#include <optional>

#include "arid/algebra.hpp"
#include "arid/errors.hpp"

// CS-A²RID group signature: certificate-based scheme whose signatures embed
// a Cramer-Shoup encryption (T1..T4) of the signer's registration value and
// a Fiat-Shamir proof (S_ρ, S_μ, S_ν, c) over a blinded certificate
// (T5, T6, T7). Pairings that the symmetric-pairing formulation writes as
// ê(A, B) with both arguments in G are computed against G2 companions
// (ĝ = g2, X̂ = x·g2, Ŷ = y·g2) so the scheme also runs on Type-3 curves.
namespace arid::cs {

struct GroupPublicKey {
    GroupElement x;           // g^x in G1
    GroupElement xhat, yhat;  // x·g2, y·g2 in G2
    GroupElement y;           // g_T^y in Gt (hash input)
    GroupElement h, y1, y2, y3;  // Gt
};
struct IssuingKey {
    Scalar x, y;
};
struct OpeningKey {
    Scalar x1, x2, x3, x4, x5;
};
struct MemberKey {
    Scalar k;
    GroupElement a, b, c;  // certificate, G1
};
struct RegistrationEntry {
    GroupElement p1;  // G1
    GroupElement p2;  // Gt, = ê(p1, g)
};
using RegistrationList = std::vector<RegistrationEntry>;

struct Signature {
    Scalar s_rho, s_mu, s_nu;
    GroupElement t1, t2, t3, t4;  // Gt
    GroupElement t5, t6, t7;      // G1
    Scalar c;
};

struct JoinState {
    Scalar k;
    GroupElement p1;
};
struct JoinRequest {
    Scalar eta1, sk;
    GroupElement p1;
};
struct Certificate {
    GroupElement a, b, c;
};

struct SetupResult {
    GroupPublicKey gpk;
    IssuingKey ik;
    OpeningKey ok;
    RegistrationList reg;
};

// Transcript hooks: capture every intermediate of the signing and
// verification computations for oracle-based testing.
struct SignTranscript {
    Scalar u, r, rp, rho, mu, nu;
    Scalar h;  // H(T1 ‖ T2 ‖ T3)
    GroupElement r1, r2, r3, r4, r5;
    GroupElement p2;
};
struct VerifyTranscript {
    Scalar h, c_prime;
    GroupElement r1, r2, r3, r4, r5;
    bool cert_ok = false;
};

SetupResult setup(const BilinearContext& ctx, RandomSource& rng);

std::pair<JoinState, JoinRequest> join_request(const BilinearContext& ctx,
                                               const GroupPublicKey& gpk, RandomSource& rng);
// Throws CryptoError on proof failure or duplicate P1; appends to reg on success.
Certificate join_issue(const BilinearContext& ctx, const GroupPublicKey& gpk,
                       const IssuingKey& ik, const JoinRequest& req, RegistrationList& reg,
                       RandomSource& rng);
// Member-side certificate checks; throws CryptoError on failure.
MemberKey join_finalize(const BilinearContext& ctx, const GroupPublicKey& gpk,
                        const JoinState& st, const Certificate& cert);

Signature sign(const BilinearContext& ctx, const GroupPublicKey& gpk, const MemberKey& gsk,
               const std::vector<uint8_t>& msg, RandomSource& rng,
               SignTranscript* transcript = nullptr);

bool verify(const BilinearContext& ctx, const GroupPublicKey& gpk,
            const std::vector<uint8_t>& msg, const Signature& sig,
            VerifyTranscript* transcript = nullptr);

// Returns the registry index of the signer. Throws CryptoError if the
// ciphertext validity check (T4) fails or no registry entry matches.
size_t open(const BilinearContext& ctx, const GroupPublicKey& gpk, const OpeningKey& ok,
            const RegistrationList& reg, const Signature& sig);

// Raw signature blob: 1-byte format version then the fixed field order
// (S_ρ, S_μ, S_ν, T1..T7, c) in canonical encodings.
std::vector<uint8_t> serialize_signature(const BilinearContext& ctx, const Signature& sig);
Signature deserialize_signature(const BilinearContext& ctx, const std::vector<uint8_t>& blob);
size_t signature_blob_bytes(const BilinearContext& ctx);

std::vector<uint8_t> serialize_gpk(const BilinearContext& ctx, const GroupPublicKey& gpk);
GroupPublicKey deserialize_gpk(const BilinearContext& ctx, const std::vector<uint8_t>& b);

}  // namespace arid::cs
