#pragma once

#include "arid/algebra.hpp"

// Dual-base Schnorr proof of knowledge (Fiat-Shamir): proves one witness w
// behind U = w·Q (G1) and V = w·B2 (G2). Commitments A = χQ, B = χB2;
// c = H(Q ‖ U ‖ B2 ‖ bind ‖ A ‖ B); s = χ − c·w.
namespace arid::nizk {

struct Proof {
    Scalar c, s;
};

Proof prove(const BilinearContext& ctx, const GroupElement& Q, const GroupElement& U,
            const GroupElement& B2, const Scalar& w, const std::vector<uint8_t>& bind,
            RandomSource& rng);

bool verify(const BilinearContext& ctx, const GroupElement& Q, const GroupElement& U,
            const GroupElement& B2, const GroupElement& V, const Proof& proof,
            const std::vector<uint8_t>& bind);

}  // namespace arid::nizk
