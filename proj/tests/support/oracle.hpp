#pragma once

#include "arid/algebra.hpp"

// Naive small-exponent evaluation helpers for the toy-curve transcript
// oracles: group operations built from repeated ctx.add only, plus
// brute-force discrete logs. Deliberately independent of the library's
// scalar-multiplication and protocol code.
namespace oracle {

using namespace arid;

inline GroupElement naive_mul(const BilinearContext& ctx, const GroupElement& p, Int k) {
    k = mod(k, ctx.order());
    GroupElement acc = ctx.identity(p.group);
    for (Int i = 0; i < k; i++) acc = ctx.add(acc, p);
    return acc;
}

// exponent e with target = e·base, found exhaustively; -1 when none exists
inline Int brute_dlog(const BilinearContext& ctx, const GroupElement& base,
                      const GroupElement& target) {
    GroupElement acc = ctx.identity(base.group);
    for (Int e = 0; e < ctx.order(); e++) {
        if (acc == target) return e;
        acc = ctx.add(acc, base);
    }
    return -1;
}

// Scripted-randomness block producing a known scalar: random_scalar reduces an
// oversampled big-endian draw mod q, so a block encoding `v < q` yields v.
inline std::vector<uint8_t> nonce_block(const BilinearContext& ctx, const Int& v) {
    return int_to_bytes(v, ctx.random_scalar_draw_bytes());
}

}  // namespace oracle
