// BN254 (alt_bn128): E: y^2 = x^3 + 3 over F_p, optimal ate pairing.
// Tower: F_p2 = F_p[i]/(i^2+1), F_p6 = F_p2[v]/(v^3 − ξ) with ξ = 9+i,
// F_p12 = F_p6[w]/(w^2 − v). G2 lives on the D-type sextic twist
// E': y^2 = x^3 + 3/ξ over F_p2. Miller loop length 6u+2 plus the two
// Frobenius line steps; final exponentiation = easy part then a plain
// 4-way multi-exponentiation of the hard exponent (p^4 − p^2 + 1)/r in
// base p using Frobenius powers.

#include "engine.hpp"

#include <array>

namespace arid::detail {

namespace {

const Int kU("4965661367192848881");

struct F2 {
    Int a, b;  // a + b·i
};
struct F6 {
    F2 c0, c1, c2;  // c0 + c1·v + c2·v^2
};
struct F12 {
    F6 d0, d1;  // d0 + d1·w
};

struct Bn254Engine : Engine {
    Int loop_len;                  // 6u + 2
    F2 xi;                         // 9 + i
    F2 twist_b;                    // 3/ξ
    std::array<F2, 6> frob_gamma;  // ξ^{i(p−1)/6}
    F2 g2_frob_x, g2_frob_y;       // ξ^{(p−1)/3}, ξ^{(p−1)/2}
    std::array<Int, 4> hard_digits;  // (p^4−p^2+1)/r in base p
    GroupElement gt_identity;

    // ---- F_p ----
    Int fadd(const Int& x, const Int& y) const { return mod_add(x, y, p); }
    Int fsub(const Int& x, const Int& y) const { return mod_sub(x, y, p); }
    Int fmul(const Int& x, const Int& y) const { return mod_mul(x, y, p); }

    // ---- F_p2 ----
    F2 a2(const F2& x, const F2& y) const { return {fadd(x.a, y.a), fadd(x.b, y.b)}; }
    F2 s2(const F2& x, const F2& y) const { return {fsub(x.a, y.a), fsub(x.b, y.b)}; }
    F2 n2(const F2& x) const { return {mod(-x.a, p), mod(-x.b, p)}; }
    F2 m2(const F2& x, const F2& y) const {
        return {fsub(fmul(x.a, y.a), fmul(x.b, y.b)),
                fadd(fmul(x.a, y.b), fmul(x.b, y.a))};
    }
    F2 m2i(const F2& x, const Int& k) const { return {fmul(x.a, k), fmul(x.b, k)}; }
    F2 sq2(const F2& x) const {
        return {fmul(fadd(x.a, x.b), fsub(x.a, x.b)), fmul(fmul(x.a, x.b), 2)};
    }
    F2 conj2(const F2& x) const { return {x.a, mod(-x.b, p)}; }
    F2 inv2(const F2& x) const {
        Int n = mod_inv(fadd(fmul(x.a, x.a), fmul(x.b, x.b)), p);
        return {fmul(x.a, n), fmul(mod(-x.b, p), n)};
    }
    F2 pow2(F2 base, Int e) const {
        F2 r{1, 0};
        if (e == 0) return r;
        for (long i = static_cast<long>(msb(e)); i >= 0; i--) {
            r = sq2(r);
            if (bit_test(e, static_cast<unsigned>(i))) r = m2(r, base);
        }
        return r;
    }
    bool z2(const F2& x) const { return x.a == 0 && x.b == 0; }
    bool eq2(const F2& x, const F2& y) const { return x.a == y.a && x.b == y.b; }

    // ---- F_p6 ----
    F6 a6(const F6& x, const F6& y) const {
        return {a2(x.c0, y.c0), a2(x.c1, y.c1), a2(x.c2, y.c2)};
    }
    F6 s6(const F6& x, const F6& y) const {
        return {s2(x.c0, y.c0), s2(x.c1, y.c1), s2(x.c2, y.c2)};
    }
    F6 n6(const F6& x) const { return {n2(x.c0), n2(x.c1), n2(x.c2)}; }
    F2 mxi(const F2& x) const { return m2(x, xi); }
    F6 m6(const F6& x, const F6& y) const {
        F2 t00 = m2(x.c0, y.c0), t11 = m2(x.c1, y.c1), t22 = m2(x.c2, y.c2);
        F2 r0 = a2(t00, mxi(a2(m2(x.c1, y.c2), m2(x.c2, y.c1))));
        F2 r1 = a2(a2(m2(x.c0, y.c1), m2(x.c1, y.c0)), mxi(t22));
        F2 r2 = a2(a2(m2(x.c0, y.c2), m2(x.c2, y.c0)), t11);
        return {r0, r1, r2};
    }
    F6 mulv(const F6& x) const { return {mxi(x.c2), x.c0, x.c1}; }
    F6 inv6(const F6& x) const {
        F2 t0 = s2(sq2(x.c0), mxi(m2(x.c1, x.c2)));
        F2 t1 = s2(mxi(sq2(x.c2)), m2(x.c0, x.c1));
        F2 t2 = s2(sq2(x.c1), m2(x.c0, x.c2));
        F2 d = a2(m2(x.c0, t0), mxi(a2(m2(x.c2, t1), m2(x.c1, t2))));
        F2 di = inv2(d);
        return {m2(t0, di), m2(t1, di), m2(t2, di)};
    }
    bool z6(const F6& x) const { return z2(x.c0) && z2(x.c1) && z2(x.c2); }

    // ---- F_p12 ----
    F12 one12() const { return {{{1, 0}, {0, 0}, {0, 0}}, {{0, 0}, {0, 0}, {0, 0}}}; }
    F12 m12(const F12& x, const F12& y) const {
        F6 t0 = m6(x.d0, y.d0);
        F6 t1 = m6(x.d1, y.d1);
        return {a6(t0, mulv(t1)), a6(m6(x.d0, y.d1), m6(x.d1, y.d0))};
    }
    F12 sq12(const F12& x) const { return m12(x, x); }
    F12 conj12(const F12& x) const { return {x.d0, n6(x.d1)}; }
    F12 inv12(const F12& x) const {
        F6 t = inv6(s6(m6(x.d0, x.d0), mulv(m6(x.d1, x.d1))));
        return {m6(x.d0, t), n6(m6(x.d1, t))};
    }
    F12 pow12(F12 base, Int e) const {
        F12 r = one12();
        if (e == 0) return r;
        for (long i = static_cast<long>(msb(e)); i >= 0; i--) {
            r = sq12(r);
            if (bit_test(e, static_cast<unsigned>(i))) r = m12(r, base);
        }
        return r;
    }
    bool f12_eq(const F12& x, const F12& y) const {
        return eq2(x.d0.c0, y.d0.c0) && eq2(x.d0.c1, y.d0.c1) && eq2(x.d0.c2, y.d0.c2) &&
               eq2(x.d1.c0, y.d1.c0) && eq2(x.d1.c1, y.d1.c1) && eq2(x.d1.c2, y.d1.c2);
    }

    // Frobenius x -> x^p on F_p12 via per-coefficient conjugation and the
    // precomputed ξ-power constants (coefficients of w^i for i = 0..5 are
    // d0.c0, d1.c0, d0.c1, d1.c1, d0.c2, d1.c2).
    F12 frob12(const F12& x) const {
        std::array<F2, 6> c = {x.d0.c0, x.d1.c0, x.d0.c1, x.d1.c1, x.d0.c2, x.d1.c2};
        for (int i = 0; i < 6; i++) c[i] = m2(conj2(c[i]), frob_gamma[i]);
        return {{c[0], c[2], c[4]}, {c[1], c[3], c[5]}};
    }

    // ---- points ----
    struct PtG1 {
        bool inf = true;
        Int x, y;
    };
    struct PtG2 {
        bool inf = true;
        F2 x, y;
    };

    PtG1 g1_add(const PtG1& P, const PtG1& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        Int lam;
        if (P.x == Q.x) {
            if (fadd(P.y, Q.y) == 0) return PtG1{};
            lam = fmul(fmul(fmul(P.x, P.x), 3), mod_inv(fmul(P.y, 2), p));
        } else {
            lam = fmul(fsub(Q.y, P.y), mod_inv(fsub(Q.x, P.x), p));
        }
        Int x3 = fsub(fsub(fmul(lam, lam), P.x), Q.x);
        Int y3 = fsub(fmul(lam, fsub(P.x, x3)), P.y);
        return PtG1{false, x3, y3};
    }
    PtG1 g1_mul(const PtG1& P, const Int& k0) const {
        Int k = mod(k0, q);
        if (k == 0 || P.inf) return PtG1{};
        PtG1 r{};
        for (long i = static_cast<long>(msb(k)); i >= 0; i--) {
            r = g1_add(r, r);
            if (bit_test(k, static_cast<unsigned>(i))) r = g1_add(r, P);
        }
        return r;
    }

    PtG2 g2_add(const PtG2& P, const PtG2& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        F2 lam;
        if (eq2(P.x, Q.x)) {
            if (z2(a2(P.y, Q.y))) return PtG2{};
            lam = m2(m2i(sq2(P.x), 3), inv2(m2i(P.y, 2)));
        } else {
            lam = m2(s2(Q.y, P.y), inv2(s2(Q.x, P.x)));
        }
        F2 x3 = s2(s2(sq2(lam), P.x), Q.x);
        F2 y3 = s2(m2(lam, s2(P.x, x3)), P.y);
        return PtG2{false, x3, y3};
    }
    PtG2 g2_neg(const PtG2& P) const {
        if (P.inf) return P;
        return PtG2{false, P.x, n2(P.y)};
    }
    PtG2 g2_mul(const PtG2& P, const Int& k0) const {
        Int k = mod(k0, q);
        if (k == 0 || P.inf) return PtG2{};
        PtG2 r{};
        for (long i = static_cast<long>(msb(k)); i >= 0; i--) {
            r = g2_add(r, r);
            if (bit_test(k, static_cast<unsigned>(i))) r = g2_add(r, P);
        }
        return r;
    }
    PtG2 g2_frob(const PtG2& P) const {
        if (P.inf) return P;
        return PtG2{false, m2(conj2(P.x), g2_frob_x), m2(conj2(P.y), g2_frob_y)};
    }

    // ---- Miller loop ----
    // Slope of the line through T and W on the twist (tangent if T == W).
    F2 slope(const PtG2& T, const PtG2& W) const {
        if (eq2(T.x, W.x) && eq2(T.y, W.y))
            return m2(m2i(sq2(T.x), 3), inv2(m2i(T.y, 2)));
        if (eq2(T.x, W.x)) throw AlgebraError("pairing: vertical line in Miller loop");
        return m2(s2(W.y, T.y), inv2(s2(W.x, T.x)));
    }
    // Line through T, W evaluated at P = (xP, yP): sparse F_p12 value
    // yP − λ·xP·w + (λ·T.x − T.y)·w^3.
    F12 line(const PtG2& T, const PtG2& W, const Int& xP, const Int& yP) const {
        F2 lam = slope(T, W);
        F12 l{{{yP, 0}, {0, 0}, {0, 0}},
              {m2i(n2(lam), xP), s2(m2(lam, T.x), T.y), {0, 0}}};
        return l;
    }

    F12 miller(const PtG1& P, const PtG2& Q) const {
        F12 f = one12();
        PtG2 T = Q;
        for (long i = static_cast<long>(msb(loop_len)) - 1; i >= 0; i--) {
            f = m12(sq12(f), line(T, T, P.x, P.y));
            T = g2_add(T, T);
            if (bit_test(loop_len, static_cast<unsigned>(i))) {
                f = m12(f, line(T, Q, P.x, P.y));
                T = g2_add(T, Q);
            }
        }
        PtG2 Q1 = g2_frob(Q);
        f = m12(f, line(T, Q1, P.x, P.y));
        T = g2_add(T, Q1);
        PtG2 Q2 = g2_neg(g2_frob(g2_frob(Q)));
        f = m12(f, line(T, Q2, P.x, P.y));
        return f;
    }

    F12 final_exp(const F12& f0) const {
        // easy part: f^((p^6 − 1)(p^2 + 1))
        F12 f = m12(conj12(f0), inv12(f0));
        f = m12(frob12(frob12(f)), f);
        // hard part: 4-way multi-exponentiation of (p^4 − p^2 + 1)/r base p
        std::array<F12, 4> base;
        base[0] = f;
        for (int i = 1; i < 4; i++) base[i] = frob12(base[i - 1]);
        std::array<F12, 16> table;
        table[0] = one12();
        for (int m = 1; m < 16; m++) {
            int lb = m & (-m);
            int idx = (lb == 1) ? 0 : (lb == 2) ? 1 : (lb == 4) ? 2 : 3;
            table[m] = (m == lb) ? base[idx] : m12(table[m - lb], base[idx]);
        }
        long top = 0;
        for (const auto& d : hard_digits)
            if (d != 0) top = std::max(top, static_cast<long>(msb(d)));
        F12 r = one12();
        for (long i = top; i >= 0; i--) {
            r = sq12(r);
            int idx = 0;
            for (int j = 0; j < 4; j++)
                if (bit_test(hard_digits[j], static_cast<unsigned>(i))) idx |= 1 << j;
            if (idx) r = m12(r, table[idx]);
        }
        return r;
    }

    // ---- conversions ----
    PtG1 to_g1(const GroupElement& e) const {
        if (e.infinity) return PtG1{};
        return PtG1{false, e.c[0], e.c[1]};
    }
    PtG2 to_g2(const GroupElement& e) const {
        if (e.infinity) return PtG2{};
        return PtG2{false, {e.c[0], e.c[1]}, {e.c[2], e.c[3]}};
    }
    GroupElement from_g1(const PtG1& P) const {
        GroupElement e;
        e.group = Group::G1;
        if (P.inf) {
            e.infinity = true;
            e.c = {Int(0), Int(0)};
        } else {
            e.c = {P.x, P.y};
        }
        return e;
    }
    GroupElement from_g2(const PtG2& P) const {
        GroupElement e;
        e.group = Group::G2;
        if (P.inf) {
            e.infinity = true;
            e.c = {Int(0), Int(0), Int(0), Int(0)};
        } else {
            e.c = {P.x.a, P.x.b, P.y.a, P.y.b};
        }
        return e;
    }
    F12 to_f12(const GroupElement& e) const {
        return F12{{{e.c[0], e.c[1]}, {e.c[2], e.c[3]}, {e.c[4], e.c[5]}},
                   {{e.c[6], e.c[7]}, {e.c[8], e.c[9]}, {e.c[10], e.c[11]}}};
    }
    GroupElement from_f12(const F12& v) const {
        GroupElement e;
        e.group = Group::Gt;
        e.c = {v.d0.c0.a, v.d0.c0.b, v.d0.c1.a, v.d0.c1.b, v.d0.c2.a, v.d0.c2.b,
               v.d1.c0.a, v.d1.c0.b, v.d1.c1.a, v.d1.c1.b, v.d1.c2.a, v.d1.c2.b};
        return e;
    }

    bool g1_on_curve(const Int& x, const Int& y) const {
        return fmul(y, y) == fadd(fmul(fmul(x, x), x), 3);
    }
    bool g2_on_curve(const F2& x, const F2& y) const {
        return eq2(sq2(y), a2(m2(sq2(x), x), twist_b));
    }

    // ---- Engine interface ----
    size_t coords(Group g) const override {
        switch (g) {
            case Group::G1: return 2;
            case Group::G2: return 4;
            case Group::Gt: return 12;
        }
        throw AlgebraError("bad group");
    }

    GroupElement identity(Group g) const override {
        if (g == Group::Gt) return gt_identity;
        GroupElement e;
        e.group = g;
        e.infinity = true;
        e.c.assign(coords(g), Int(0));
        return e;
    }

    bool is_identity(const GroupElement& a) const override {
        if (a.group == Group::Gt) return f12_eq(to_f12(a), one12());
        return a.infinity;
    }

    GroupElement add(const GroupElement& a, const GroupElement& b) const override {
        if (a.group != b.group) throw AlgebraError("add: group mismatch");
        switch (a.group) {
            case Group::G1: return from_g1(g1_add(to_g1(a), to_g1(b)));
            case Group::G2: return from_g2(g2_add(to_g2(a), to_g2(b)));
            case Group::Gt: return from_f12(m12(to_f12(a), to_f12(b)));
        }
        throw AlgebraError("bad group");
    }

    GroupElement neg(const GroupElement& a) const override {
        switch (a.group) {
            case Group::G1: {
                PtG1 P = to_g1(a);
                if (!P.inf) P.y = mod(-P.y, p);
                return from_g1(P);
            }
            case Group::G2: return from_g2(g2_neg(to_g2(a)));
            case Group::Gt: return from_f12(inv12(to_f12(a)));
        }
        throw AlgebraError("bad group");
    }

    GroupElement mul(const GroupElement& a, const Int& k) const override {
        switch (a.group) {
            case Group::G1: return from_g1(g1_mul(to_g1(a), k));
            case Group::G2: return from_g2(g2_mul(to_g2(a), k));
            case Group::Gt: return from_f12(pow12(to_f12(a), mod(k, q)));
        }
        throw AlgebraError("bad group");
    }

    GroupElement pairing(const GroupElement& a, const GroupElement& b) const override {
        PtG1 P = to_g1(a);
        PtG2 Q = to_g2(b);
        if (P.inf || Q.inf) return gt_identity;
        return from_f12(final_exp(miller(P, Q)));
    }

    void validate(const GroupElement& e) const override {
        switch (e.group) {
            case Group::G1:
                if (e.infinity) return;
                if (!g1_on_curve(e.c[0], e.c[1]))
                    throw SerializationError("G1 point not on curve");
                return;  // cofactor 1: on-curve implies correct subgroup
            case Group::G2: {
                if (e.infinity) return;
                PtG2 Q = to_g2(e);
                if (!g2_on_curve(Q.x, Q.y))
                    throw SerializationError("G2 point not on twist");
                if (!g2_mul(Q, q).inf)
                    throw SerializationError("G2 point not in prime-order subgroup");
                return;
            }
            case Group::Gt: {
                F12 z = to_f12(e);
                if (z6(z.d0) && z6(z.d1)) throw SerializationError("Gt element: zero");
                if (!f12_eq(pow12(z, q), one12()))
                    throw SerializationError("Gt element: not in target subgroup");
                return;
            }
        }
        throw AlgebraError("bad group");
    }

    std::optional<GroupElement> point_from_x(const Int& x, bool odd_y) const override {
        Int rhs = fadd(fmul(fmul(x, x), x), 3);
        Int y = mod_pow(rhs, (p + 1) / 4, p);
        if (fmul(y, y) != rhs) return std::nullopt;
        if ((bit_test(y, 0) != 0) != odd_y) y = mod(-y, p);
        return from_g1(PtG1{false, x, y});
    }
};

}  // namespace

std::shared_ptr<const Engine> make_bn254() {
    auto e = std::make_shared<Bn254Engine>();
    e->id = CurveId::Bn254;
    e->ptype = PairingType::Type3Asymmetric;
    e->sec_bits = 128;
    const Int& u = kU;
    Int u2 = u * u, u3 = u2 * u, u4 = u3 * u;
    e->p = 36 * u4 + 36 * u3 + 24 * u2 + 6 * u + 1;
    e->q = 36 * u4 + 36 * u3 + 18 * u2 + 6 * u + 1;
    e->loop_len = 6 * u + 2;
    if (!is_probable_prime(e->p) || !is_probable_prime(e->q))
        throw AlgebraError("BN254 parameters corrupt");
    e->fp_bytes = byte_width(e->p);
    e->q_bytes = byte_width(e->q);
    e->xi = F2{9, 1};
    e->twist_b = e->m2i(e->inv2(e->xi), 3);
    e->frob_gamma[0] = F2{1, 0};
    for (int i = 1; i < 6; i++)
        e->frob_gamma[i] = e->pow2(e->xi, Int(i) * ((e->p - 1) / 6));
    e->g2_frob_x = e->pow2(e->xi, (e->p - 1) / 3);
    e->g2_frob_y = e->pow2(e->xi, (e->p - 1) / 2);
    Int lam = (e->p * e->p * e->p * e->p - e->p * e->p + 1);
    if (lam % e->q != 0) throw AlgebraError("BN254 hard exponent not divisible by r");
    lam /= e->q;
    for (int i = 0; i < 4; i++) {
        e->hard_digits[i] = lam % e->p;
        lam /= e->p;
    }
    if (lam != 0) throw AlgebraError("BN254 hard exponent too wide");
    e->gt_identity = e->from_f12(e->one12());

    e->g1_ = e->from_g1(Bn254Engine::PtG1{false, 1, 2});
    // Deterministically derived order-r generator of the twist subgroup (frozen).
    Bn254Engine::PtG2 q2{
        false,
        F2{Int("18014841201420860992493604221310302949127892785770234214683736456113370894908"),
           Int("5776053125899439640074401920896976798064358919113544904713507666977149677293")},
        F2{Int("11326666022297340705148435969535615759156223449757587381823182707220140321800"),
           Int("5565747049569125847732160779105167216776205305841544299468288927788813615583")}};
    if (!e->g2_on_curve(q2.x, q2.y)) throw AlgebraError("BN254 G2 generator not on twist");
    if (!e->g2_mul(q2, e->q).inf) throw AlgebraError("BN254 G2 generator has wrong order");
    e->g2_ = e->from_g2(q2);
    e->gt_ = e->pairing(e->g1_, e->g2_);
    if (e->is_identity(e->gt_)) throw AlgebraError("BN254 degenerate pairing");
    return e;
}

}  // namespace arid::detail
