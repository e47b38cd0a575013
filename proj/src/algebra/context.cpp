#include "arid/algebra.hpp"

#include <mutex>
#include <unordered_map>

#include "engine.hpp"

namespace arid {

using detail::Engine;

namespace {

std::shared_ptr<const Engine> engine_for(CurveId id) {
    static std::mutex mu;
    static std::unordered_map<uint8_t, std::shared_ptr<const Engine>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(static_cast<uint8_t>(id));
    if (it != cache.end()) return it->second;
    std::shared_ptr<const Engine> e;
    switch (id) {
        case CurveId::TypeA160:
        case CurveId::Toy:
        case CurveId::ToyT3:
            e = detail::make_supersingular(id);
            break;
        case CurveId::Bn254:
            e = detail::make_bn254();
            break;
        default:
            throw AlgebraError("unsupported curve id");
    }
    cache.emplace(static_cast<uint8_t>(id), e);
    return e;
}

}  // namespace

BilinearContext::BilinearContext(std::shared_ptr<const Engine> e) : eng_(std::move(e)) {}

BilinearContext BilinearContext::create(CurveId id) {
    return BilinearContext(engine_for(id));
}

BilinearContext BilinearContext::create(CurveId id, int security_bits) {
    auto e = engine_for(id);
    if (security_bits != e->sec_bits)
        throw AlgebraError("security_bits does not match curve (expected " +
                           std::to_string(e->sec_bits) + ")");
    return BilinearContext(e);
}

CurveId BilinearContext::curve() const { return eng_->id; }
PairingType BilinearContext::pairing_type() const { return eng_->ptype; }
int BilinearContext::security_bits() const { return eng_->sec_bits; }
const Int& BilinearContext::order() const { return eng_->q; }
const Int& BilinearContext::field_prime() const { return eng_->p; }
size_t BilinearContext::scalar_bytes() const { return eng_->q_bytes; }

size_t BilinearContext::element_bytes(Group g) const {
    return 1 + eng_->coords(eng_->effective(g)) * eng_->fp_bytes;
}

const GroupElement& BilinearContext::g1() const { return eng_->g1_; }
const GroupElement& BilinearContext::g2() const { return eng_->g2_; }
const GroupElement& BilinearContext::gt() const { return eng_->gt_; }
GroupElement BilinearContext::identity(Group g) const {
    return eng_->identity(eng_->effective(g));
}

GroupElement BilinearContext::add(const GroupElement& a, const GroupElement& b) const {
    return eng_->add(a, b);
}
GroupElement BilinearContext::neg(const GroupElement& a) const { return eng_->neg(a); }
GroupElement BilinearContext::sub(const GroupElement& a, const GroupElement& b) const {
    return eng_->add(a, eng_->neg(b));
}
GroupElement BilinearContext::mul(const GroupElement& a, const Scalar& k) const {
    op_counters().scalar_muls++;
    return eng_->mul(a, k.v);
}
bool BilinearContext::is_identity(const GroupElement& a) const { return eng_->is_identity(a); }

GroupElement BilinearContext::pairing(const GroupElement& a, const GroupElement& b) const {
    Group want_b = eng_->effective(Group::G2);
    if (a.group != Group::G1 || b.group != want_b)
        throw AlgebraError("pairing: arguments in wrong source groups");
    op_counters().pairings++;
    return eng_->pairing(a, b);
}

std::vector<uint8_t> BilinearContext::serialize(const GroupElement& e) const {
    size_t n = eng_->coords(e.group);
    if (e.c.size() != n) throw AlgebraError("serialize: malformed element");
    std::vector<uint8_t> out;
    out.reserve(1 + n * eng_->fp_bytes);
    uint8_t tag = static_cast<uint8_t>(e.group);
    if (e.infinity) tag |= 0x80;
    out.push_back(tag);
    for (const Int& v : e.c) {
        auto b = int_to_bytes(e.infinity ? Int(0) : v, eng_->fp_bytes);
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

GroupElement BilinearContext::deserialize(const uint8_t* data, size_t len, Group expect) const {
    Group eff = eng_->effective(expect);
    size_t n = eng_->coords(eff);
    if (len != 1 + n * eng_->fp_bytes)
        throw SerializationError("element: wrong byte length");
    uint8_t tag = data[0];
    bool inf = (tag & 0x80) != 0;
    if ((tag & 0x7f) != static_cast<uint8_t>(eff))
        throw SerializationError("element: group tag mismatch");
    if (inf && eff == Group::Gt)
        throw SerializationError("element: infinity flag invalid for Gt");
    GroupElement e;
    e.group = eff;
    e.infinity = inf;
    e.c.resize(n);
    for (size_t i = 0; i < n; i++) {
        e.c[i] = bytes_to_int(data + 1 + i * eng_->fp_bytes, eng_->fp_bytes);
        if (e.c[i] >= eng_->p) throw SerializationError("element: coordinate out of range");
        if (inf && e.c[i] != 0)
            throw SerializationError("element: non-canonical identity encoding");
    }
    eng_->validate(e);
    return e;
}

std::vector<uint8_t> BilinearContext::serialize(const Scalar& s) const {
    return int_to_bytes(s.v, eng_->q_bytes);
}

Scalar BilinearContext::deserialize_scalar(const uint8_t* data, size_t len) const {
    if (len != eng_->q_bytes) throw SerializationError("scalar: wrong byte length");
    Int v = bytes_to_int(data, len);
    if (v >= eng_->q) throw SerializationError("scalar: out of range");
    return Scalar{v};
}

Scalar BilinearContext::s_from(const Int& v) const { return Scalar{mod(v, eng_->q)}; }
Scalar BilinearContext::s_add(const Scalar& a, const Scalar& b) const {
    return Scalar{mod_add(a.v, b.v, eng_->q)};
}
Scalar BilinearContext::s_sub(const Scalar& a, const Scalar& b) const {
    return Scalar{mod_sub(a.v, b.v, eng_->q)};
}
Scalar BilinearContext::s_mul(const Scalar& a, const Scalar& b) const {
    return Scalar{mod_mul(a.v, b.v, eng_->q)};
}
Scalar BilinearContext::s_neg(const Scalar& a) const { return Scalar{mod(-a.v, eng_->q)}; }
Scalar BilinearContext::s_inv(const Scalar& a) const { return Scalar{mod_inv(a.v, eng_->q)}; }

Scalar BilinearContext::random_scalar(RandomSource& rng) const {
    auto b = rng.bytes(random_scalar_draw_bytes());
    return Scalar{mod(bytes_to_int(b), eng_->q)};
}

Scalar BilinearContext::random_nonzero_scalar(RandomSource& rng) const {
    for (;;) {
        Scalar s = random_scalar(rng);
        if (s.v != 0) return s;
    }
}

Scalar BilinearContext::hash_to_scalar(std::string_view label, const std::vector<uint8_t>& data) const {
    HashInput in(label);
    in.add(data);
    auto d = sha512(in.bytes().data(), in.bytes().size());
    return Scalar{mod(bytes_to_int(d.data(), d.size()), eng_->q)};
}

GroupElement BilinearContext::hash_to_g1(std::string_view label, const std::vector<uint8_t>& data) const {
    for (uint32_t ctr = 0;; ctr++) {
        HashInput in(label);
        in.add(data);
        uint8_t cb[4] = {static_cast<uint8_t>(ctr >> 24), static_cast<uint8_t>(ctr >> 16),
                         static_cast<uint8_t>(ctr >> 8), static_cast<uint8_t>(ctr)};
        in.add(cb, 4);
        auto d = sha512(in.bytes().data(), in.bytes().size());
        Int x = mod(bytes_to_int(d.data(), 48), eng_->p);
        bool odd_y = (d[48] & 1) != 0;
        auto pt = eng_->point_from_x(x, odd_y);
        if (pt) return *pt;
    }
}

}  // namespace arid
