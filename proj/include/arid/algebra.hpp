#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "arid/bigint.hpp"
#include "arid/hash.hpp"
#include "arid/rng.hpp"

namespace arid {

enum class CurveId : uint8_t {
    TypeA160 = 1,  // supersingular, symmetric pairing, 160-bit Solinas order (CS scheme)
    Bn254 = 2,     // asymmetric optimal ate (DS scheme)
    Toy = 3,       // tiny supersingular curve, symmetric, brute-forceable (tests)
    ToyT3 = 4,     // same curve presented with a distinct G2 generator (tests)
};

enum class PairingType { Type1Symmetric, Type3Asymmetric };

enum class Group : uint8_t { G1 = 1, G2 = 2, Gt = 3 };

struct Scalar {
    Int v;
    bool operator==(const Scalar& o) const { return v == o.v; }
};

struct GroupElement {
    Group group = Group::G1;
    bool infinity = false;          // identity flag for G1/G2 points
    std::vector<Int> c;             // affine coords / extension-field coefficients
    bool operator==(const GroupElement& o) const {
        return group == o.group && infinity == o.infinity && c == o.c;
    }
};

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SerializationError : AlgebraError {
    using AlgebraError::AlgebraError;
};

namespace detail {
class Engine;
}

class BilinearContext {
public:
    static BilinearContext create(CurveId id, int security_bits);
    static BilinearContext create(CurveId id);

    CurveId curve() const;
    PairingType pairing_type() const;
    int security_bits() const;
    const Int& order() const;       // prime group order
    const Int& field_prime() const; // base field characteristic

    size_t scalar_bytes() const;
    size_t element_bytes(Group g) const;  // serialized length including tag byte

    const GroupElement& g1() const;
    const GroupElement& g2() const;
    const GroupElement& gt() const;
    GroupElement identity(Group g) const;

    // Group law. For Gt, add/neg are field multiplication/inversion.
    GroupElement add(const GroupElement& a, const GroupElement& b) const;
    GroupElement neg(const GroupElement& a) const;
    GroupElement sub(const GroupElement& a, const GroupElement& b) const;
    GroupElement mul(const GroupElement& a, const Scalar& k) const;  // scalar mult / Gt power
    bool is_identity(const GroupElement& a) const;
    GroupElement pairing(const GroupElement& a, const GroupElement& b) const;

    std::vector<uint8_t> serialize(const GroupElement& e) const;
    GroupElement deserialize(const uint8_t* data, size_t len, Group expect) const;
    GroupElement deserialize(const std::vector<uint8_t>& b, Group expect) const {
        return deserialize(b.data(), b.size(), expect);
    }

    std::vector<uint8_t> serialize(const Scalar& s) const;
    Scalar deserialize_scalar(const uint8_t* data, size_t len) const;
    Scalar deserialize_scalar(const std::vector<uint8_t>& b) const {
        return deserialize_scalar(b.data(), b.size());
    }

    // Scalar field arithmetic mod order().
    Scalar s_from(const Int& v) const;
    Scalar s_add(const Scalar& a, const Scalar& b) const;
    Scalar s_sub(const Scalar& a, const Scalar& b) const;
    Scalar s_mul(const Scalar& a, const Scalar& b) const;
    Scalar s_neg(const Scalar& a) const;
    Scalar s_inv(const Scalar& a) const;

    // Uniform scalar from an entropy source (oversampled then reduced).
    Scalar random_scalar(RandomSource& rng) const;
    Scalar random_nonzero_scalar(RandomSource& rng) const;
    // Byte width one random_scalar draw consumes (used by scripted tests).
    size_t random_scalar_draw_bytes() const { return scalar_bytes() + 8; }

    Scalar hash_to_scalar(std::string_view label, const std::vector<uint8_t>& data) const;
    Scalar hash_to_scalar(const HashInput& in) const {
        return hash_to_scalar("", in.bytes());
    }
    GroupElement hash_to_g1(std::string_view label, const std::vector<uint8_t>& data) const;

private:
    explicit BilinearContext(std::shared_ptr<const detail::Engine> e);
    std::shared_ptr<const detail::Engine> eng_;
};

}  // namespace arid
