#pragma once

#include <memory>
#include <optional>

#include "arid/algebra.hpp"

namespace arid::detail {

// Curve-specific backend. Engines are immutable singletons; the public
// BilinearContext is a thin handle over one of these.
class Engine {
public:
    virtual ~Engine() = default;

    CurveId id;
    PairingType ptype;
    int sec_bits = 0;
    Int q;  // prime group order
    Int p;  // base field characteristic
    size_t fp_bytes = 0;
    size_t q_bytes = 0;
    GroupElement g1_, g2_, gt_;

    // Number of Int coords in a canonical element of the group.
    virtual size_t coords(Group g) const = 0;
    virtual GroupElement identity(Group g) const = 0;
    virtual bool is_identity(const GroupElement& a) const = 0;
    virtual GroupElement add(const GroupElement& a, const GroupElement& b) const = 0;
    virtual GroupElement neg(const GroupElement& a) const = 0;
    virtual GroupElement mul(const GroupElement& a, const Int& k) const = 0;
    virtual GroupElement pairing(const GroupElement& a, const GroupElement& b) const = 0;
    // Full on-curve/subgroup membership check for deserialized data.
    virtual void validate(const GroupElement& e) const = 0;
    // Try-and-increment helper: point with given x candidate, cofactor-cleared;
    // empty optional if x is not on the curve or clears to identity.
    virtual std::optional<GroupElement> point_from_x(const Int& x, bool odd_y) const = 0;

    // Effective serialized group tag (Type-1 folds G2 onto G1).
    Group effective(Group g) const {
        if (ptype == PairingType::Type1Symmetric && g == Group::G2) return Group::G1;
        return g;
    }
};

std::shared_ptr<const Engine> make_supersingular(CurveId id);
std::shared_ptr<const Engine> make_bn254();

}  // namespace arid::detail
