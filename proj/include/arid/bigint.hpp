#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace arid {

using Int = boost::multiprecision::mpz_int;

inline Int mod(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Int mod_add(const Int& a, const Int& b, const Int& m) { return mod(a + b, m); }
inline Int mod_sub(const Int& a, const Int& b, const Int& m) { return mod(a - b, m); }
inline Int mod_mul(const Int& a, const Int& b, const Int& m) { return mod(a * b, m); }

inline Int mod_pow(const Int& base, const Int& exp, const Int& m) {
    return boost::multiprecision::powm(mod(base, m), exp, m);
}

inline Int mod_inv(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.backend().data(), Int(mod(a, m)).backend().data(), m.backend().data()) == 0)
        throw std::domain_error("modular inverse of non-invertible element");
    return r;
}

// Fixed-width big-endian encoding.
inline void int_to_bytes(const Int& v, uint8_t* out, size_t width) {
    if (v < 0) throw std::domain_error("int_to_bytes: negative");
    Int x = v;
    for (size_t i = 0; i < width; i++) {
        out[width - 1 - i] = static_cast<uint8_t>(x & 0xff);
        x >>= 8;
    }
    if (x != 0) throw std::domain_error("int_to_bytes: value does not fit width");
}

inline std::vector<uint8_t> int_to_bytes(const Int& v, size_t width) {
    std::vector<uint8_t> out(width);
    int_to_bytes(v, out.data(), width);
    return out;
}

inline Int bytes_to_int(const uint8_t* data, size_t len) {
    Int x = 0;
    for (size_t i = 0; i < len; i++) {
        x <<= 8;
        x += data[i];
    }
    return x;
}

inline Int bytes_to_int(const std::vector<uint8_t>& b) { return bytes_to_int(b.data(), b.size()); }

inline size_t byte_width(const Int& v) {
    size_t bits = msb(v) + 1;  // msb of 0 is UB in boost; callers avoid v==0
    return (bits + 7) / 8;
}

inline bool is_probable_prime(const Int& v) {
    return mpz_probab_prime_p(v.backend().data(), 30) != 0;
}

}  // namespace arid
