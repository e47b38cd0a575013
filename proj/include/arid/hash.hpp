#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace arid {

std::array<uint8_t, 32> sha256(const uint8_t* data, size_t len);
std::array<uint8_t, 64> sha512(const uint8_t* data, size_t len);
std::array<uint8_t, 32> hmac_sha256(const uint8_t* key, size_t key_len,
                                    const uint8_t* data, size_t len);

inline std::array<uint8_t, 32> sha256(const std::vector<uint8_t>& d) {
    return sha256(d.data(), d.size());
}
inline std::array<uint8_t, 64> sha512(const std::vector<uint8_t>& d) {
    return sha512(d.data(), d.size());
}

// Incremental byte accumulator for building hash inputs with unambiguous
// framing: each part is prefixed with its 4-byte big-endian length.
class HashInput {
public:
    explicit HashInput(std::string_view label);
    HashInput& add(const uint8_t* data, size_t len);
    HashInput& add(const std::vector<uint8_t>& d) { return add(d.data(), d.size()); }
    HashInput& add(std::string_view s) {
        return add(reinterpret_cast<const uint8_t*>(s.data()), s.size());
    }
    const std::vector<uint8_t>& bytes() const { return buf_; }

private:
    std::vector<uint8_t> buf_;
};

// Global operation counters (energy proxy + pairing-free signing checks).
struct OpCounters {
    unsigned long long pairings = 0;
    unsigned long long scalar_muls = 0;
    unsigned long long hashes = 0;
};
OpCounters& op_counters();
void reset_op_counters();

}  // namespace arid
