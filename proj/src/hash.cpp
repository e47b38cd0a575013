#include "arid/hash.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <stdexcept>

namespace arid {

namespace {
OpCounters g_counters;

void digest(const EVP_MD* md, const uint8_t* data, size_t len, uint8_t* out) {
    unsigned int outlen = 0;
    if (EVP_Digest(data, len, out, &outlen, md, nullptr) != 1)
        throw std::runtime_error("EVP_Digest failed");
    g_counters.hashes++;
}
}  // namespace

OpCounters& op_counters() { return g_counters; }
void reset_op_counters() { g_counters = OpCounters{}; }

std::array<uint8_t, 32> sha256(const uint8_t* data, size_t len) {
    std::array<uint8_t, 32> out{};
    digest(EVP_sha256(), data, len, out.data());
    return out;
}

std::array<uint8_t, 64> sha512(const uint8_t* data, size_t len) {
    std::array<uint8_t, 64> out{};
    digest(EVP_sha512(), data, len, out.data());
    return out;
}

std::array<uint8_t, 32> hmac_sha256(const uint8_t* key, size_t key_len,
                                    const uint8_t* data, size_t len) {
    std::array<uint8_t, 32> out{};
    unsigned int outlen = 0;
    if (HMAC(EVP_sha256(), key, static_cast<int>(key_len), data, len, out.data(), &outlen) ==
        nullptr)
        throw std::runtime_error("HMAC failed");
    g_counters.hashes++;
    return out;
}

HashInput::HashInput(std::string_view label) {
    add(label);
}

HashInput& HashInput::add(const uint8_t* data, size_t len) {
    uint32_t n = static_cast<uint32_t>(len);
    buf_.push_back(static_cast<uint8_t>(n >> 24));
    buf_.push_back(static_cast<uint8_t>(n >> 16));
    buf_.push_back(static_cast<uint8_t>(n >> 8));
    buf_.push_back(static_cast<uint8_t>(n));
    buf_.insert(buf_.end(), data, data + len);
    return *this;
}

}  // namespace arid
