#include "arid/rng.hpp"

#include <openssl/rand.h>

#include <cstring>
#include <stdexcept>

#include "arid/hash.hpp"

namespace arid {

void SystemRandom::fill(uint8_t* out, size_t len) {
    if (RAND_bytes(out, static_cast<int>(len)) != 1)
        throw std::runtime_error("system RNG failure");
}

SeededRandom::SeededRandom(uint64_t seed) {
    std::vector<uint8_t> s(8);
    for (int i = 0; i < 8; i++) s[7 - i] = static_cast<uint8_t>(seed >> (8 * i));
    auto k = sha256(s);
    key_.assign(k.begin(), k.end());
}

SeededRandom::SeededRandom(const std::vector<uint8_t>& seed) {
    auto k = sha256(seed);
    key_.assign(k.begin(), k.end());
}

void SeededRandom::fill(uint8_t* out, size_t len) {
    size_t produced = 0;
    while (produced < len) {
        if (pool_off_ == pool_.size()) {
            std::vector<uint8_t> block = key_;
            for (int i = 0; i < 8; i++)
                block.push_back(static_cast<uint8_t>(counter_ >> (8 * (7 - i))));
            counter_++;
            auto h = sha256(block);
            pool_.assign(h.begin(), h.end());
            pool_off_ = 0;
        }
        size_t n = std::min(len - produced, pool_.size() - pool_off_);
        std::memcpy(out + produced, pool_.data() + pool_off_, n);
        pool_off_ += n;
        produced += n;
    }
}

void ScriptedRandom::fill(uint8_t* out, size_t len) {
    if (blocks_.empty()) {
        fallback_.fill(out, len);
        return;
    }
    auto& b = blocks_.front();
    if (b.size() != len)
        throw std::runtime_error("ScriptedRandom: block size mismatch (expected " +
                                 std::to_string(len) + ", scripted " + std::to_string(b.size()) +
                                 ")");
    std::memcpy(out, b.data(), len);
    blocks_.pop_front();
}

}  // namespace arid
