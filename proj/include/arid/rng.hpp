#pragma once

#include <cstdint>
#include <cstddef>
#include <deque>
#include <memory>
#include <vector>

namespace arid {

// Byte-level entropy source. Protocol code draws scalars through
// BilinearContext::random_scalar, which consumes bytes from one of these.
class RandomSource {
public:
    virtual ~RandomSource() = default;
    virtual void fill(uint8_t* out, size_t len) = 0;
    std::vector<uint8_t> bytes(size_t len) {
        std::vector<uint8_t> v(len);
        fill(v.data(), len);
        return v;
    }
};

// OS entropy (getrandom / /dev/urandom).
class SystemRandom : public RandomSource {
public:
    void fill(uint8_t* out, size_t len) override;
};

// Deterministic SHA-256 counter DRBG; used for seeded reproducible runs.
class SeededRandom : public RandomSource {
public:
    explicit SeededRandom(uint64_t seed);
    explicit SeededRandom(const std::vector<uint8_t>& seed);
    void fill(uint8_t* out, size_t len) override;

private:
    std::vector<uint8_t> key_;
    uint64_t counter_ = 0;
    std::vector<uint8_t> pool_;
    size_t pool_off_ = 0;
};

// Test helper: replays queued byte blocks, then falls back to a seeded stream.
// Each fill() consumes exactly one queued block when available (sizes must match).
class ScriptedRandom : public RandomSource {
public:
    ScriptedRandom() : fallback_(0xdecafbad) {}
    void push_block(std::vector<uint8_t> block) { blocks_.push_back(std::move(block)); }
    void fill(uint8_t* out, size_t len) override;
    size_t remaining() const { return blocks_.size(); }

private:
    std::deque<std::vector<uint8_t>> blocks_;
    SeededRandom fallback_;
};

}  // namespace arid
