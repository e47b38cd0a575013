#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace arid::wire {

struct WireError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bitcoin-alphabet base58. Leading zero bytes map to leading '1's.
std::string base58_encode(const std::vector<uint8_t>& data);
std::vector<uint8_t> base58_decode(const std::string& s);  // throws WireError on bad digit

}  // namespace arid::wire
