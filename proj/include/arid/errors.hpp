#pragma once

#include <stdexcept>

namespace arid {

// Protocol-level failure (join rejected, open failed, store exhausted, ...).
struct CryptoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operator/configuration error (bad paths, missing keys, bad flags, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace arid
