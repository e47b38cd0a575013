#pragma once

namespace arid::cli {

// Exit codes shared by every verb.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kCryptoError = 3;
inline constexpr int kVerificationError = 4;

// Verbs: setup, join, fly, observe, disclose, precompute, bench, simulate.
// Keystore root comes from --keystore or the ARID_KEYSTORE environment
// variable.
int run_cli(int argc, const char* const* argv);

}  // namespace arid::cli
