#pragma once

#include "arid/wire/base58.hpp"

// RemoteID payload codec. Fixed telemetry block (43 bytes, big-endian),
// then the base58-encoded signature field. The raw signature string is
// [mode byte ‖ scheme-specific blob]; the mode discriminator therefore
// travels inside the base58 field.
namespace arid::wire {

enum class ModeTag : uint8_t { Cs = 0, DsCca2 = 1, DsCpa = 2 };

struct RidPayload {
    uint32_t group_id = 0;   // ID_g
    int32_t drone_lat = 0;   // 1e-7 degrees
    int32_t drone_lon = 0;   // 1e-7 degrees
    int32_t drone_alt = 0;   // centimeters
    int32_t drone_speed = 0; // cm/s
    int32_t drone_cog = 0;   // 1e-2 degrees course over ground
    int32_t gcs_lat = 0;     // ground control station, same units
    int32_t gcs_lon = 0;
    int32_t gcs_alt = 0;
    uint32_t timestamp = 0;  // t_k, unix seconds
    uint8_t emergency = 0;   // em_k

    bool operator==(const RidPayload&) const = default;

    double lat_deg() const { return drone_lat * 1e-7; }
    double lon_deg() const { return drone_lon * 1e-7; }
    double alt_m() const { return drone_alt * 1e-2; }
    double speed_ms() const { return drone_speed * 1e-2; }
};

inline constexpr size_t kTelemetryBytes = 41;     // fields through emergency
inline constexpr size_t kPayloadFixedBytes = 43;  // + 2-byte sig_len
inline constexpr size_t kMtu = 2312;

// The signed message m_k: the telemetry block exactly as it goes on the wire.
std::vector<uint8_t> message_bytes(const RidPayload& p);

// Throws WireError on out-of-range coordinates or MTU overflow.
std::vector<uint8_t> encode_payload(const RidPayload& p, ModeTag mode,
                                    const std::vector<uint8_t>& sig_blob);

struct DecodedPayload {
    RidPayload payload;
    ModeTag mode = ModeTag::Cs;
    std::vector<uint8_t> sig_blob;
};
// Exact inverse of encode_payload; throws WireError with a distinct message
// per failure (length, sig_len, base58, mode, coordinate range).
DecodedPayload decode_payload(const std::vector<uint8_t>& bytes);

}  // namespace arid::wire
