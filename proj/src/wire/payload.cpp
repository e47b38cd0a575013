#include "arid/wire/payload.hpp"

namespace arid::wire {

namespace {

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}
void put_i32(std::vector<uint8_t>& out, int32_t v) { put_u32(out, static_cast<uint32_t>(v)); }

uint32_t get_u32(const uint8_t* p) {
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}
int32_t get_i32(const uint8_t* p) { return static_cast<int32_t>(get_u32(p)); }

void check_ranges(const RidPayload& p) {
    auto bad = [](int32_t v, int32_t lim) { return v < -lim || v > lim; };
    if (bad(p.drone_lat, 900000000) || bad(p.gcs_lat, 900000000))
        throw WireError("payload: latitude out of range");
    if (bad(p.drone_lon, 1800000000) || bad(p.gcs_lon, 1800000000))
        throw WireError("payload: longitude out of range");
}

}  // namespace

std::vector<uint8_t> message_bytes(const RidPayload& p) {
    std::vector<uint8_t> out;
    out.reserve(kTelemetryBytes);
    put_u32(out, p.group_id);
    put_i32(out, p.drone_lat);
    put_i32(out, p.drone_lon);
    put_i32(out, p.drone_alt);
    put_i32(out, p.drone_speed);
    put_i32(out, p.drone_cog);
    put_i32(out, p.gcs_lat);
    put_i32(out, p.gcs_lon);
    put_i32(out, p.gcs_alt);
    put_u32(out, p.timestamp);
    out.push_back(p.emergency);
    return out;
}

std::vector<uint8_t> encode_payload(const RidPayload& p, ModeTag mode,
                                    const std::vector<uint8_t>& sig_blob) {
    check_ranges(p);
    std::vector<uint8_t> raw;
    raw.reserve(1 + sig_blob.size());
    raw.push_back(static_cast<uint8_t>(mode));
    raw.insert(raw.end(), sig_blob.begin(), sig_blob.end());
    std::string sig = base58_encode(raw);
    if (sig.size() > 0xffff) throw WireError("payload: signature field too long");
    std::vector<uint8_t> out = message_bytes(p);
    out.push_back(static_cast<uint8_t>(sig.size() >> 8));
    out.push_back(static_cast<uint8_t>(sig.size()));
    out.insert(out.end(), sig.begin(), sig.end());
    if (out.size() > kMtu) throw WireError("payload: exceeds MTU (fragmentation forbidden)");
    return out;
}

DecodedPayload decode_payload(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < kPayloadFixedBytes) throw WireError("payload: truncated fixed block");
    if (bytes.size() > kMtu) throw WireError("payload: exceeds MTU");
    DecodedPayload d;
    const uint8_t* p = bytes.data();
    d.payload.group_id = get_u32(p);
    d.payload.drone_lat = get_i32(p + 4);
    d.payload.drone_lon = get_i32(p + 8);
    d.payload.drone_alt = get_i32(p + 12);
    d.payload.drone_speed = get_i32(p + 16);
    d.payload.drone_cog = get_i32(p + 20);
    d.payload.gcs_lat = get_i32(p + 24);
    d.payload.gcs_lon = get_i32(p + 28);
    d.payload.gcs_alt = get_i32(p + 32);
    d.payload.timestamp = get_u32(p + 36);
    d.payload.emergency = p[40];
    check_ranges(d.payload);
    size_t sig_len = (size_t(p[41]) << 8) | p[42];
    if (bytes.size() != kPayloadFixedBytes + sig_len)
        throw WireError("payload: sig_len does not match payload length");
    std::string sig(bytes.begin() + kPayloadFixedBytes, bytes.end());
    std::vector<uint8_t> raw = base58_decode(sig);
    if (raw.empty()) throw WireError("payload: empty signature field");
    if (raw[0] > 2) throw WireError("payload: unknown mode tag");
    d.mode = static_cast<ModeTag>(raw[0]);
    d.sig_blob.assign(raw.begin() + 1, raw.end());
    return d;
}

}  // namespace arid::wire
