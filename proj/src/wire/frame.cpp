#include "arid/wire/frame.hpp"

namespace arid::wire {

uint16_t crc16_ccitt(const uint8_t* data, size_t len) {
    uint16_t crc = 0xffff;
    for (size_t i = 0; i < len; i++) {
        crc ^= static_cast<uint16_t>(data[i]) << 8;
        for (int b = 0; b < 8; b++)
            crc = (crc & 0x8000) ? static_cast<uint16_t>((crc << 1) ^ 0x1021)
                                 : static_cast<uint16_t>(crc << 1);
    }
    return crc;
}

std::vector<uint8_t> encode_frame(const std::vector<uint8_t>& payload,
                                  const std::array<uint8_t, 6>& addr3, uint16_t seq_ctl) {
    if (payload.size() > kMtu) throw WireError("frame: payload exceeds MTU");
    std::vector<uint8_t> out;
    out.reserve(kFrameOverhead + payload.size());
    out.push_back(kMessageId >> 8);
    out.push_back(kMessageId & 0xff);
    out.push_back(static_cast<uint8_t>(payload.size() >> 8));
    out.push_back(static_cast<uint8_t>(payload.size()));
    out.insert(out.end(), 6, 0xff);  // addr1: broadcast
    out.insert(out.end(), 6, 0x00);  // addr2
    out.insert(out.end(), addr3.begin(), addr3.end());
    out.push_back(static_cast<uint8_t>(seq_ctl >> 8));
    out.push_back(static_cast<uint8_t>(seq_ctl));
    out.insert(out.end(), 6, 0x00);  // addr4
    out.insert(out.end(), payload.begin(), payload.end());
    uint16_t fcs = crc16_ccitt(out.data(), out.size());
    out.push_back(fcs >> 8);
    out.push_back(fcs & 0xff);
    return out;
}

std::vector<uint8_t> decode_frame(const std::vector<uint8_t>& frame) {
    if (frame.size() < kFrameOverhead) throw WireError("frame: truncated");
    uint16_t fc = (uint16_t(frame[0]) << 8) | frame[1];
    if (fc != kMessageId) throw WireError("frame: wrong message id");
    size_t plen = (size_t(frame[2]) << 8) | frame[3];
    if (frame.size() != kFrameOverhead + plen)
        throw WireError("frame: duration/length mismatch");
    for (size_t i = 4; i < 10; i++)
        if (frame[i] != 0xff) throw WireError("frame: addr1 is not the broadcast address");
    uint16_t want = crc16_ccitt(frame.data(), frame.size() - 2);
    uint16_t got = (uint16_t(frame[frame.size() - 2]) << 8) | frame[frame.size() - 1];
    if (want != got) throw WireError("frame: FCS check failed");
    return {frame.begin() + kHeaderBytes, frame.end() - 2};
}

std::vector<uint8_t> pcap_file(
    const std::vector<std::pair<uint64_t, std::vector<uint8_t>>>& frames) {
    std::vector<uint8_t> out;
    auto le32 = [&](uint32_t v) {
        out.push_back(static_cast<uint8_t>(v));
        out.push_back(static_cast<uint8_t>(v >> 8));
        out.push_back(static_cast<uint8_t>(v >> 16));
        out.push_back(static_cast<uint8_t>(v >> 24));
    };
    auto le16 = [&](uint16_t v) {
        out.push_back(static_cast<uint8_t>(v));
        out.push_back(static_cast<uint8_t>(v >> 8));
    };
    le32(0xa1b2c3d4);
    le16(2);
    le16(4);
    le32(0);      // thiszone
    le32(0);      // sigfigs
    le32(65535);  // snaplen
    le32(105);    // LINKTYPE_IEEE802_11
    for (const auto& [usec, f] : frames) {
        le32(static_cast<uint32_t>(usec / 1000000));
        le32(static_cast<uint32_t>(usec % 1000000));
        le32(static_cast<uint32_t>(f.size()));
        le32(static_cast<uint32_t>(f.size()));
        out.insert(out.end(), f.begin(), f.end());
    }
    return out;
}

}  // namespace arid::wire
