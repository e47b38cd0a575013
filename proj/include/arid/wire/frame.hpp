#pragma once

#include <array>

#include "arid/wire/payload.hpp"

// 802.11b-style custom data frame carrying a RemoteID payload:
//   fc(2)=0xa21d  duration_id(2)=payload length  addr1(6)=broadcast
//   addr2(6)=zeros  addr3(6)  seq_ctl(2)  addr4(6)  payload  fcs(2)
// All multi-byte fields big-endian. fcs = CRC-16/CCITT (poly 0x1021,
// init 0xFFFF) over header + payload. True 802.11 uses a 4-byte CRC-32;
// this codec follows the 2-byte FCS of the frame layout it implements.
namespace arid::wire {

inline constexpr uint16_t kMessageId = 0xa21d;
inline constexpr size_t kHeaderBytes = 30;
inline constexpr size_t kFrameOverhead = kHeaderBytes + 2;  // + fcs

uint16_t crc16_ccitt(const uint8_t* data, size_t len);

std::vector<uint8_t> encode_frame(const std::vector<uint8_t>& payload,
                                  const std::array<uint8_t, 6>& addr3 = {},
                                  uint16_t seq_ctl = 0);
// Returns the payload bytes; throws WireError on bad message id, non-broadcast
// addr1, duration/length mismatch, or FCS failure.
std::vector<uint8_t> decode_frame(const std::vector<uint8_t>& frame);

// pcap capture file (little-endian headers, linktype 105 = IEEE802_11),
// one record per (timestamp_microseconds, frame) pair.
std::vector<uint8_t> pcap_file(
    const std::vector<std::pair<uint64_t, std::vector<uint8_t>>>& frames);

}  // namespace arid::wire
