#include <random>

#include "arid/wire/frame.hpp"
#include "doctest.h"

using namespace arid::wire;

namespace {

RidPayload sample_payload() {
    RidPayload p;
    p.group_id = 7;
    p.drone_lat = 450123456;
    p.drone_lon = 92345678;
    p.drone_alt = 5000;
    p.drone_speed = 1200;
    p.drone_cog = 18050;
    p.gcs_lat = 450000000;
    p.gcs_lon = 92000000;
    p.gcs_alt = 21000;
    p.timestamp = 1700000000;
    p.emergency = 1;
    return p;
}

std::string hex(const std::vector<uint8_t>& b) {
    static const char* d = "0123456789abcdef";
    std::string s;
    for (uint8_t x : b) {
        s += d[x >> 4];
        s += d[x & 15];
    }
    return s;
}

}  // namespace

TEST_CASE("base58: roundtrips, leading zeros, bad digits") {
    std::mt19937_64 gen(1);
    for (int i = 0; i < 200; i++) {
        std::vector<uint8_t> data(gen() % 64);
        for (auto& b : data) b = uint8_t(gen());
        if (i % 3 == 0) data.insert(data.begin(), i % 4, 0);  // leading zeros
        auto s = base58_encode(data);
        CHECK(base58_decode(s) == data);
    }
    CHECK(base58_encode({}) == "");
    CHECK(base58_decode("") == std::vector<uint8_t>{});
    CHECK(base58_encode({0, 0}) == "11");
    CHECK(base58_encode({0x61}) == "2g");  // classic test vector
    CHECK(base58_encode({'h', 'e', 'l', 'l', 'o'}) == "Cn8eVZg");
    CHECK_THROWS_AS((void)base58_decode("0OIl"), WireError);  // excluded characters
    CHECK_THROWS_AS((void)base58_decode("a b"), WireError);
}

TEST_CASE("payload: roundtrip across modes and random contents") {
    std::mt19937_64 gen(2);
    for (int i = 0; i < 300; i++) {
        RidPayload p;
        p.group_id = uint32_t(gen());
        p.drone_lat = int32_t(int64_t(gen() % 1800000001) - 900000000);
        p.drone_lon = int32_t(int64_t(gen() % 3600000001) - 1800000000);
        p.drone_alt = int32_t(gen());
        p.drone_speed = int32_t(gen());
        p.drone_cog = int32_t(gen());
        p.gcs_lat = int32_t(int64_t(gen() % 1800000001) - 900000000);
        p.gcs_lon = int32_t(int64_t(gen() % 3600000001) - 1800000000);
        p.gcs_alt = int32_t(gen());
        p.timestamp = uint32_t(gen());
        p.emergency = uint8_t(gen() % 2);
        ModeTag mode = ModeTag(i % 3);
        std::vector<uint8_t> blob(1 + gen() % 1200);
        for (auto& b : blob) b = uint8_t(gen());
        auto enc = encode_payload(p, mode, blob);
        auto dec = decode_payload(enc);
        CHECK(dec.payload == p);
        CHECK(dec.mode == mode);
        CHECK(dec.sig_blob == blob);
        // the signed message is the leading telemetry block
        auto msg = message_bytes(p);
        CHECK(msg.size() == kTelemetryBytes);
        CHECK(std::equal(msg.begin(), msg.end(), enc.begin()));
    }
}

TEST_CASE("payload: cs-sized blob hits the published field budgets") {
    auto p = sample_payload();
    std::vector<uint8_t> blob(984, 0xab);
    auto enc = encode_payload(p, ModeTag::Cs, blob);
    size_t sig_field = enc.size() - kPayloadFixedBytes;
    CHECK(sig_field >= 1343);
    CHECK(sig_field <= 1347);
    CHECK(enc.size() >= 1386);
    CHECK(enc.size() <= 1390);
}

TEST_CASE("payload: malformed inputs rejected with distinct errors") {
    auto p = sample_payload();
    std::vector<uint8_t> blob(64, 0x11);
    auto enc = encode_payload(p, ModeTag::DsCpa, blob);
    // truncation at every boundary
    for (size_t cut = 0; cut < enc.size(); cut++) {
        auto t = std::vector<uint8_t>(enc.begin(), enc.begin() + cut);
        CHECK_THROWS_AS((void)decode_payload(t), WireError);
    }
    // trailing junk means sig_len no longer matches
    auto longer = enc;
    longer.push_back(0);
    CHECK_THROWS_AS((void)decode_payload(longer), WireError);
    // bad base58 digit in the signature field
    auto bad = enc;
    bad[kPayloadFixedBytes] = '0';
    CHECK_THROWS_AS((void)decode_payload(bad), WireError);
    // unknown mode byte (raw[0] > 2): rebuild the field around a bogus raw string
    {
        std::vector<uint8_t> raw{9};
        raw.insert(raw.end(), blob.begin(), blob.end());
        auto s = base58_encode(raw);
        std::vector<uint8_t> forged(enc.begin(), enc.begin() + kTelemetryBytes);
        forged.push_back(uint8_t(s.size() >> 8));
        forged.push_back(uint8_t(s.size() & 0xff));
        forged.insert(forged.end(), s.begin(), s.end());
        CHECK_THROWS_WITH_AS((void)decode_payload(forged), "payload: unknown mode tag",
                             WireError);
    }
    // out-of-range coordinates refused at encode time
    auto q = p;
    q.drone_lat = 900000001;
    CHECK_THROWS_AS((void)encode_payload(q, ModeTag::Cs, blob), WireError);
    q = p;
    q.gcs_lon = -1800000001;
    CHECK_THROWS_AS((void)encode_payload(q, ModeTag::Cs, blob), WireError);
    // MTU overflow
    CHECK_THROWS_AS((void)encode_payload(p, ModeTag::Cs, std::vector<uint8_t>(2400, 1)),
                    WireError);
}

TEST_CASE("crc16: standard check value") {
    const uint8_t check[] = {'1', '2', '3', '4', '5', '6', '7', '8', '9'};
    CHECK(crc16_ccitt(check, 9) == 0x29b1);
    CHECK(crc16_ccitt(nullptr, 0) == 0xffff);
}

TEST_CASE("frame: roundtrip, header fields, rejects") {
    auto p = sample_payload();
    auto payload = encode_payload(p, ModeTag::DsCca2, std::vector<uint8_t>(100, 0x42));
    std::array<uint8_t, 6> addr3{1, 2, 3, 4, 5, 6};
    auto frame = encode_frame(payload, addr3, 0x1234);
    CHECK(frame.size() == payload.size() + kFrameOverhead);
    CHECK((frame[0] << 8 | frame[1]) == kMessageId);
    CHECK((frame[2] << 8 | frame[3]) == int(payload.size()));
    for (int i = 4; i < 10; i++) CHECK(frame[i] == 0xff);   // addr1 broadcast
    for (int i = 10; i < 16; i++) CHECK(frame[i] == 0x00);  // addr2
    CHECK(std::equal(addr3.begin(), addr3.end(), frame.begin() + 16));
    CHECK((frame[22] << 8 | frame[23]) == 0x1234);
    CHECK(decode_frame(frame) == payload);

    auto bad = frame;
    bad[0] ^= 1;  // wrong message id
    CHECK_THROWS_AS((void)decode_frame(bad), WireError);
    bad = frame;
    bad[4] = 0;  // not broadcast
    CHECK_THROWS_AS((void)decode_frame(bad), WireError);
    bad = frame;
    bad[2] ^= 1;  // duration/length mismatch
    CHECK_THROWS_AS((void)decode_frame(bad), WireError);
    bad = frame;
    bad[40] ^= 1;  // payload bit flip breaks the fcs
    CHECK_THROWS_AS((void)decode_frame(bad), WireError);
    bad = frame;
    bad.pop_back();
    CHECK_THROWS_AS((void)decode_frame(bad), WireError);
    CHECK_THROWS_AS((void)decode_frame({}), WireError);
}

TEST_CASE("frame: pinned golden vector") {
    RidPayload p;
    p.group_id = 7;
    p.timestamp = 100;
    auto payload = encode_payload(p, ModeTag::DsCpa, {1, 2, 3, 4});
    CHECK(hex(payload) ==
          "0000000700000000000000000000000000000000000000000000000000000000000000000000"
          "006400000645375a4b6d35");
    auto frame = encode_frame(payload);
    REQUIRE(frame.size() == 81);
    CHECK(hex(frame) ==
          "a21d0031ffffffffffff000000000000000000000000000000000000000000000007000000000000"
          "00000000000000000000000000000000000000000000000000000000006400000645375a4b6d3589"
          "1d");
    CHECK((frame[79] << 8 | frame[80]) == 0x891d);
}

TEST_CASE("frame: pcap container header and record layout") {
    auto frame = encode_frame({0xaa, 0xbb});
    auto cap = pcap_file({{1'000'001, frame}, {2'500'000, frame}});
    REQUIRE(cap.size() == 24 + 2 * (16 + frame.size()));
    // magic (LE), version 2.4, linktype 105
    CHECK(cap[0] == 0xd4);
    CHECK(cap[1] == 0xc3);
    CHECK(cap[2] == 0xb2);
    CHECK(cap[3] == 0xa1);
    CHECK(cap[20] == 105);
    // first record: ts_sec=1, ts_usec=1, incl_len == orig_len == frame size
    CHECK(cap[24] == 1);
    CHECK(cap[28] == 1);
    CHECK(cap[32] == uint8_t(frame.size()));
    CHECK(cap[36] == uint8_t(frame.size()));
    CHECK(std::equal(frame.begin(), frame.end(), cap.begin() + 40));
}

TEST_CASE("decoders never crash on arbitrary bytes") {
    std::mt19937_64 gen(9);
    for (int i = 0; i < 2000; i++) {
        std::vector<uint8_t> junk(gen() % 200);
        for (auto& b : junk) b = uint8_t(gen());
        try {
            (void)decode_payload(junk);
        } catch (const WireError&) {
        }
        try {
            (void)decode_frame(junk);
        } catch (const WireError&) {
        }
    }
    CHECK(true);
}
