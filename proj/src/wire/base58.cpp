#include "arid/wire/base58.hpp"

#include <algorithm>
#include <array>

#include "arid/bigint.hpp"

namespace arid::wire {

namespace {
constexpr char kAlphabet[] = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

std::array<int8_t, 256> make_rev() {
    std::array<int8_t, 256> r;
    r.fill(-1);
    for (int i = 0; i < 58; i++) r[static_cast<uint8_t>(kAlphabet[i])] = static_cast<int8_t>(i);
    return r;
}
const std::array<int8_t, 256> kRev = make_rev();
}  // namespace

std::string base58_encode(const std::vector<uint8_t>& data) {
    size_t zeros = 0;
    while (zeros < data.size() && data[zeros] == 0) zeros++;
    Int v = bytes_to_int(data.data(), data.size());
    std::string out;
    while (v > 0) {
        Int q, r;
        mpz_fdiv_qr_ui(q.backend().data(), r.backend().data(), v.backend().data(), 58);
        out.push_back(kAlphabet[r.convert_to<unsigned>()]);
        v = q;
    }
    out.append(zeros, '1');
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<uint8_t> base58_decode(const std::string& s) {
    size_t zeros = 0;
    while (zeros < s.size() && s[zeros] == '1') zeros++;
    Int v = 0;
    for (char ch : s) {
        int8_t d = kRev[static_cast<uint8_t>(ch)];
        if (d < 0) throw WireError("base58: invalid character");
        v = v * 58 + d;
    }
    std::vector<uint8_t> out;
    if (v > 0) out = int_to_bytes(v, byte_width(v));
    out.insert(out.begin(), zeros, 0);
    return out;
}

}  // namespace arid::wire
