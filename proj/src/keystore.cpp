#include "arid/keystore.hpp"

#include <cstring>
#include <fstream>

namespace arid::ks {

namespace {
constexpr char kMagic[4] = {'A', '2', 'R', 'K'};
}

std::vector<uint8_t> pack(const KeyFile& kf) {
    if (kf.blobs.size() > 0xffff) throw ConfigError("keystore: too many blobs");
    std::vector<uint8_t> out(kMagic, kMagic + 4);
    out.push_back(kf.version);
    out.push_back(static_cast<uint8_t>(kf.scheme));
    out.push_back(static_cast<uint8_t>(kf.role));
    out.push_back(kf.curve);
    out.push_back(static_cast<uint8_t>(kf.blobs.size() >> 8));
    out.push_back(static_cast<uint8_t>(kf.blobs.size()));
    for (const auto& b : kf.blobs) {
        uint32_t n = static_cast<uint32_t>(b.size());
        out.push_back(static_cast<uint8_t>(n >> 24));
        out.push_back(static_cast<uint8_t>(n >> 16));
        out.push_back(static_cast<uint8_t>(n >> 8));
        out.push_back(static_cast<uint8_t>(n));
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

KeyFile unpack(const std::vector<uint8_t>& bytes) {
    if (bytes.size() < 10 || memcmp(bytes.data(), kMagic, 4) != 0)
        throw ConfigError("keystore: not a key file");
    KeyFile kf;
    kf.version = bytes[4];
    if (kf.version != 1) throw ConfigError("keystore: unknown format version");
    kf.scheme = static_cast<Scheme>(bytes[5]);
    kf.role = static_cast<Role>(bytes[6]);
    kf.curve = bytes[7];
    size_t count = (size_t(bytes[8]) << 8) | bytes[9];
    size_t off = 10;
    for (size_t i = 0; i < count; i++) {
        if (off + 4 > bytes.size()) throw ConfigError("keystore: truncated key file");
        size_t n = (size_t(bytes[off]) << 24) | (size_t(bytes[off + 1]) << 16) |
                   (size_t(bytes[off + 2]) << 8) | bytes[off + 3];
        off += 4;
        if (off + n > bytes.size()) throw ConfigError("keystore: truncated key file");
        kf.blobs.emplace_back(bytes.begin() + off, bytes.begin() + off + n);
        off += n;
    }
    if (off != bytes.size()) throw ConfigError("keystore: trailing bytes in key file");
    return kf;
}

void write_bytes(const std::filesystem::path& path, const std::vector<uint8_t>& bytes,
                 bool secret) {
    std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("keystore: cannot write " + path.string());
        f.write(reinterpret_cast<const char*>(bytes.data()),
                static_cast<std::streamsize>(bytes.size()));
    }
    std::filesystem::permissions(path, secret ? (std::filesystem::perms::owner_read |
                                                 std::filesystem::perms::owner_write)
                                              : (std::filesystem::perms::owner_read |
                                                 std::filesystem::perms::owner_write |
                                                 std::filesystem::perms::group_read |
                                                 std::filesystem::perms::others_read),
                                 std::filesystem::perm_options::replace);
}

std::vector<uint8_t> read_bytes(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("keystore: cannot read " + path.string());
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_key_file(const std::filesystem::path& path, const KeyFile& kf, bool secret) {
    write_bytes(path, pack(kf), secret);
}

KeyFile read_key_file(const std::filesystem::path& path) { return unpack(read_bytes(path)); }

}  // namespace arid::ks
