#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "arid/errors.hpp"

// Tagged key files: "A2RK" magic, format version, scheme/role/curve tags,
// then length-prefixed blobs. Secret files are written mode 0600.
namespace arid::ks {

enum class Scheme : uint8_t { Cs = 0, Ds = 1 };
enum class Role : uint8_t {
    Gpk = 1,
    IssuingKey = 2,
    OpeningKey = 3,
    Member = 4,
    Registry = 5,
    Store = 6,
    Pbir = 7,
};

struct KeyFile {
    uint8_t version = 1;
    Scheme scheme = Scheme::Cs;
    Role role = Role::Gpk;
    uint8_t curve = 0;  // CurveId
    std::vector<std::vector<uint8_t>> blobs;
};

std::vector<uint8_t> pack(const KeyFile& kf);
KeyFile unpack(const std::vector<uint8_t>& bytes);  // throws ConfigError

// `secret` restricts the file to owner read/write (0600).
void write_key_file(const std::filesystem::path& path, const KeyFile& kf, bool secret);
KeyFile read_key_file(const std::filesystem::path& path);  // throws ConfigError

void write_bytes(const std::filesystem::path& path, const std::vector<uint8_t>& bytes,
                 bool secret = false);
std::vector<uint8_t> read_bytes(const std::filesystem::path& path);  // throws ConfigError

}  // namespace arid::ks
