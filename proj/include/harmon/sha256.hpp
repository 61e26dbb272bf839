#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace harmon {

// FIPS 180-4 SHA-256, lowercase hex digest. Used for dataset manifests.
std::string sha256_hex(const uint8_t* data, std::size_t len);
std::string sha256_hex(const std::vector<uint8_t>& bytes);
std::string sha256_hex(const std::string& text);

}  // namespace harmon
