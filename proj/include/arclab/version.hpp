#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace arclab {

inline constexpr const char* kToolName = "arclab";
inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a over raw bytes; used to stamp outputs with the config they came from.
inline uint64_t fnv1a_hash(std::string_view bytes) {
    uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    return h;
}

std::string output_header_comment(uint64_t config_hash);

} // namespace arclab
