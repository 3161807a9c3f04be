#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace hierrec {

// FNV-1a, 64 bit. Used for schema / feature-config fingerprints and for
// deriving named RNG sub-streams. Stable across platforms by definition.
constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

}  // namespace hierrec
