#pragma once

#include <cstdint>
#include <string_view>

namespace fmcw {

/// 64-bit FNV-1a, used for config fingerprints written into file headers.
class Fnv1a {
public:
    void add(std::string_view bytes) noexcept {
        for (unsigned char c : bytes) {
            state_ ^= c;
            state_ *= kPrime;
        }
    }

    void add(std::uint64_t word) noexcept {
        for (int i = 0; i < 8; ++i) {
            state_ ^= (word >> (8 * i)) & 0xffU;
            state_ *= kPrime;
        }
    }

    std::uint64_t value() const noexcept { return state_; }

private:
    static constexpr std::uint64_t kPrime = 0x100000001b3ULL;
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::uint64_t fnv1a(std::string_view bytes) noexcept {
    Fnv1a h;
    h.add(bytes);
    return h.value();
}

}  // namespace fmcw
