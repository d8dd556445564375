#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace quantbench {

// FNV-1a over a canonical key=value rendering; used to stamp outputs with the
// configuration that produced them.
class Fnv1a {
public:
    Fnv1a& add(std::string_view s) {
        for (unsigned char c : s) {
            hash_ ^= c;
            hash_ *= 0x100000001B3ull;
        }
        return *this;
    }

    Fnv1a& add(std::uint64_t v) { return add(std::to_string(v)); }
    Fnv1a& add(double v);

    std::uint64_t value() const { return hash_; }
    std::string hex() const;

private:
    std::uint64_t hash_ = 0xCBF29CE484222325ull;
};

} // namespace quantbench
