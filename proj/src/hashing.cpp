#include "quantbench/hashing.hpp"

#include <cstdio>

namespace quantbench {

Fnv1a& Fnv1a::add(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return add(std::string_view(buf));
}

std::string Fnv1a::hex() const {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash_));
    return buf;
}

} // namespace quantbench
