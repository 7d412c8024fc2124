#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <string>

#include "nsf/errors.hpp"

namespace nsf {

// Arbitrary-precision integer. Only primorial-scale values flow through the
// toolkit (the criterion engine works in log space), so a header-only bignum
// is plenty.
using BigInt = boost::multiprecision::cpp_int;

// Natural log of a positive BigInt, accurate to ~1 ulp regardless of size.
// Uses the top 64 bits as mantissa so values beyond double range still work.
inline double log_big(const BigInt& n) {
    if (n <= 0) throw DomainError("log_big: argument must be positive");
    const unsigned bits = boost::multiprecision::msb(n) + 1;
    if (bits <= 63) return std::log(n.convert_to<double>());
    const unsigned shift = bits - 63;
    const std::uint64_t top = static_cast<std::uint64_t>(BigInt(n >> shift));
    return std::log(static_cast<double>(top)) + static_cast<double>(shift) * std::log(2.0);
}

inline BigInt parse_bigint(const std::string& text) {
    try {
        return BigInt(text);
    } catch (const std::exception&) {
        throw DomainError("not a valid integer: '" + text + "'");
    }
}

} // namespace nsf
