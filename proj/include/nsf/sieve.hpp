#pragma once

#include <cstdint>
#include <vector>

#include "nsf/arith.hpp"
#include "nsf/errors.hpp"

namespace nsf::arith {

inline constexpr std::uint64_t kDefaultSegmentCapacity = 10'000'000;

namespace detail {

inline bool get_bit(const std::vector<std::uint64_t>& bits, std::uint64_t i) {
    return (bits[i >> 6] >> (i & 63)) & 1;
}

inline void set_bit(std::vector<std::uint64_t>& bits, std::uint64_t i) {
    bits[i >> 6] |= std::uint64_t(1) << (i & 63);
}

inline void clear_bit(std::vector<std::uint64_t>& bits, std::uint64_t i) {
    bits[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
}

// Prime indicator bits for [lo, hi); bit i <-> lo + i. One zero word is
// appended so shifted double-word reads never run off the end.
inline std::vector<std::uint64_t> prime_window(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t width = hi - lo;
    std::vector<std::uint64_t> bits((width + 63) / 64 + 1, 0);
    if (2 >= lo && 2 < hi) set_bit(bits, 2 - lo);
    // Seed odd positions >= 3, then strike composites.
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 3) | 1; n < hi; n += 2) set_bit(bits, n - lo);
    if (hi < 2) return bits;
    for (std::uint64_t p : primes_upto(isqrt(hi - 1))) {
        if (p == 2) continue;
        std::uint64_t first = std::max(p * p, ((lo + p - 1) / p) * p);
        if (first % 2 == 0) first += p;
        for (std::uint64_t m = first; m < hi; m += 2 * p) clear_bit(bits, m - lo);
    }
    return bits;
}

// Squarefree indicator bits for [lo, hi): clear every multiple of p^2.
// Conventions: 0 is not squarefree, 1 is.
inline std::vector<std::uint64_t> squarefree_window(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t width = hi - lo;
    std::vector<std::uint64_t> bits((width + 63) / 64 + 1, ~std::uint64_t(0));
    if (0 >= lo && 0 < hi) clear_bit(bits, 0 - lo);
    if (hi < 4) return bits;
    for (std::uint64_t p : primes_upto(isqrt(hi - 1))) {
        const std::uint64_t p2 = p * p;
        for (std::uint64_t m = ((lo + p2 - 1) / p2) * p2; m < hi; m += p2) clear_bit(bits, m - lo);
    }
    return bits;
}

// mu over [lo, hi) via the co-factor method: divide out each base prime,
// track square divisibility, and flip the sign once for any leftover prime.
inline std::vector<std::int8_t> mobius_window(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t width = hi - lo;
    std::vector<std::int8_t> mu(width, 1);
    std::vector<std::uint64_t> rem(width);
    for (std::uint64_t i = 0; i < width; ++i) rem[i] = lo + i;
    if (0 >= lo && 0 < hi) rem[0 - lo] = 1; // mu(0) = 0, forced below
    if (hi >= 4) {
        for (std::uint64_t p : primes_upto(isqrt(hi - 1))) {
            const std::uint64_t start = std::max<std::uint64_t>(lo, p); // n = 0 has no factors
            for (std::uint64_t m = ((start + p - 1) / p) * p; m < hi; m += p) {
                const std::uint64_t i = m - lo;
                if (mu[i] == 0) {
                    while (rem[i] % p == 0) rem[i] /= p;
                    continue;
                }
                rem[i] /= p;
                if (rem[i] % p == 0) {
                    mu[i] = 0;
                    while (rem[i] % p == 0) rem[i] /= p;
                } else {
                    mu[i] = static_cast<std::int8_t>(-mu[i]);
                }
            }
        }
    }
    for (std::uint64_t i = 0; i < width; ++i) {
        if (mu[i] != 0 && rem[i] > 1) mu[i] = static_cast<std::int8_t>(-mu[i]);
    }
    if (0 >= lo && 0 < hi) mu[0 - lo] = 0;
    if (1 >= lo && 1 < hi) mu[1 - lo] = 1;
    return mu;
}

} // namespace detail

// A half-open window [lo, hi) with per-element prime / squarefree masks and
// an optional mu byte per element.
struct SieveSegment {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::vector<std::uint64_t> prime_bits;
    std::vector<std::uint64_t> squarefree_bits;
    std::vector<std::int8_t> mobius; // empty unless requested

    std::uint64_t width() const { return hi - lo; }

    bool prime_at(std::uint64_t n) const {
        if (n < lo || n >= hi) throw DomainError("SieveSegment: element out of range");
        return detail::get_bit(prime_bits, n - lo);
    }

    bool squarefree_at(std::uint64_t n) const {
        if (n < lo || n >= hi) throw DomainError("SieveSegment: element out of range");
        return detail::get_bit(squarefree_bits, n - lo);
    }

    int mobius_at(std::uint64_t n) const {
        if (mobius.empty()) throw DomainError("SieveSegment: mobius was not requested");
        if (n < lo || n >= hi) throw DomainError("SieveSegment: element out of range");
        return mobius[n - lo];
    }
};

inline SieveSegment sieve_segment(std::uint64_t lo, std::uint64_t hi, bool want_mobius = false,
                                  std::uint64_t capacity = kDefaultSegmentCapacity) {
    if (lo >= hi) throw DomainError("sieve_segment: need lo < hi");
    if (hi - lo > capacity) throw CapacityExceeded("sieve_segment: window wider than segment capacity");
    SieveSegment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.prime_bits = detail::prime_window(lo, hi);
    seg.squarefree_bits = detail::squarefree_window(lo, hi);
    if (want_mobius) seg.mobius = detail::mobius_window(lo, hi);
    return seg;
}

} // namespace nsf::arith
