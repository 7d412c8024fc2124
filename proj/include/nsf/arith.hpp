#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "nsf/bigint.hpp"
#include "nsf/errors.hpp"
#include "nsf/primality.hpp"

namespace nsf::arith {

inline std::uint64_t isqrt(std::uint64_t n) {
    if (n == 0) return 0;
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// All primes <= limit, ascending. Simple monolithic sieve; used for base
// primes and small tables (segmented windows live in sieve.hpp).
inline std::vector<std::uint64_t> primes_upto(std::uint64_t limit) {
    if (limit > 2'000'000'000ull) throw CapacityExceeded("primes_upto: limit beyond the sieve budget");
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t p = 2; p * p <= limit; ++p) {
        if (composite[p]) continue;
        for (std::uint64_t m = p * p; m <= limit; m += p) composite[m] = true;
    }
    primes.reserve(static_cast<std::size_t>(limit > 16 ? 1.3 * limit / std::log(static_cast<double>(limit)) : 8));
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (!composite[n]) primes.push_back(n);
    }
    return primes;
}

struct PrimePower {
    BigInt prime;
    std::uint32_t exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

// Exact factorization: primes strictly increasing, exponents >= 1, and the
// product of prime^exponent reproduces value. value = 1 has no factors.
struct Factorization {
    BigInt value = 1;
    std::vector<PrimePower> factors;

    std::size_t omega() const { return factors.size(); }

    BigInt product() const {
        BigInt acc = 1;
        for (const auto& pp : factors) {
            for (std::uint32_t i = 0; i < pp.exponent; ++i) acc *= pp.prime;
        }
        return acc;
    }

    bool valid() const {
        if (value < 1) return false;
        for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
            if (factors[i].prime >= factors[i + 1].prime) return false;
        }
        for (const auto& pp : factors) {
            if (pp.exponent < 1 || pp.prime < 2) return false;
        }
        return product() == value;
    }

    bool operator==(const Factorization&) const = default;
};

namespace detail {

// Base primes shared by trial division. Built once, immutable afterwards.
inline const std::vector<std::uint64_t>& small_primes() {
    static const std::vector<std::uint64_t> primes = primes_upto(1'000'000);
    return primes;
}

inline std::uint64_t pollard_brent(std::uint64_t n) {
    // Brent's cycle variant of Pollard rho. n must be odd, composite, > 1.
    for (std::uint64_t c = 1;; ++c) {
        std::uint64_t x = 2, y = 2, d = 1, q = 1, ys = y;
        const std::uint64_t m = 128;
        std::uint64_t r = 1;
        auto f = [n, c](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            while (k < r && d == 1) {
                ys = y;
                const std::uint64_t chunk = std::min(m, r - k);
                for (std::uint64_t i = 0; i < chunk; ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
                k += chunk;
            }
            r <<= 1;
        }
        if (d == n) {
            // Batch gcd overshot; redo one step at a time from the saved point.
            d = 1;
            while (d == 1) {
                ys = f(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (d != n) return d;
    }
}

inline void factor_u64_into(std::uint64_t n, std::vector<std::pair<std::uint64_t, std::uint32_t>>& out) {
    if (n <= 1) return;
    if (is_prime(n)) {
        out.emplace_back(n, 1);
        return;
    }
    const std::uint64_t d = pollard_brent(n);
    factor_u64_into(d, out);
    factor_u64_into(n / d, out);
}

} // namespace detail

inline Factorization factorize(std::uint64_t n) {
    if (n < 1) throw DomainError("factorize: n must be >= 1");
    Factorization result;
    result.value = n;
    std::uint64_t m = n;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> found;
    for (std::uint64_t p : detail::small_primes()) {
        if (p > 10'000 || p * p > m) break;
        if (m % p == 0) {
            std::uint32_t e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            found.emplace_back(p, e);
        }
    }
    if (m > 1) {
        // No factor <= 10^4 remains, so m < 10^8 is prime outright; larger
        // leftovers go through verified Pollard-Brent splitting.
        std::vector<std::pair<std::uint64_t, std::uint32_t>> tail;
        detail::factor_u64_into(m, tail);
        std::sort(tail.begin(), tail.end());
        for (std::size_t i = 0; i < tail.size();) {
            std::size_t j = i;
            std::uint32_t e = 0;
            while (j < tail.size() && tail[j].first == tail[i].first) {
                e += tail[j].second;
                ++j;
            }
            found.emplace_back(tail[i].first, e);
            i = j;
        }
    }
    for (const auto& [p, e] : found) result.factors.push_back({BigInt(p), e});
    return result;
}

inline Factorization factorize(const BigInt& n) {
    if (n < 1) throw DomainError("factorize: n must be >= 1");
    if (n <= BigInt(UINT64_MAX)) return factorize(n.convert_to<std::uint64_t>());
    Factorization result;
    result.value = n;
    BigInt m = n;
    for (std::uint64_t p : detail::small_primes()) {
        if (m % p == 0) {
            std::uint32_t e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            result.factors.push_back({BigInt(p), e});
        }
        if (m == 1) break;
    }
    if (m > 1) {
        if (m > BigInt(UINT64_MAX)) {
            // The pipeline only ever factors smooth (primorial-like) bignums;
            // a wide co-factor means the effort budget is spent.
            throw FactorizationFailed("factorize: co-factor exceeds 64-bit range after trial division");
        }
        std::vector<std::pair<std::uint64_t, std::uint32_t>> tail;
        detail::factor_u64_into(m.convert_to<std::uint64_t>(), tail);
        std::sort(tail.begin(), tail.end());
        for (const auto& [p, e] : tail) result.factors.push_back({BigInt(p), e});
    }
    return result;
}

// Miller-Rabin is exact below 2^64; nothing in the pipeline needs certified
// primality above that, so wider inputs are rejected rather than guessed.
inline bool is_prime(const BigInt& n) {
    if (n < 0) return false;
    if (n > BigInt(UINT64_MAX)) {
        throw OutOfSupportedRange("is_prime: no exact method configured for n >= 2^64");
    }
    return is_prime(n.convert_to<std::uint64_t>());
}

// Moebius function; mu(0) = 0 by convention so the p = n term of the weighted
// counting sum vanishes (s = n - p must be a positive integer).
inline int mobius(std::uint64_t n) {
    if (n == 0) return 0;
    if (n == 1) return 1;
    const Factorization f = factorize(n);
    for (const auto& pp : f.factors) {
        if (pp.exponent >= 2) return 0;
    }
    return f.omega() % 2 == 0 ? 1 : -1;
}

inline bool is_squarefree(std::uint64_t n) {
    if (n == 0) return false;
    return mobius(n) != 0;
}

inline std::uint64_t nth_prime(std::size_t i) {
    if (i < 1) throw DomainError("nth_prime: index must be >= 1");
    const double di = static_cast<double>(i);
    std::uint64_t bound = i < 6 ? 16 : static_cast<std::uint64_t>(di * (std::log(di) + std::log(std::log(di)))) + 16;
    for (;;) {
        const auto primes = primes_upto(bound);
        if (primes.size() >= i) return primes[i - 1];
        bound += bound / 2;
    }
}

// N# = product of all primes <= N, in exact arithmetic.
inline BigInt primorial(std::uint64_t N) {
    if (N < 2) throw DomainError("primorial: N must be >= 2");
    BigInt acc = 1;
    for (std::uint64_t p : primes_upto(N)) acc *= p;
    return acc;
}

// phi(a^2) = a * phi(a), exact.
inline BigInt phi_of_square(const BigInt& a) {
    if (a < 1) throw DomainError("phi_of_square: a must be >= 1");
    const Factorization f = factorize(a);
    BigInt phi = 1;
    for (const auto& pp : f.factors) {
        BigInt pk = 1;
        for (std::uint32_t i = 0; i + 1 < pp.exponent; ++i) pk *= pp.prime;
        phi *= pk * (pp.prime - 1);
    }
    return a * phi;
}

// mu(n) for all n <= N via a linear sieve.
inline std::vector<std::int8_t> mobius_table(std::uint32_t N) {
    std::vector<std::int8_t> mu(static_cast<std::size_t>(N) + 1, 0);
    std::vector<std::uint32_t> primes;
    std::vector<bool> composite(static_cast<std::size_t>(N) + 1, false);
    if (N >= 1) mu[1] = 1;
    for (std::uint32_t i = 2; i <= N; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (std::uint32_t p : primes) {
            const std::uint64_t ip = static_cast<std::uint64_t>(i) * p;
            if (ip > N) break;
            composite[ip] = true;
            if (i % p == 0) {
                mu[ip] = 0;
                break;
            }
            mu[ip] = static_cast<std::int8_t>(-mu[i]);
        }
    }
    return mu;
}

// phi(n) for all n <= N via a linear sieve.
inline std::vector<std::uint32_t> totient_table(std::uint32_t N) {
    std::vector<std::uint32_t> phi(static_cast<std::size_t>(N) + 1, 0);
    std::vector<std::uint32_t> primes;
    std::vector<bool> composite(static_cast<std::size_t>(N) + 1, false);
    if (N >= 1) phi[1] = 1;
    for (std::uint32_t i = 2; i <= N; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            phi[i] = i - 1;
        }
        for (std::uint32_t p : primes) {
            const std::uint64_t ip = static_cast<std::uint64_t>(i) * p;
            if (ip > N) break;
            composite[ip] = true;
            if (i % p == 0) {
                phi[ip] = phi[i] * p;
                break;
            }
            phi[ip] = phi[i] * (p - 1);
        }
    }
    return phi;
}

} // namespace nsf::arith
