#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nsf/arith.hpp"
#include "nsf/sieve.hpp"

namespace nsf::reps {

// Compensated (Kahan) accumulator for the log-weighted sums.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

// A Chebyshev-style log-weighted sum: value = sum of ln p over the counted
// primes, term_count = how many primes contributed.
struct ThetaValue {
    double value = 0.0;
    std::uint64_t term_count = 0;
};

// Certificate that n = p + s with p prime and s not squarefree.
struct RepresentationWitness {
    std::uint64_t n = 0;
    std::uint64_t p = 0;
    std::uint64_t s = 0;

    bool operator==(const RepresentationWitness&) const = default;
};

inline bool witness_is_valid(const RepresentationWitness& w) {
    return w.s >= 4 && w.p + w.s == w.n && arith::is_prime(w.p) && !arith::is_squarefree(w.s);
}

// theta(x) = sum of ln p over primes p <= x.
inline ThetaValue chebyshev_theta(std::uint64_t x, std::span<const std::uint64_t> primes) {
    ThetaValue out;
    KahanSum acc;
    for (std::uint64_t p : primes) {
        if (p > x) break;
        acc.add(std::log(static_cast<double>(p)));
        ++out.term_count;
    }
    out.value = acc.sum;
    return out;
}

inline ThetaValue chebyshev_theta(std::uint64_t x) {
    const auto primes = arith::primes_upto(x);
    return chebyshev_theta(x, primes);
}

// theta(x; m, r) = sum of ln p over primes p <= x with p = r (mod m).
inline ThetaValue chebyshev_theta_mod(std::uint64_t x, std::uint64_t modulus, std::uint64_t residue,
                                      std::span<const std::uint64_t> primes) {
    if (modulus < 1) throw DomainError("chebyshev_theta_mod: modulus must be >= 1");
    const std::uint64_t r = residue % modulus;
    ThetaValue out;
    KahanSum acc;
    for (std::uint64_t p : primes) {
        if (p > x) break;
        if (p % modulus != r) continue;
        acc.add(std::log(static_cast<double>(p)));
        ++out.term_count;
    }
    out.value = acc.sum;
    return out;
}

inline ThetaValue chebyshev_theta_mod(std::uint64_t x, std::uint64_t modulus, std::uint64_t residue) {
    const auto primes = arith::primes_upto(x);
    return chebyshev_theta_mod(x, modulus, residue, primes);
}

// R(n) = sum over primes p <= n of mu^2(n - p) ln p. With mu(0) = 0 the
// p = n term vanishes, so only positive s = n - p can contribute.
inline ThetaValue weighted_rep_sum(std::uint64_t n, std::span<const std::uint64_t> primes) {
    if (n < 2) throw DomainError("weighted_rep_sum: n must be >= 2");
    ThetaValue out;
    KahanSum acc;
    for (std::uint64_t p : primes) {
        if (p > n) break;
        if (p == n) continue;
        if (!arith::is_squarefree(n - p)) continue;
        acc.add(std::log(static_cast<double>(p)));
        ++out.term_count;
    }
    out.value = acc.sum;
    return out;
}

inline ThetaValue weighted_rep_sum(std::uint64_t n) {
    const auto primes = arith::primes_upto(n);
    return weighted_rep_sum(n, primes);
}

// deficit(n) = sum over 1 < a <= sqrt(n) of mu(a) * theta(n-1; a^2, n mod a^2).
//
// The progression sums run over primes p < n: the Dirichlet expansion of
// mu^2(n - p) is only valid for n - p >= 1, matching the mu(0) = 0
// convention above. This makes deficit(n) = R(n) - theta(n - 1) an exact
// identity, and deficit(n) < 0 equivalent to the existence of a witness;
// for composite n, theta(n - 1) = theta(n).
inline double deficit(std::uint64_t n, std::span<const std::uint64_t> primes) {
    if (n < 2) throw DomainError("deficit: n must be >= 2");
    KahanSum acc;
    for (std::uint64_t a = 2; a * a <= n; ++a) {
        const int mu = arith::mobius(a);
        if (mu == 0) continue;
        const std::uint64_t m = a * a;
        const ThetaValue t = chebyshev_theta_mod(n - 1, m, n % m, primes);
        acc.add(mu * t.value);
    }
    return acc.sum;
}

inline double deficit(std::uint64_t n) {
    const auto primes = arith::primes_upto(n);
    return deficit(n, primes);
}

// T(n): representations n = p + s with p prime and s a positive squarefree
// integer, counted over primes p (ordered count).
inline std::uint64_t squarefree_rep_count(std::uint64_t n, std::span<const std::uint64_t> primes) {
    if (n < 2) throw DomainError("squarefree_rep_count: n must be >= 2");
    std::uint64_t count = 0;
    for (std::uint64_t p : primes) {
        if (p >= n) break;
        if (arith::is_squarefree(n - p)) ++count;
    }
    return count;
}

inline std::uint64_t squarefree_rep_count(std::uint64_t n) {
    const auto primes = arith::primes_upto(n);
    return squarefree_rep_count(n, primes);
}

// g(n): representations n = p + q with p >= q both prime (unordered count).
inline std::uint64_t goldbach_rep_count(std::uint64_t n, std::span<const std::uint64_t> primes) {
    if (n < 2) throw DomainError("goldbach_rep_count: n must be >= 2");
    std::uint64_t count = 0;
    for (std::uint64_t q : primes) {
        if (q > n - q) break;
        if (arith::is_prime(n - q)) ++count;
    }
    return count;
}

inline std::uint64_t goldbach_rep_count(std::uint64_t n) {
    const auto primes = arith::primes_upto(n / 2);
    return goldbach_rep_count(n, primes);
}

// Smallest-s witness that n is a prime plus a non-squarefree integer.
inline std::optional<RepresentationWitness> find_witness(std::uint64_t n) {
    if (n < 2) throw DomainError("find_witness: n must be >= 2");
    for (std::uint64_t s = 4; s + 2 <= n; ++s) {
        if (arith::is_squarefree(s)) continue;
        if (arith::is_prime(n - s)) return RepresentationWitness{n, n - s, s};
    }
    return std::nullopt;
}

// Every n in [lo, hi) with no witness. Semantically a per-n find_witness
// scan; internally the small-s search is driven by sieved masks so the
// 10^7-scale scans finish quickly. The rare n with no witness below the
// mask bound fall back to the full scalar search.
inline std::vector<std::uint64_t> exceptions(std::uint64_t lo, std::uint64_t hi) {
    if (lo < 1 || lo >= hi) throw DomainError("exceptions: need 1 <= lo < hi");
    std::vector<std::uint64_t> out;

    constexpr std::uint64_t kSmallBound = 100'000;
    std::vector<std::uint32_t> small_nsf; // non-squarefree s <= kSmallBound, ascending
    {
        const std::uint64_t bound = std::min<std::uint64_t>(kSmallBound, hi);
        const auto sf = arith::detail::squarefree_window(0, bound + 1);
        for (std::uint64_t s = 4; s <= bound; ++s) {
            if (!arith::detail::get_bit(sf, s)) small_nsf.push_back(static_cast<std::uint32_t>(s));
        }
    }

    constexpr std::uint64_t kChunk = 10'000'000;
    for (std::uint64_t chunk_lo = lo; chunk_lo < hi; chunk_lo += kChunk) {
        const std::uint64_t chunk_hi = std::min(hi, chunk_lo + kChunk);
        const std::uint64_t wlo = chunk_lo > kSmallBound ? chunk_lo - kSmallBound : 0;
        const auto prime_bits = arith::detail::prime_window(wlo, chunk_hi);
        for (std::uint64_t n = chunk_lo; n < chunk_hi; ++n) {
            bool verified = false;
            for (std::uint32_t s : small_nsf) {
                if (s + 2 > n) break;
                if (arith::detail::get_bit(prime_bits, n - s - wlo)) {
                    verified = true;
                    break;
                }
            }
            if (!verified && n >= 2 && n >= kSmallBound + 2) {
                verified = find_witness(n).has_value();
            }
            if (!verified) out.push_back(n);
        }
    }
    return out;
}

} // namespace nsf::reps
