#pragma once

#include <cmath>
#include <cstdint>
#include <optional>

#include "nsf/arith.hpp"
#include "nsf/bigint.hpp"

namespace nsf::grh {

// Under GRH, the least prime p = n (mod q^2) for (n, q^2) = 1 satisfies
// p <= (2 phi(q^2) log q)^2 = 4 (q (q-1) log q)^2.
inline double least_prime_bound(std::uint64_t q) {
    if (!arith::is_prime(q)) throw NotPrime("least_prime_bound: q must be prime");
    const double dq = static_cast<double>(q);
    const double t = dq * (dq - 1.0) * std::log(dq);
    return 4.0 * t * t;
}

// Certificate that the least-prime argument applies to n: a prime q with
// q not dividing n and n above the conditional least-prime bound for q^2.
struct GateWitness {
    BigInt n;
    std::uint64_t q = 0;
    double bound = 0.0;
};

inline bool witness_is_valid(const GateWitness& w) {
    return arith::is_prime(w.q) && w.n % w.q != 0 && w.n.convert_to<double>() > w.bound;
}

inline constexpr std::uint64_t kGatePrimes[20] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                                  31, 37, 41, 43, 47, 53, 59, 61, 67, 71};

// Smallest prime q <= 71 with q not dividing n; every such q has
// 4(q(q-1) log q)^2 < 8e9 < n, so the witness condition reduces to
// divisibility. No witness exists exactly when q20# divides n.
inline std::optional<GateWitness> gate(const BigInt& n) {
    if (n <= BigInt(8'000'000'000)) throw DomainError("gate: requires n > 8e9");
    for (std::uint64_t q : kGatePrimes) {
        if (n % q == 0) continue;
        const double bound = least_prime_bound(q);
        if (n.convert_to<double>() > bound) return GateWitness{n, q, bound};
    }
    return std::nullopt;
}

} // namespace nsf::grh
