#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "nsf/arith.hpp"
#include "nsf/golden_section.hpp"
#include "nsf/representations.hpp"
#include "nsf/sieve.hpp"

namespace nsf::criterion {

namespace detail {

// zeta(s) - 1 for integer s >= 2, via direct summation plus Euler-Maclaurin
// tail terms. Accurate to ~1 ulp, which the prime-zeta series needs.
inline double zeta_minus_one(int s) {
    constexpr int N = 10'000;
    const double ds = s;
    reps::KahanSum acc;
    for (int n = N; n >= 2; --n) acc.add(std::pow(static_cast<double>(n), -ds));
    const double dN = N;
    acc.add(std::pow(dN, 1.0 - ds) / (ds - 1.0));
    acc.add(-0.5 * std::pow(dN, -ds));
    acc.add(ds / 12.0 * std::pow(dN, -ds - 1.0));
    acc.add(-ds * (ds + 1.0) * (ds + 2.0) / 720.0 * std::pow(dN, -ds - 3.0));
    return acc.sum;
}

// Prime zeta P(s) = sum over primes of p^-s, for integer s >= 2, through the
// Moebius-inverted log-zeta series.
inline double prime_zeta(int s) {
    if (s < 2) throw DomainError("prime_zeta: s must be >= 2");
    reps::KahanSum acc;
    for (int k = 1; k * s <= 128; ++k) {
        const int mu = arith::mobius(static_cast<std::uint64_t>(k));
        if (mu == 0) continue;
        acc.add(mu * std::log1p(zeta_minus_one(k * s)) / k);
    }
    return acc.sum;
}

} // namespace detail

// Artin's constant, prod over all primes of (1 - 1/(p(p-1))): the partial
// product over p <= cutoff times a tail correction. The tail of
// -log prod (1 - f(p)) with f(p) = 1/(p(p-1)) expands into prime-zeta tails
//   sum_{p>x} (f + f^2/2 + f^3/3 + ...)
//    = (t2+t3+t4+t5+t6) + (t4 + 2 t5 + 3 t6)/2 + t6/3 + O(t7),
// each t_j = P(j) - sum_{p<=x} p^-j, leaving a truncation error < 1e-12 for
// any cutoff >= 1000.
inline double artin_constant(std::uint64_t cutoff) {
    if (cutoff < 1000) throw DomainError("artin_constant: cutoff must be >= 1000");
    const auto primes = arith::primes_upto(cutoff);
    long double product = 1.0L;
    long double partial[7] = {0, 0, 0, 0, 0, 0, 0};
    for (std::uint64_t p : primes) {
        const long double lp = static_cast<long double>(p);
        product *= 1.0L - 1.0L / (lp * (lp - 1.0L));
        long double pk = 1.0L / (lp * lp);
        for (int j = 2; j <= 6; ++j) {
            partial[j] += pk;
            pk /= lp;
        }
    }
    double tail[7];
    for (int j = 2; j <= 6; ++j) tail[j] = detail::prime_zeta(j) - static_cast<double>(partial[j]);
    const double log_tail = (tail[2] + tail[3] + tail[4] + tail[5] + tail[6]) +
                            (tail[4] + 2.0 * tail[5] + 3.0 * tail[6]) / 2.0 + tail[6] / 3.0;
    return static_cast<double>(product) * std::exp(-log_tail);
}

inline double artin_constant() {
    static const double value = artin_constant(1'000'000);
    return value;
}

// P(n) = prod over p not dividing n of (1 - 1/(p(p-1)))
//      = C_Artin / prod over p | n of (1 - 1/(p(p-1))).
inline double P_exact(const arith::Factorization& f) {
    long double divisor = 1.0L;
    for (const auto& pp : f.factors) {
        const long double p = pp.prime.convert_to<long double>();
        divisor *= 1.0L - 1.0L / (p * (p - 1.0L));
    }
    return static_cast<double>(artin_constant() / divisor);
}

// W(n) as a function of L = log n:
//   W = [2.11 L log(2.11 L)]^-1 (1 - 5 / (2 log(2.11 L))).
inline double W(double log_n) {
    const double y = 2.11 * log_n;
    if (!(y > 1.0)) throw DomainError("W: need 2.11 * log_n > 1");
    const double ly = std::log(y);
    return (1.0 - 5.0 / (2.0 * ly)) / (y * ly);
}

// Upper bound P(n) < 1 - W + W^2/2, valid for log n >= 28.05.
inline double P_upper_bound(double log_n) {
    if (log_n < 28.05) throw DomainError("P_upper_bound: requires log_n >= 28.05");
    const double w = W(log_n);
    return 1.0 - w + w * w / 2.0;
}

// Ramare's tail bound: sum over a > c of mu^2(a)/phi(a^2) <= 4/(c-1).
inline double ramare_tail(double c) {
    if (!(c > 1.0)) throw DomainError("ramare_tail: c must be > 1");
    return 4.0 / (c - 1.0);
}

// Direct evaluation of the tail sum up to `cutoff`, for dominance checks.
inline double tail_oracle(double c, std::uint32_t cutoff) {
    if (!(c >= 1.0)) throw DomainError("tail_oracle: c must be >= 1");
    if (cutoff > 100'000'000) throw CapacityExceeded("tail_oracle: cutoff too large");
    const auto mu = arith::mobius_table(cutoff);
    const auto phi = arith::totient_table(cutoff);
    reps::KahanSum acc;
    const auto start = static_cast<std::uint64_t>(std::floor(c)) + 1;
    for (std::uint64_t a = start; a <= cutoff; ++a) {
        if (mu[a] == 0) continue;
        acc.add(1.0 / (static_cast<double>(a) * static_cast<double>(phi[a])));
    }
    return acc.sum;
}

// Brun-Titchmarsh factor (1+2A)/(1-2A).
inline double bt_factor(double A) {
    if (!(A > 0.0 && A < 0.5)) throw DomainError("bt_factor: A must lie in (0, 1/2)");
    return (1.0 + 2.0 * A) / (1.0 - 2.0 * A);
}

enum class EBound { bennett, grh, custom };

// Parameters of the explicit criterion. `custom_ratio(a, log_n)` must return
// E(a, n)/n for the custom E-bound.
struct CriterionParams {
    double A = 0.25;
    double c = 316.0;
    EBound e_bound = EBound::bennett;
    double x0 = 8e9;
    std::function<double(std::uint64_t, double)> custom_ratio;
};

enum class CriterionMode { odd, grh, general, general_odd };

inline const char* mode_name(CriterionMode m) {
    switch (m) {
        case CriterionMode::odd: return "odd";
        case CriterionMode::grh: return "grh";
        case CriterionMode::general: return "general";
        case CriterionMode::general_odd: return "general-odd";
    }
    return "?";
}

// One evaluated inequality: lhs > sum of the named terms. The verdict uses a
// relative decision margin so floating-point noise can never flip it; the
// inequalities of interest hold with margins >= 1e-4 wherever claimed.
struct CriterionBreakdown {
    CriterionMode mode = CriterionMode::odd;
    double lhs = 0.0;
    std::optional<double> p_term;         // general form only
    std::optional<double> w_squared_half; // grh form only
    double e_sum = 0.0;
    double bt_tail = 0.0;
    double theta_tail = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    bool verdict = false;
};

namespace detail {

inline void finalize(CriterionBreakdown& b) {
    b.rhs = b.e_sum + b.bt_tail + b.theta_tail;
    if (b.p_term) b.rhs += *b.p_term;
    if (b.w_squared_half) b.rhs += *b.w_squared_half;
    b.margin = b.lhs - b.rhs;
    b.verdict = b.margin > 1e-9 * std::max(1.0, std::abs(b.lhs));
}

} // namespace detail

inline const double kLog8e9 = std::log(8e9);

// Odd-n criterion with the Bennett et al. bound and c = 316:
//   1/2 > 316/(160 log n) + (1+2A)/(1-2A) * 4/315 + 3 log n / n^A.
inline CriterionBreakdown criterion_odd(double log_n, double A) {
    const double bt = bt_factor(A);
    if (log_n < kLog8e9 - 1e-12) throw DomainError("criterion_odd: Bennett bound needs n >= 8e9");
    CriterionBreakdown b;
    b.mode = CriterionMode::odd;
    b.lhs = 0.5;
    b.e_sum = 316.0 / (160.0 * log_n);
    b.bt_tail = bt * 4.0 / 315.0;
    b.theta_tail = 3.0 * log_n * std::exp(-A * log_n);
    detail::finalize(b);
    return b;
}

// GRH criterion with c = n^A:
//   W(n) > W^2/2 + n^{A-1/2}((1+8A)/(8 pi) log^2 n + 4A log n + 3.43)
//        + (1+2A)/(1-2A) * 4/(n^A - 1) + 3 log n / n^A.
inline CriterionBreakdown criterion_grh(double log_n, double A) {
    const double bt = bt_factor(A);
    if (log_n < 28.05) throw DomainError("criterion_grh: requires log_n >= 28.05");
    CriterionBreakdown b;
    b.mode = CriterionMode::grh;
    const double w = W(log_n);
    b.lhs = w;
    b.w_squared_half = w * w / 2.0;
    b.e_sum = std::exp((A - 0.5) * log_n) *
              ((1.0 + 8.0 * A) / (8.0 * std::numbers::pi) * log_n * log_n + 4.0 * A * log_n + 3.43);
    b.bt_tail = bt * 4.0 / (std::exp(A * log_n) - 1.0);
    b.theta_tail = 3.0 * log_n * std::exp(-A * log_n);
    detail::finalize(b);
    return b;
}

enum class PTermSource { exact, upper_bound };

// The generic criterion with the exact coprime-filtered sum over squarefree
// 1 < a <= c. In the general form the lhs is 1 and P(n) joins the right-hand
// side; in the odd form P(n) <= 1/2 has already been absorbed into the lhs.
inline CriterionBreakdown criterion_generic(double log_n, const CriterionParams& params,
                                            const arith::Factorization& n_factors, bool odd_form,
                                            PTermSource p_source = PTermSource::exact) {
    const double bt = bt_factor(params.A);
    if (!(params.c > 1.0)) throw DomainError("criterion_generic: c must be > 1");
    if (!(params.x0 > 0.0)) throw DomainError("criterion_generic: x0 must be positive");
    if (log_n < std::log(params.x0) - 1e-12) {
        throw DomainError("criterion_generic: log_n below the E-bound validity threshold");
    }

    std::function<double(std::uint64_t)> ratio; // E(a, n)/n
    switch (params.e_bound) {
        case EBound::bennett:
            // Valid for 3 <= a^2 <= 1e5, i.e. integer a <= 316.
            if (std::floor(params.c) > 316.0) throw UnsupportedEBound("criterion_generic: Bennett bound needs a^2 <= 1e5");
            ratio = [log_n](std::uint64_t) { return 1.0 / (160.0 * log_n); };
            break;
        case EBound::grh:
            ratio = [log_n](std::uint64_t a) {
                const double la = std::log(static_cast<double>(a));
                return std::exp(-0.5 * log_n) *
                       (log_n * log_n / (8.0 * std::numbers::pi) + (log_n / std::numbers::pi + 4.0) * la + 3.43);
            };
            break;
        case EBound::custom:
            if (!params.custom_ratio) throw UnsupportedEBound("criterion_generic: no custom E-bound supplied");
            ratio = [&params, log_n](std::uint64_t a) { return params.custom_ratio(a, log_n); };
            break;
    }

    const auto c_int = static_cast<std::uint64_t>(std::floor(params.c));
    if (c_int > 100'000'000) throw CapacityExceeded("criterion_generic: c too large to enumerate");

    const auto sf = arith::detail::squarefree_window(0, c_int + 1);
    std::vector<bool> shares_factor(c_int + 1, false);
    for (const auto& pp : n_factors.factors) {
        if (pp.prime > c_int) continue;
        const auto p = pp.prime.convert_to<std::uint64_t>();
        for (std::uint64_t m = p; m <= c_int; m += p) shares_factor[m] = true;
    }

    reps::KahanSum acc;
    for (std::uint64_t a = 2; a <= c_int; ++a) {
        if (!arith::detail::get_bit(sf, a) || shares_factor[a]) continue;
        acc.add(ratio(a));
    }

    CriterionBreakdown b;
    b.mode = odd_form ? CriterionMode::general_odd : CriterionMode::general;
    b.lhs = odd_form ? 0.5 : 1.0;
    if (!odd_form) {
        b.p_term = p_source == PTermSource::exact ? P_exact(n_factors) : P_upper_bound(log_n);
    }
    b.e_sum = acc.sum;
    b.bt_tail = bt * 4.0 / (params.c - 1.0);
    b.theta_tail = 3.0 * log_n * std::exp(-params.A * log_n);
    detail::finalize(b);
    return b;
}

enum class ClosedForm { odd, grh };

struct OptimizeResult {
    double A = 0.0;
    double rhs = 0.0;
    bool unimodal = true;
};

// Minimize the closed-form rhs over A in (0.01, 0.49). A grid pre-scan
// asserts unimodality (the rhs blows up at both ends); on violation the grid
// argmin is returned instead of a golden-section refinement.
inline OptimizeResult optimize_exponent(double log_n, ClosedForm mode) {
    auto rhs_at = [log_n, mode](double A) {
        return mode == ClosedForm::odd ? criterion_odd(log_n, A).rhs : criterion_grh(log_n, A).rhs;
    };
    constexpr double lo = 0.01, hi = 0.49;
    constexpr int n_grid = 481;
    std::vector<double> values(n_grid);
    double best = lo;
    double best_value = rhs_at(lo);
    values[0] = best_value;
    bool seen_increase = false;
    bool unimodal = true;
    for (int i = 1; i < n_grid; ++i) {
        const double a = lo + (hi - lo) * i / (n_grid - 1);
        values[i] = rhs_at(a);
        if (values[i] < best_value) {
            best_value = values[i];
            best = a;
        }
        if (values[i] > values[i - 1]) {
            seen_increase = true;
        } else if (values[i] < values[i - 1] && seen_increase) {
            unimodal = false;
        }
    }
    if (!unimodal) return {best, best_value, false};
    const auto [a_star, rhs_star] = opt::golden_section_min(rhs_at, lo, hi, 1e-5);
    return {a_star, rhs_star, true};
}

// Robin's bound omega(n) <= 1.3841 log n / log log n, as a function of log n.
inline double robin_omega_bound(double log_n) {
    if (!(log_n > 1.0)) throw DomainError("robin_omega_bound: need log_n > 1");
    return 1.3841 * log_n / std::log(log_n);
}

// Worst case of q_{omega(n)} < 2.11 log n for a given omega: n = the
// primorial of the k-th prime (exact bignum, high-precision log).
inline bool qbound_check(std::uint32_t k) {
    if (k < 3) throw DomainError("qbound_check: k must be >= 3");
    const std::uint64_t q = arith::nth_prime(k);
    const double log_primorial = log_big(arith::primorial(q));
    return static_cast<double>(q) < 2.11 * log_primorial;
}

} // namespace nsf::criterion
