#pragma once

#include <atomic>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>
#include <vector>

#include "nsf/representations.hpp"
#include "nsf/sieve.hpp"

namespace nsf::verifier {

struct VerifierConfig {
    std::uint64_t segment_width = 10'000'000;
    std::uint32_t s1_bound = 100'000; // covering offsets
    std::uint32_t s2_bound = 10'000;  // targeted offsets
    unsigned thread_count = 1;
};

inline void validate(const VerifierConfig& cfg) {
    if (cfg.s1_bound < 4 || cfg.s2_bound < 4) throw DomainError("VerifierConfig: offset bounds must be >= 4");
    if (cfg.s1_bound > 100'000'000) throw CapacityExceeded("VerifierConfig: s1_bound beyond table capacity");
    if (cfg.s2_bound > cfg.s1_bound) throw DomainError("VerifierConfig: s2_bound must be <= s1_bound");
    if (cfg.segment_width == 0 || cfg.segment_width > arith::kDefaultSegmentCapacity) {
        throw CapacityExceeded("VerifierConfig: segment_width exceeds sieve capacity");
    }
    if (cfg.thread_count < 1) throw DomainError("VerifierConfig: thread_count must be >= 1");
}

// Precomputed non-squarefree offset tables: S1 doubles as a bit-indexed
// membership structure, S2 is scanned ascending so the targeted stage finds
// the smallest offset first (same tie-break as find_witness).
struct Tables {
    std::uint32_t s1_bound = 0;
    std::uint32_t s2_bound = 0;
    std::vector<std::uint64_t> s1_bits;
    std::vector<std::uint32_t> s1;
    std::vector<std::uint32_t> s2;

    bool s1_contains(std::uint64_t m) const {
        return m >= 4 && m <= s1_bound && arith::detail::get_bit(s1_bits, m);
    }
};

inline Tables build_tables(const VerifierConfig& cfg) {
    validate(cfg);
    Tables t;
    t.s1_bound = cfg.s1_bound;
    t.s2_bound = cfg.s2_bound;
    const auto sf = arith::detail::squarefree_window(0, cfg.s1_bound + 1);
    t.s1_bits.assign((cfg.s1_bound + 64) / 64 + 1, 0);
    for (std::uint32_t m = 4; m <= cfg.s1_bound; ++m) {
        if (!arith::detail::get_bit(sf, m)) {
            arith::detail::set_bit(t.s1_bits, m);
            t.s1.push_back(m);
            if (m <= cfg.s2_bound) t.s2.push_back(m);
        }
    }
    return t;
}

// Per-range audit trail. Every n in [lo, hi) is attributed to exactly one of
// covered / targeted / fallback / exceptions.
struct VerificationReport {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t covered = 0;
    std::uint64_t targeted = 0;
    std::uint64_t fallback = 0;
    std::vector<std::uint64_t> exceptions;
    double elapsed_ms = 0.0;

    // Mathematical content only; elapsed_ms is timing noise.
    bool operator==(const VerificationReport& o) const {
        return lo == o.lo && hi == o.hi && covered == o.covered && targeted == o.targeted &&
               fallback == o.fallback && exceptions == o.exceptions;
    }
};

namespace detail {

inline void check_accounting(const VerificationReport& r) {
    if (r.covered + r.targeted + r.fallback + r.exceptions.size() != r.hi - r.lo) {
        throw Error("VerificationReport: stage counts do not partition the range");
    }
}

} // namespace detail

// Three-stage pipeline over one segment:
//   1. covering: mark every p + s with p prime in [lo - s1_bound, hi) and
//      s in S1 (computed as a shifted-OR of the prime mask, with saturated
//      words dropped from the scan; the result is the exact union);
//   2. targeted: for each unmarked n, scan S2 ascending and test n - s for
//      primality;
//   3. fallback: exhaustive find_witness.
inline VerificationReport verify_segment(std::uint64_t lo, std::uint64_t hi, const VerifierConfig& cfg,
                                         const Tables& tables) {
    validate(cfg);
    if (!(24 < lo && lo < hi)) throw InvalidRange("verify_segment: need 24 < lo < hi");
    if (hi - lo > cfg.segment_width) throw InvalidRange("verify_segment: range wider than segment_width");
    const auto t0 = std::chrono::steady_clock::now();

    const std::uint64_t width = hi - lo;
    const std::uint64_t wlo = lo > tables.s1_bound ? lo - tables.s1_bound : 0;
    const std::uint64_t pad = lo - wlo;
    const auto prime_bits = arith::detail::prime_window(wlo, hi);

    const std::size_t nwords = (width + 63) / 64;
    std::vector<std::uint64_t> verified(nwords, 0);
    for (std::uint64_t i = width; i < 64 * nwords; ++i) arith::detail::set_bit(verified, i);

    std::vector<std::uint32_t> active(nwords);
    std::iota(active.begin(), active.end(), 0u);
    for (std::uint32_t s : tables.s1) {
        if (active.empty()) break;
        const std::int64_t base = static_cast<std::int64_t>(pad) - static_cast<std::int64_t>(s);
        std::size_t write = 0;
        for (std::uint32_t idx : active) {
            const std::int64_t src = base + 64ll * idx;
            std::uint64_t bits = 0;
            if (src >= 0) {
                const auto j = static_cast<std::size_t>(src >> 6);
                const auto r = static_cast<unsigned>(src & 63);
                bits = prime_bits[j] >> r;
                if (r != 0) bits |= prime_bits[j + 1] << (64 - r);
            } else if (src > -64) {
                bits = prime_bits[0] << static_cast<unsigned>(-src);
            }
            const std::uint64_t v = verified[idx] | bits;
            verified[idx] = v;
            if (v != ~std::uint64_t(0)) active[write++] = idx;
        }
        active.resize(write);
    }

    VerificationReport report;
    report.lo = lo;
    report.hi = hi;
    for (std::uint64_t w : verified) report.covered += static_cast<std::uint64_t>(std::popcount(w));
    report.covered -= 64 * nwords - width;

    for (std::uint32_t idx : active) {
        std::uint64_t w = ~verified[idx];
        while (w != 0) {
            const unsigned k = static_cast<unsigned>(std::countr_zero(w));
            w &= w - 1;
            const std::uint64_t n = lo + 64ull * idx + k;
            bool hit = false;
            for (std::uint32_t s : tables.s2) {
                if (s + 2 > n) break;
                if (arith::is_prime(n - s)) {
                    hit = true;
                    break;
                }
            }
            if (hit) {
                ++report.targeted;
            } else if (reps::find_witness(n).has_value()) {
                ++report.fallback;
            } else {
                report.exceptions.push_back(n);
            }
        }
    }

    detail::check_accounting(report);
    report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

// Merge two adjacent reports. Associative and commutative over a partition.
inline VerificationReport merge(VerificationReport a, const VerificationReport& b) {
    if (a.hi == b.lo) {
        a.hi = b.hi;
        a.exceptions.insert(a.exceptions.end(), b.exceptions.begin(), b.exceptions.end());
    } else if (b.hi == a.lo) {
        a.lo = b.lo;
        a.exceptions.insert(a.exceptions.begin(), b.exceptions.begin(), b.exceptions.end());
    } else {
        throw InvalidRange("merge: reports are not adjacent");
    }
    a.covered += b.covered;
    a.targeted += b.targeted;
    a.fallback += b.fallback;
    a.elapsed_ms += b.elapsed_ms;
    return a;
}

using SegmentCallback = std::function<void(const VerificationReport&)>;

// Partition [lo, hi) into segments, verify them on a bounded worker pool and
// merge. on_segment fires in ascending segment order, exactly once per
// segment not supplied via `resume` (checkpoint replay). The merged result
// does not depend on thread_count.
inline VerificationReport verify_range(std::uint64_t lo, std::uint64_t hi, const VerifierConfig& cfg,
                                       const SegmentCallback& on_segment = {},
                                       const std::vector<VerificationReport>& resume = {}) {
    validate(cfg);
    if (!(24 < lo && lo < hi)) throw InvalidRange("verify_range: need 24 < lo < hi");
    const Tables tables = build_tables(cfg);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> segments;
    for (std::uint64_t a = lo; a < hi; a += cfg.segment_width) {
        segments.emplace_back(a, std::min(hi, a + cfg.segment_width));
    }

    std::vector<VerificationReport> reports(segments.size());
    std::vector<char> precomputed(segments.size(), 0);
    for (std::size_t i = 0; i < segments.size(); ++i) {
        for (const auto& r : resume) {
            if (r.lo == segments[i].first && r.hi == segments[i].second) {
                reports[i] = r;
                precomputed[i] = 1;
                break;
            }
        }
    }

    std::atomic<std::size_t> next{0};
    std::vector<char> done(segments.size(), 0);
    std::size_t emit_next = 0;
    std::mutex emit_mutex;
    std::exception_ptr failure;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= segments.size()) return;
            try {
                if (!precomputed[i]) {
                    reports[i] = verify_segment(segments[i].first, segments[i].second, cfg, tables);
                }
            } catch (...) {
                std::lock_guard lock(emit_mutex);
                if (!failure) failure = std::current_exception();
                done[i] = 1;
                continue;
            }
            std::lock_guard lock(emit_mutex);
            done[i] = 1;
            while (emit_next < segments.size() && done[emit_next]) {
                if (on_segment && !precomputed[emit_next] && !failure) on_segment(reports[emit_next]);
                ++emit_next;
            }
        }
    };

    const unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(cfg.thread_count, segments.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    VerificationReport total = reports[0];
    for (std::size_t i = 1; i < reports.size(); ++i) total = merge(std::move(total), reports[i]);
    detail::check_accounting(total);
    return total;
}

enum class Stage { covered, targeted, fallback, exception };

// Rebuild the witness behind a stage attribution on demand; reports store
// only counts.
inline std::pair<Stage, std::optional<reps::RepresentationWitness>> reconstruct(std::uint64_t n,
                                                                                const Tables& tables) {
    for (std::uint32_t s : tables.s1) {
        if (s + 2 > n) break;
        if (arith::is_prime(n - s)) return {Stage::covered, reps::RepresentationWitness{n, n - s, s}};
    }
    for (std::uint32_t s : tables.s2) {
        if (s + 2 > n) break;
        if (arith::is_prime(n - s)) return {Stage::targeted, reps::RepresentationWitness{n, n - s, s}};
    }
    if (auto w = reps::find_witness(n)) return {Stage::fallback, *w};
    return {Stage::exception, std::nullopt};
}

} // namespace nsf::verifier
