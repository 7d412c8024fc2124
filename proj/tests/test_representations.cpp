#include <catch2/catch.hpp>

#include <random>

#include "nsf/representations.hpp"
#include "oracles.hpp"

using namespace nsf;

TEST_CASE("chebyshev theta", "[reps]") {
    const auto empty = reps::chebyshev_theta(1);
    CHECK(empty.value == 0.0);
    CHECK(empty.term_count == 0);

    const auto t10 = reps::chebyshev_theta(10);
    CHECK(t10.term_count == 4);
    CHECK(t10.value == Approx(std::log(210.0)).margin(1e-12));

    const auto t100 = reps::chebyshev_theta(100);
    CHECK(t100.value == Approx(static_cast<double>(oracle::theta(100))).margin(1e-9));
    CHECK(t100.term_count == 25);
}

TEST_CASE("chebyshev theta in progressions", "[reps]") {
    const auto t = reps::chebyshev_theta_mod(20, 9, 20); // primes 2, 11
    CHECK(t.term_count == 2);
    CHECK(t.value == Approx(std::log(22.0)).margin(1e-12));

    const auto whole = reps::chebyshev_theta_mod(10, 1, 0);
    CHECK(whole.value == Approx(reps::chebyshev_theta(10).value).margin(1e-12));
    CHECK(whole.term_count == 4);

    CHECK(reps::chebyshev_theta_mod(50, 4, 3).value ==
          Approx(static_cast<double>(oracle::theta_mod(50, 4, 3))).margin(1e-12));

    CHECK_THROWS_AS(reps::chebyshev_theta_mod(10, 0, 0), DomainError);
}

TEST_CASE("theta_mod partitions theta over residue classes", "[reps]") {
    for (std::uint64_t m : {2ull, 3ull, 7ull, 12ull, 25ull}) {
        for (std::uint64_t x : {10ull, 97ull, 1234ull, 10000ull}) {
            const auto primes = arith::primes_upto(x);
            reps::KahanSum total;
            std::uint64_t terms = 0;
            for (std::uint64_t r = 0; r < m; ++r) {
                const auto part = reps::chebyshev_theta_mod(x, m, r, primes);
                total.add(part.value);
                terms += part.term_count;
            }
            const auto whole = reps::chebyshev_theta(x, primes);
            REQUIRE(total.sum == Approx(whole.value).margin(1e-9));
            REQUIRE(terms == whole.term_count);
        }
    }
}

TEST_CASE("weighted rep sum R", "[reps]") {
    const auto r10 = reps::weighted_rep_sum(10); // p in {3, 5, 7}
    CHECK(r10.term_count == 3);
    CHECK(r10.value == Approx(std::log(105.0)).margin(1e-12));

    // Only p = 2 is <= 2, and mu(0) = 0 kills that term.
    const auto r2 = reps::weighted_rep_sum(2);
    CHECK(r2.value == 0.0);
    CHECK(r2.term_count == 0);

    // 24 is an exception: every n - p is squarefree.
    const auto r24 = reps::weighted_rep_sum(24);
    const auto t24 = reps::chebyshev_theta(24);
    CHECK(r24.term_count == t24.term_count);
    CHECK(r24.value == Approx(t24.value).margin(1e-12));
}

TEST_CASE("deficit examples", "[reps]") {
    CHECK(reps::deficit(10) == Approx(-std::log(2.0)).margin(1e-9));
    CHECK(reps::deficit(24) >= 0.0);
    CHECK(reps::deficit(30) < 0.0);
}

TEST_CASE("deficit equals R minus theta", "[reps]") {
    const auto primes = arith::primes_upto(2000);
    for (std::uint64_t n = 2; n <= 2000; ++n) {
        const double d = reps::deficit(n, primes);
        const double r = reps::weighted_rep_sum(n, primes).value;
        // Exact identity with the progression sums over p < n.
        REQUIRE(d == Approx(r - reps::chebyshev_theta(n - 1, primes).value).margin(1e-6));
        // Composite n: theta(n-1) = theta(n), so the shorter form holds too.
        if (!arith::is_prime(n)) {
            REQUIRE(d == Approx(r - reps::chebyshev_theta(n, primes).value).margin(1e-6));
        }
    }
}

TEST_CASE("deficit sign decides representability", "[reps]") {
    const auto primes = arith::primes_upto(2000);
    for (std::uint64_t n = 2; n <= 2000; ++n) {
        const double d = reps::deficit(n, primes);
        const bool has_witness = reps::find_witness(n).has_value();
        INFO("n = " << n << " deficit = " << d);
        REQUIRE((d < -1e-6) == has_witness);
        // Decision margin: nothing sits inside the tolerance band.
        if (d != 0.0) REQUIRE(std::abs(d) > 1e-4);
    }
}

TEST_CASE("representation counts", "[reps]") {
    CHECK(reps::squarefree_rep_count(10) == 3); // 3+7, 5+5, 7+3
    CHECK(reps::goldbach_rep_count(10) == 2);   // 5+5, 7+3
    // Oracle output for the degenerate smallest case: no prime p < 2 exists.
    CHECK(reps::squarefree_rep_count(2) == oracle::count_prime_plus_squarefree(2));
    CHECK(reps::squarefree_rep_count(2) == 0);

    for (std::uint64_t n = 2; n <= 400; ++n) {
        REQUIRE(reps::squarefree_rep_count(n) == oracle::count_prime_plus_squarefree(n));
        REQUIRE(reps::goldbach_rep_count(n) == oracle::count_goldbach(n));
    }
}

TEST_CASE("find_witness returns the smallest-s certificate", "[reps]") {
    // 25 = 5^2 is the least non-squarefree s with 30 - s prime.
    const auto w30 = reps::find_witness(30);
    REQUIRE(w30.has_value());
    CHECK(*w30 == reps::RepresentationWitness{30, 5, 25});

    CHECK_FALSE(reps::find_witness(24).has_value());

    const auto w6 = reps::find_witness(6);
    REQUIRE(w6.has_value());
    CHECK(*w6 == reps::RepresentationWitness{6, 2, 4});

    for (std::uint64_t n = 2; n <= 3000; ++n) {
        const auto w = reps::find_witness(n);
        const auto ow = oracle::find_witness(n);
        REQUIRE(w.has_value() == ow.has_value());
        if (w) {
            REQUIRE(w->p == ow->p);
            REQUIRE(w->s == ow->s);
            REQUIRE(reps::witness_is_valid(*w));
            REQUIRE(oracle::is_prime(w->p));
            REQUIRE_FALSE(oracle::is_squarefree(w->s));
            REQUIRE(w->p + w->s == n);
        }
    }
}

TEST_CASE("exceptions at the boundary", "[reps]") {
    CHECK(reps::exceptions(1, 25) == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 8, 24});
    CHECK(reps::exceptions(6, 7).empty());
    CHECK(reps::exceptions(25, 10'000).empty());
    CHECK_THROWS_AS(reps::exceptions(0, 10), DomainError);
    CHECK_THROWS_AS(reps::exceptions(10, 10), DomainError);
}

TEST_CASE("exceptions scan spans chunk boundaries", "[reps][slow]") {
    // The internal scan works in 1e7-wide chunks; a range crossing the first
    // boundary exercises the stitching.
    CHECK(reps::exceptions(25, 10'000'050).empty());
}

TEST_CASE("exceptions agree with per-n witness search on random windows", "[reps]") {
    std::mt19937_64 rng(99);
    for (int round = 0; round < 8; ++round) {
        const std::uint64_t lo = 1 + rng() % 40'000;
        const std::uint64_t hi = lo + 50 + rng() % 300;
        const auto fast = reps::exceptions(lo, hi);
        REQUIRE(fast == oracle::exceptions(lo, hi));
    }
}
