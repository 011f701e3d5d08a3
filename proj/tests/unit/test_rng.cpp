#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>

#include "stepdown/rng.hpp"

namespace rng = stepdown::rng;

TEST_CASE("splitmix64 matches the reference stream") {
    std::uint64_t state = 0;
    CHECK(rng::splitmix64(state) == 0xE220A8397B1DCDAFull);
    CHECK(rng::splitmix64(state) == 0x6E789E6AA1B965F4ull);
    CHECK(rng::splitmix64(state) == 0x06C45D188009454Full);
    std::uint64_t s42 = 42;
    CHECK(rng::splitmix64(s42) == 0xBDD732262FEB6E95ull);
    CHECK(rng::splitmix64(s42) == 0x28EFE333B266F103ull);
}

TEST_CASE("xoshiro256++ with splitmix seeding matches frozen outputs") {
    rng::Xoshiro256 g(12345);
    CHECK(g.next() == 0x8D948A82DEF8A568ull);
    CHECK(g.next() == 0x3477F953796702A0ull);
    CHECK(g.next() == 0x15CAA2FCE6DB8D69ull);
    CHECK(g.next() == 0x2CEF8853C20C6DD0ull);
}

TEST_CASE("derived streams are deterministic and distinct") {
    rng::Xoshiro256 a = rng::stream(7, 0);
    CHECK(a.next() == 0xD8BA32130D2F266Cull);
    rng::Xoshiro256 b = rng::stream(7, 1);
    CHECK(b.next() == 0xB09ED19C9F12A826ull);

    rng::Xoshiro256 a2 = rng::stream(7, 0);
    CHECK(a2.next() == 0xD8BA32130D2F266Cull);

    // same index, different master
    rng::Xoshiro256 c = rng::stream(8, 0);
    CHECK(c.next() != 0xD8BA32130D2F266Cull);
}

TEST_CASE("uniform01 lives in [0,1) and uses the top 53 bits") {
    rng::Xoshiro256 g = rng::stream(7, 0);
    CHECK(rng::uniform01(g) == doctest::Approx(0.8465911194336369).epsilon(1e-15));
    for (int i = 0; i < 10000; ++i) {
        const double u = rng::uniform01(g);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("interval samplers respect their endpoints") {
    rng::Xoshiro256 g(99);
    for (int i = 0; i < 5000; ++i) {
        const double x = rng::uniform_in(g, 0.25, 0.5);
        CHECK(x >= 0.25);
        CHECK(x < 0.5);
        const double y = rng::uniform_left_open(g, 0.25, 0.5);
        CHECK(y > 0.25);
        CHECK(y <= 0.5);
    }
}

TEST_CASE("uniform_below is in range and hits every residue") {
    rng::Xoshiro256 g(3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t v = rng::uniform_below(g, 7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("standard normal moments") {
    rng::Xoshiro256 g(2024);
    const int n = 40000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng::standard_normal(g);
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::fabs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::fabs(var - 1.0) < 0.05);
}

TEST_CASE("sample_subset returns a uniform k-subset") {
    rng::Xoshiro256 g(5);
    for (int rep = 0; rep < 200; ++rep) {
        const auto subset = rng::sample_subset(g, 10, 4);
        CHECK(subset.size() == 4);
        std::set<int> uniq(subset.begin(), subset.end());
        CHECK(uniq.size() == 4);
        CHECK(*uniq.begin() >= 0);
        CHECK(*uniq.rbegin() < 10);
    }
    // frequency of element 0 appearing should be ~ k/n = 0.4
    rng::Xoshiro256 h(6);
    int hits = 0;
    const int reps = 20000;
    for (int rep = 0; rep < reps; ++rep) {
        const auto subset = rng::sample_subset(h, 5, 2);
        hits += std::count(subset.begin(), subset.end(), 0) > 0 ? 1 : 0;
    }
    const double freq = static_cast<double>(hits) / reps;
    CHECK(std::fabs(freq - 0.4) < 4.0 * std::sqrt(0.4 * 0.6 / reps));
}
