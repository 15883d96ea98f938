// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "xsplanes/control.hpp"
#include "xsplanes/engine.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace xsplanes;

// Hand bit-trace for (s0, s1) = (1, 0), (a, b, c) = (23, 17, 26):
//   s0 (I + L^23)       = 1 ^ (1 << 23)           = 0x800001
//   ... (I + R^17)      = 0x800001 ^ 0x40         = 0x800041   (0x800001 >> 17 = 2^6)
//   s1 (I + R^26)       = 0
//   s2                  = 0x800041
// Next step from (0, 0x800041):
//   s3 = 0 ^ (0x800041 ^ (0x800041 >> 26)) = 0x800041       (0x800041 < 2^26)
// Outputs: o0 = 1, o1 = 0x800041, o2 = 0x1000082.

TEST_CASE("step known answer from (1, 0)") {
    const GenState st{1, 0, Params{23, 17, 26}};
    const StepResult r = step(st);
    CHECK(r.out == 1);
    CHECK(r.next.s0 == 0);
    CHECK(r.next.s1 == 0x800041);

    const StepResult r2 = step(r.next);
    CHECK(r2.out == 0x800041);
    CHECK(r2.next.s1 == 0x800041);
    CHECK(step(r2.next).out == 0x1000082);
}

TEST_CASE("step known answer from (0, 1)") {
    const StepResult r = step(GenState{0, 1, Params{}});
    CHECK(r.out == 1);
    CHECK(r.next.s0 == 1);
    CHECK(r.next.s1 == 1);
}

TEST_CASE("output wraps modulo 2^64") {
    const StepResult r = step(GenState{0x8000000000000000ULL, 0x8000000000000000ULL, Params{}});
    CHECK(r.out == 0);
}

TEST_CASE("state and parameter validation") {
    CHECK_THROWS_AS(GenState({0, 0, Params{}}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(Xorshift128Plus(GenState{0, 0, Params{}}), std::invalid_argument);
    CHECK_THROWS_AS((Params{0, 17, 26}).validate(), std::out_of_range);
    CHECK_THROWS_AS((Params{23, 64, 26}).validate(), std::out_of_range);
    CHECK_NOTHROW((Params{63, 1, 63}).validate());

    CHECK((Params{23, 17, 26}).warnings().empty());
    CHECK((Params{23, 5, 26}).warnings().size() == 1);
    CHECK((Params{23, 5, 10}).warnings().size() == 2);
}

TEST_CASE("seed expansion") {
    // First two SplitMix64 outputs from 0, reproduced with an independent
    // Python big-integer implementation of the mixer.
    const GenState s = seed(0);
    CHECK(s.s0 == 0xe220a8397b1dcdafULL);
    CHECK(s.s1 == 0x6e789e6aa1b965f4ULL);
    CHECK(s.params == Params{});

    CHECK(seed(0x1234, Params{11, 13, 15}) == seed(0x1234, Params{11, 13, 15}));
    CHECK(seed(1) != seed(2));
    for (Word64 k = 0; k < 10000; ++k) {
        const GenState st = seed(k * 0x9E3779B97F4A7C15ULL);
        REQUIRE_FALSE((st.s0 == 0 && st.s1 == 0));
    }
}

TEST_CASE("to_unit") {
    CHECK(to_unit(0) == 0.0);
    CHECK(to_unit(0x8000000000000000ULL) == 0.5);
    CHECK(to_unit(Word64{1} << 11) == std::ldexp(1.0, -53));
    CHECK(to_unit(~Word64{0}) < 1.0);
    CHECK(to_unit(~Word64{0}) == 1.0 - std::ldexp(1.0, -53));
    // The 11 dropped bits never matter.
    CHECK(to_unit(0x7ff) == 0.0);
}

TEST_CASE("triples are overlapping windows of the output stream") {
    const GenState st = seed(0xabc);
    const auto t = triples(st, 100);
    REQUIRE(t.size() == 100);

    GenState cur = st;
    std::vector<double> u;
    for (int i = 0; i < 102; ++i) {
        const StepResult r = step(cur);
        u.push_back(to_unit(r.out));
        cur = r.next;
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
        REQUIRE(t[k] == Point3{u[k], u[k + 1], u[k + 2]});
    }

    const auto one = triples(st, 1);
    CHECK(one.size() == 1);
    CHECK(one[0] == t[0]);
}

TEST_CASE("first triple from the hand-traced state") {
    const auto t = triples(GenState{1, 0, Params{}}, 1);
    CHECK(t[0].x == to_unit(1));
    CHECK(t[0].y == to_unit(0x800041));
    CHECK(t[0].z == to_unit(0x1000082));
    CHECK(t[0].y == std::ldexp(1.0, -41));
    CHECK(t[0].z == std::ldexp(1.0, -40));
}

TEST_CASE("checked word path and streaming path agree") {
    for (const Params& p : {Params{23, 17, 26}, Params{1, 1, 1}, Params{63, 62, 61}, Params{10, 5, 3}}) {
        GenState cur = seed(0x77, p);
        Xorshift128Plus gen(cur);
        for (int i = 0; i < 20000; ++i) {
            const StepResult r = step(cur);
            REQUIRE(gen.peek() == r.out);
            REQUIRE(gen() == r.out);
            cur = r.next;
        }
        CHECK(gen.state() == cur);
    }
}

TEST_CASE("state update is F2-linear") {
    Philox4x32 rng(5);
    const Params p{};
    for (int i = 0; i < 5000; ++i) {
        const Word64 u0 = rng(), u1 = rng(), v0 = rng(), v1 = rng();
        const auto su = step_state(u0, u1, p);
        const auto sv = step_state(v0, v1, p);
        const auto sw = step_state(u0 ^ v0, u1 ^ v1, p);
        REQUIRE(sw.first == (su.first ^ sv.first));
        REQUIRE(sw.second == (su.second ^ sv.second));
    }
}

TEST_CASE("output stream is a function of seed and params only") {
    Xorshift128Plus g1(seed(0xfeed));
    Xorshift128Plus g2(seed(0xfeed));
    for (int i = 0; i < 10000; ++i) {
        REQUIRE(g1() == g2());
    }
}

TEST_CASE("8-bit variant matches a masked 64-bit computation") {
    const SmallParams sp = SmallParams::reduced(Params{});
    CHECK(sp.a == 7);
    CHECK(sp.b == 1);
    CHECK(sp.c == 2);
    for (unsigned s0 = 0; s0 < 256; s0 += 3) {
        for (unsigned s1 = 0; s1 < 256; s1 += 5) {
            std::uint64_t t = (s0 ^ (std::uint64_t{s0} << sp.a)) & 0xff;
            t ^= t >> sp.b;
            const std::uint64_t s2 = (t ^ s1 ^ (s1 >> sp.c)) & 0xff;
            const SmallState next = step_small(SmallState{static_cast<std::uint8_t>(s0),
                                                          static_cast<std::uint8_t>(s1)},
                                               sp);
            REQUIRE(next.s0 == s1);
            REQUIRE(next.s1 == s2);
        }
    }
}

namespace {

// Returns the number of fixed points; fails if the map is not a bijection.
int check_small_permutation(const SmallParams& sp) {
    std::vector<bool> seen(1 << 16, false);
    int fixed = 0;
    for (unsigned s0 = 0; s0 < 256; ++s0) {
        for (unsigned s1 = 0; s1 < 256; ++s1) {
            const SmallState st{static_cast<std::uint8_t>(s0), static_cast<std::uint8_t>(s1)};
            const SmallState nx = step_small(st, sp);
            const unsigned idx = (unsigned{nx.s0} << 8) | nx.s1;
            REQUIRE_FALSE(seen[idx]);
            seen[idx] = true;
            fixed += nx == st;
        }
    }
    return fixed;
}

} // namespace

TEST_CASE("8-bit variant of (23,17,26) is a permutation fixing only zero") {
    const SmallParams sp = SmallParams::reduced(Params{23, 17, 26});
    CHECK(check_small_permutation(sp) == 1);
    CHECK(step_small(SmallState{0, 0}, sp) == SmallState{0, 0});
}

TEST_CASE("8-bit variant is a permutation for other shifts") {
    // Bijective for any shifts since I + L^a and I + R^b are invertible; other
    // fixed points can exist, e.g. 0xc0 for (1,1,1).
    CHECK(check_small_permutation(SmallParams{1, 1, 1}) == 2);
    CHECK(check_small_permutation(SmallParams{3, 5, 6}) == 4);
    const SmallState c0{0xc0, 0xc0};
    CHECK(step_small(c0, SmallParams{1, 1, 1}) == c0);
}
