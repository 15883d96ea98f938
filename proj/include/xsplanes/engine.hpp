// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "xsplanes/bitlin.hpp"
#include "xsplanes/point.hpp"

#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace xsplanes {

/// Shift parameters (a, b, c) of the recursion
///   s_{i+2} = s_i (I + L^a)(I + R^b) + s_{i+1} (I + R^c).
struct Params {
    int a = 23;
    int b = 17;
    int c = 26;

    /// Throws std::out_of_range unless every shift is in 1..63.
    void validate() const;

    /// The top-bit approximation treats I + R^b and I + R^c as the identity on
    /// the leading bits, which needs b and c well above the inspected width.
    /// Returns human readable warnings when b or c <= 10; empty otherwise.
    std::vector<std::string> warnings() const;

    friend bool operator==(const Params&, const Params&) = default;
};

/// The 128-bit state (s_i, s_{i+1}). Never (0, 0).
struct GenState {
    Word64 s0 = 1;
    Word64 s1 = 0;
    Params params{};

    /// Throws std::invalid_argument on the all-zero state or bad params.
    void validate() const;

    friend bool operator==(const GenState&, const GenState&) = default;
};

struct StepResult {
    GenState next;
    Word64 out;
};

namespace detail {

/// One application of the recursion on W-bit words. Shift counts must be
/// smaller than the word width.
template <std::unsigned_integral W>
constexpr W next_word(W s0, W s1, int a, int b, int c) {
    const W t = static_cast<W>(s0 ^ static_cast<W>(s0 << a));
    const W u = static_cast<W>(t ^ static_cast<W>(t >> b));
    return static_cast<W>(u ^ s1 ^ static_cast<W>(s1 >> c));
}

} // namespace detail

/// Advances (s_i, s_{i+1}) -> (s_{i+1}, s_{i+2}); out = s_i + s_{i+1} mod 2^64.
StepResult step(const GenState& state);

/// The F2-linear state update alone (output ignored). Accepts (0, 0).
std::pair<Word64, Word64> step_state(Word64 s0, Word64 s1, const Params& params);

/// One SplitMix64 output; advances `x` by the golden-ratio increment.
Word64 splitmix64(Word64& x);

/// s0, s1 are the first two SplitMix64 outputs started from `seed64`; the
/// all-zero result is replaced by (1, 0).
GenState seed(Word64 seed64, const Params& params = {});

/// (o >> 11) * 2^-53: the top 53 bits, exact in binary64.
constexpr double to_unit(Word64 out) {
    return static_cast<double>(out >> 11) * 0x1.0p-53;
}

/// `count` overlapping output triples (u_k, u_{k+1}, u_{k+2}) starting at the
/// output of `state`. Consumes count + 2 outputs.
std::vector<Point3> triples(const GenState& state, std::size_t count);

/// Streaming form of the generator for hot loops; satisfies
/// std::uniform_random_bit_generator.
class Xorshift128Plus {
public:
    using result_type = Word64;

    explicit Xorshift128Plus(const GenState& state);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        const Word64 out = s0_ + s1_;
        const Word64 s2 = detail::next_word<Word64>(s0_, s1_, a_, b_, c_);
        s0_ = s1_;
        s1_ = s2;
        return out;
    }

    /// The output the next call would return, without advancing.
    Word64 peek() const { return s0_ + s1_; }

    GenState state() const { return GenState{s0_, s1_, Params{a_, b_, c_}}; }

private:
    Word64 s0_;
    Word64 s1_;
    int a_;
    int b_;
    int c_;
};

/// Scaled-down generator on 8-bit words with shifts reduced mod 8. Small
/// enough (2^16 states) for exhaustive state-space checks.
struct SmallState {
    std::uint8_t s0 = 0;
    std::uint8_t s1 = 0;

    friend bool operator==(const SmallState&, const SmallState&) = default;
};

struct SmallParams {
    int a;
    int b;
    int c;

    static SmallParams reduced(const Params& p) { return {p.a % 8, p.b % 8, p.c % 8}; }
};

SmallState step_small(SmallState state, const SmallParams& params);

} // namespace xsplanes
