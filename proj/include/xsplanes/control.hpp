// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace xsplanes {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11), used as the
/// null model. It shares no structure with xorshift: each block is a keyed
/// bijection of a 128-bit counter built from 32x32->64 multiplies.
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;
    using result_type = std::uint64_t;

    /// Ten rounds of the Philox permutation.
    static Counter block(Counter ctr, Key key);

    /// Key = seed; `stream` occupies the upper counter half so distinct streams
    /// never overlap.
    explicit Philox4x32(std::uint64_t seed, std::uint64_t stream = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform in [0,1) on the 2^-53 grid.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

private:
    void refill();

    Key key_;
    Counter ctr_;
    Counter buf_{};
    int used_ = 2;
};

} // namespace xsplanes
