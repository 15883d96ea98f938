// SPDX-License-Identifier: Apache-2.0
#include "xsplanes/engine.hpp"

#include <stdexcept>

namespace xsplanes {

void Params::validate() const {
    for (int s : {a, b, c}) {
        if (s < 1 || s > 63) {
            throw std::out_of_range("generator shift out of range [1,63]: " + std::to_string(s));
        }
    }
}

std::vector<std::string> Params::warnings() const {
    std::vector<std::string> out;
    if (b <= 10) {
        out.push_back("b=" + std::to_string(b) + " is small; top-bit case analysis may not apply");
    }
    if (c <= 10) {
        out.push_back("c=" + std::to_string(c) + " is small; top-bit case analysis may not apply");
    }
    return out;
}

void GenState::validate() const {
    params.validate();
    if (s0 == 0 && s1 == 0) {
        throw std::invalid_argument("all-zero state is a fixed point of the recursion");
    }
}

StepResult step(const GenState& state) {
    const auto [n0, n1] = step_state(state.s0, state.s1, state.params);
    return StepResult{GenState{n0, n1, state.params}, state.s0 + state.s1};
}

std::pair<Word64, Word64> step_state(Word64 s0, Word64 s1, const Params& params) {
    // s0 (I + L^a)(I + R^b) + s1 (I + R^c), spelled out with the checked word ops.
    const Word64 inner = xorshift_xform(xorshift_xform(s0, params.a, ShiftDir::left),
                                        params.b, ShiftDir::right);
    const Word64 s2 = inner ^ xorshift_xform(s1, params.c, ShiftDir::right);
    return {s1, s2};
}

Word64 splitmix64(Word64& x) {
    x += 0x9E3779B97F4A7C15ULL;
    Word64 z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

GenState seed(Word64 seed64, const Params& params) {
    params.validate();
    Word64 x = seed64;
    GenState st;
    st.s0 = splitmix64(x);
    st.s1 = splitmix64(x);
    st.params = params;
    if (st.s0 == 0 && st.s1 == 0) {
        st.s0 = 1;
    }
    return st;
}

std::vector<Point3> triples(const GenState& state, std::size_t count) {
    state.validate();
    std::vector<Point3> out;
    out.reserve(count);
    Xorshift128Plus gen(state);
    double u0 = to_unit(gen());
    double u1 = to_unit(gen());
    for (std::size_t k = 0; k < count; ++k) {
        const double u2 = to_unit(gen());
        out.push_back(Point3{u0, u1, u2});
        u0 = u1;
        u1 = u2;
    }
    return out;
}

Xorshift128Plus::Xorshift128Plus(const GenState& state)
    : s0_(state.s0), s1_(state.s1), a_(state.params.a), b_(state.params.b), c_(state.params.c) {
    state.validate();
}

SmallState step_small(SmallState state, const SmallParams& params) {
    return SmallState{state.s1, detail::next_word<std::uint8_t>(state.s0, state.s1, params.a,
                                                                params.b, params.c)};
}

} // namespace xsplanes
