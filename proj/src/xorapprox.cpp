// SPDX-License-Identifier: Apache-2.0
#include "xsplanes/xorapprox.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace xsplanes {

namespace {

void check_width(int n, int max_width) {
    if (n < 1 || n > max_width) {
        throw std::out_of_range("bit width out of range [1," + std::to_string(max_width) +
                                "]: " + std::to_string(n));
    }
}

constexpr std::uint64_t mask_of(int n) { return (std::uint64_t{1} << n) - 1; }

} // namespace

CaseLabel classify(std::uint64_t x, std::uint64_t y, int n) {
    check_width(n, kMaxWidth);
    const std::uint64_t m = mask_of(n);
    if ((x & ~m) != 0 || (y & ~m) != 0) {
        throw std::out_of_range("operand does not fit in " + std::to_string(n) + " bits");
    }
    return CaseLabel{(x & y) == 0, (~x & y & m) == 0, (x & ~y & m) == 0};
}

CaseCounts count_cases(int n) {
    check_width(n, kMaxExhaustiveWidth);
    const std::int64_t size = std::int64_t{1} << n;
    CaseCounts c;
    for (std::int64_t x = 0; x < size; ++x) {
        for (std::int64_t y = 0; y < size; ++y) {
            const std::int64_t v = x ^ y;
            const bool a = v == x + y;
            const bool b = v == x - y;
            const bool cc = v == y - x;
            ++c.total;
            c.cA += a;
            c.cB += b;
            c.cC += cc;
            c.cAB += a && b;
            c.cBC += b && cc;
            c.cCA += cc && a;
            c.cABC += a && b && cc;
            c.cUnion += a || b || cc;
        }
    }
    return c;
}

TheoremCheck verify_xor_sum(int n) {
    check_width(n, kMaxExhaustiveWidth);
    const std::int64_t size = std::int64_t{1} << n;
    TheoremCheck r{true, 0, 0};
    for (std::int64_t x = 0; x < size; ++x) {
        for (std::int64_t y = 0; y < size; ++y) {
            const std::int64_t v = x ^ y;
            const bool equal = v == x + y;
            ++r.pairs;
            r.equality_pairs += equal;
            if (v > x + y || equal != ((x & y) == 0)) {
                r.holds = false;
            }
        }
    }
    return r;
}

TheoremCheck verify_xor_diff(int n) {
    check_width(n, kMaxExhaustiveWidth);
    const std::int64_t size = std::int64_t{1} << n;
    TheoremCheck r{true, 0, 0};
    for (std::int64_t x = 0; x < size; ++x) {
        for (std::int64_t y = 0; y < size; ++y) {
            const std::int64_t v = x ^ y;
            const std::int64_t d = x - y;
            const bool equal = v == d;
            ++r.pairs;
            r.equality_pairs += equal;
            if (v < d || equal != ((~x & y) == 0)) {
                r.holds = false;
            }
        }
    }
    return r;
}

CaseLabel classify_inner(Word64 s, int a, int n) {
    check_width(n, kMaxWidth);
    return classify(top_bits(s, n), top_bits(shl(s, a), n), n);
}

CaseLabel classify_outer(Word64 s_next, Word64 t, int n) {
    check_width(n, kMaxWidth);
    return classify(top_bits(s_next, n), top_bits(t, n), n);
}

Word64 inner_approx(Word64 s, int a, CaseKind k) {
    const Word64 scaled = shl(s, a);
    switch (k) {
    case CaseKind::sum: return s + scaled;
    case CaseKind::diff: return s - scaled;
    case CaseKind::rdiff: return scaled - s;
    }
    return 0;
}

Word64 outer_approx(Word64 s_next, Word64 t, CaseKind k) {
    switch (k) {
    case CaseKind::sum: return s_next + t;
    case CaseKind::diff: return s_next - t;
    case CaseKind::rdiff: return t - s_next;
    }
    return 0;
}

bool carry_leaks(Word64 xor_value, Word64 approx_value, int n) {
    check_width(n, kMaxWidth);
    return top_bits(xor_value, n) != top_bits(approx_value, n);
}

CompoundProbability compound_probability(int n) {
    if (n < 0 || n > 64) {
        throw std::out_of_range("bit width out of range [0,64]: " + std::to_string(n));
    }
    using boost::multiprecision::cpp_int;
    // (((3/4)^n)^2 * 3)^2 = 3^(4n+2) / 2^(8n); numerator odd, so already reduced.
    CompoundProbability p;
    p.numerator = boost::multiprecision::pow(cpp_int(3), static_cast<unsigned>(4 * n + 2));
    p.denominator = cpp_int(1) << (8 * n);
    const double base = std::pow(0.75, 2 * n) * 3.0;
    p.value = base * base;
    p.degenerate = n == 0;
    return p;
}

Table1Coeffs table1_coeffs(CaseKind outer, CaseKind inner, int a) {
    if (a < 1 || a > 62) {
        throw std::out_of_range("shift out of range [1,62]: " + std::to_string(a));
    }
    const std::int64_t p = std::int64_t{1} << a;
    // s (I + L^a) ~ k s under the inner case.
    std::int64_t k = 0;
    switch (inner) {
    case CaseKind::sum: k = 1 + p; break;
    case CaseKind::diff: k = 1 - p; break;
    case CaseKind::rdiff: k = p - 1; break;
    }
    // z ~ o(s1, k s0) + o(s2, k s1) with o the outer relation; regroup on
    // x = s0 + s1 and y = s1 + s2.
    switch (outer) {
    case CaseKind::sum: return {k, +1};   // (s1 + k s0) + (s2 + k s1) = k x + y
    case CaseKind::diff: return {-k, +1}; // (s1 - k s0) + (s2 - k s1) = -k x + y
    case CaseKind::rdiff: return {k, -1}; // (k s0 - s1) + (k s1 - s2) = k x - y
    }
    return {};
}

std::string_view outer_name(CaseKind k) {
    switch (k) {
    case CaseKind::sum: return "+";
    case CaseKind::diff: return "-";
    case CaseKind::rdiff: return "t-";
    }
    return "?";
}

std::string_view inner_name(CaseKind k) {
    switch (k) {
    case CaseKind::sum: return "1+2^a";
    case CaseKind::diff: return "1-2^a";
    case CaseKind::rdiff: return "2^a-1";
    }
    return "?";
}

} // namespace xsplanes
